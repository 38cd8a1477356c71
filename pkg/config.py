"""
Application Configuration - numerical defaults for the wave generator.

Every tunable default lives here so the library, the CLI and the tests
agree on one value. Run configuration files override the ITERATION, MPE,
GRID and SEED sections per run.
"""

# =============================================================================
# SPECTRAL GRID
# =============================================================================
MIN_MODES = 8                 # smallest even N accepted by PeriodicGrid
MAX_PRODUCT_DEGREE = 6        # highest polynomial degree of a dealiased product
SYMMETRY_TOLERANCE = 1e-10    # conjugate-symmetry check before inverse transform
IMAGINARY_RESIDUE_TOLERANCE = 1e-10

# =============================================================================
# MODEL CHECKS
# =============================================================================
SYMBOL_SAMPLE_POINTS = 64
SYMBOL_EVEN_TOLERANCE = 1e-12
HYPOTHESIS_SAMPLE_RANGE = (1e2, 1e6)      # log-spaced band for the large-wavenumber ratio
HYPOTHESIS_SMALL_RANGE = (1e-6, 1e-2)     # log-spaced band for the small-wavenumber limit
HYPOTHESIS_RATIO_BOUNDS = (1e-8, 1e8)
STABILITY_BOUNDARY_TOLERANCE = 1e-12

# =============================================================================
# CONSTANT BRANCHES
# =============================================================================
ROOT_RESIDUAL_TOLERANCE = 1e-10   # times max(1, coefficient scale)
REAL_ROOT_IMAG_TOLERANCE = 1e-8   # times (1 + |root|)
ROOT_CLUSTER_TOLERANCE = 1e-6     # times (1 + |root|)
NEWTON_MAX_ITER = 50
DENOMINATOR_GUARD = 1e-12
SPEED_UNIT_TOLERANCE = 1e-12      # c_s**2 == 1 test for the Boussinesq system

# =============================================================================
# PETVIASHVILI ITERATION
# =============================================================================
MAX_ITER = 500
TOL_RES = 1e-12
TOL_SFE = 1e-12
DIVERGENCE_CAP = 1e8
QUOTIENT_FLOOR = 1e-300

# =============================================================================
# MINIMAL POLYNOMIAL EXTRAPOLATION
# =============================================================================
MPE_CYCLE_WIDTH = 6
MPE_RESTART = True
MPE_LS_TOLERANCE = 1e-13
MPE_SAFEGUARD_SLACK = 1e-12

# =============================================================================
# SEED PROFILES
# =============================================================================
SEED_KINDS = ("sech2", "gaussian", "cos")
BOUSSINESQ_SEED_AMPLITUDE = 0.1
BOUSSINESQ_SEED_WIDTH = 0.25

# =============================================================================
# POST-PROCESSING
# =============================================================================
PLATEAU_HIGH = 0.95
PLATEAU_LOW = 0.5
VERIFY_STD_TOLERANCE = 1e-8       # times (1 + |A|)
VERIFY_MEAN_TOLERANCE = 1e-8      # times (1 + |A|)
RESOLUTION_TAIL_FRACTION = 0.125  # top eighth of the resolved band
RESOLUTION_TOLERANCE = 1e-9       # tail / peak coefficient ratio allowed

# =============================================================================
# CLI / RUNS
# =============================================================================
DEFAULT_OUTPUT_DIR = "runs"
SWEEP_WORKERS_ENV = "PTW_SWEEP_WORKERS"
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NOT_CONVERGED = 3
CSV_FORMAT = "%.17g"

# =============================================================================
# LOGGING
# =============================================================================
LOG_DIR = "logs"
LOG_FILE = "wavegen.log"
LOG_FORMAT = "%(asctime)s %(levelname)-7s [%(name)s] %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%dT%H:%M:%S"
LOG_ROTATE_WHEN = "midnight"
LOG_BACKUP_COUNT = 7
