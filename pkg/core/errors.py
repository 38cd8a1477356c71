"""
Error hierarchy for the wave generator.

Value-type mistakes subclass ValueError, breakdowns discovered while
iterating subclass RuntimeError, so callers that only know the builtins
still catch them.
"""


class WaveSolverError(Exception):
    """Base class for every error raised by the library."""


class ConfigurationError(WaveSolverError, ValueError):
    """Inconsistent grids, malformed run configuration, length mismatches."""


class ArgumentError(WaveSolverError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class OperatorDefinitionError(WaveSolverError, ValueError):
    """A Fourier symbol is non-finite, not even, or violates alpha(0) = 0."""


class InternalConsistencyError(WaveSolverError, RuntimeError):
    """A representation invariant (e.g. conjugate symmetry) was broken."""


class IterationBreakdown(WaveSolverError, RuntimeError):
    """The fixed-point map cannot be evaluated at the current iterate."""


class SingularDenominatorError(IterationBreakdown):
    """A linear symbol, mode matrix or stabilizing quotient is (near) zero."""


class SignBreakdownError(IterationBreakdown):
    """Negative stabilizing factor raised to a fractional exponent."""
