# tests/test_constant_shift.py
"""Tests for real-root extraction, constant branches and the shifted equation."""
import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from core.constant_shift import (
    ConstantBranch,
    build_shifted,
    constant_polynomial,
    find_constants,
    shift_equivalence_residual,
)
from core.errors import ArgumentError, SingularDenominatorError
from core.models import PolynomialNonlinearity, ScalarModel, fkdv_model, kdv_symbol
from core.roots import polished_real_roots
from core.spectral import PeriodicGrid, SpectralField, forward_transform


# =============================================================================
# ROOTS
# =============================================================================

def test_real_roots_of_cubic_are_sorted():
    poly = Polynomial.fromroots([2.0, -1.0, 0.5])
    roots = polished_real_roots(poly)
    assert [r.value for r in roots] == pytest.approx([-1.0, 0.5, 2.0])
    assert all(r.residual < 1e-12 for r in roots)


def test_complex_roots_are_filtered():
    # (z^2 + 1)(z - 3)
    poly = Polynomial([1.0, 0.0, 1.0]) * Polynomial([-3.0, 1.0])
    roots = polished_real_roots(poly)
    assert len(roots) == 1
    assert roots[0].value == pytest.approx(3.0)


def test_constant_polynomial_has_no_roots():
    assert polished_real_roots(Polynomial([4.0])) == []


def test_zero_polynomial_is_rejected():
    with pytest.raises(ArgumentError):
        polished_real_roots(Polynomial([0.0, 0.0]))


# =============================================================================
# CONSTANT BRANCHES
# =============================================================================

def test_quadratic_branches_for_unit_speed_and_flux():
    """u^2/2 - u - 1 = 0 gives C = 1 -+ sqrt(3); the smaller |C| comes first."""
    branches = find_constants(fkdv_model(0.8, 3), 1.0, 1.0)
    assert [b.C for b in branches] == pytest.approx([1.0 - math.sqrt(3.0), 1.0 + math.sqrt(3.0)])
    assert all(b.residual <= 1e-10 for b in branches)


@pytest.mark.parametrize("speed, A", [(1.0, 1.0), (0.4, 2.5), (3.0, -1.0), (1.7, 0.0)])
def test_quadratic_branches_sum_and_product(speed: float, A: float):
    """Roots of u^2/2 - c u - A: C+ + C- = 2c and C+ C- = -2A."""
    low, high = find_constants(fkdv_model(1.0, 3), speed, A)
    assert low.C + high.C == pytest.approx(2.0 * speed, rel=1e-12)
    assert low.C * high.C == pytest.approx(-2.0 * A, rel=1e-12, abs=1e-12)


def test_cubic_branch_choice_decides_definiteness():
    """z^3/3 - z - A: A = -1/3 keeps c + alpha - C^2 > 0 on the smallest root, A = 1 does not."""
    grid = PeriodicGrid(50.0, 256)
    model = fkdv_model(1.5, 4)
    positive = build_shifted(model, 1.0, -1.0 / 3.0, find_constants(model, 1.0, -1.0 / 3.0)[0])
    assert positive.constant == pytest.approx(2.0 * math.cos(math.radians(80.0)))
    assert positive.linear_symbol(grid).min() > 0.0

    (single,) = find_constants(model, 1.0, 1.0)
    indefinite = build_shifted(model, 1.0, 1.0, single)
    assert indefinite.linear_symbol(grid)[0] == pytest.approx(1.0 - single.C**2)
    assert indefinite.linear_symbol(grid).min() < 0.0


def test_zero_flux_includes_zero_branch(kdv_model: ScalarModel):
    branches = find_constants(kdv_model, 1.0, 0.0)
    assert branches[0].C == pytest.approx(0.0, abs=1e-14)
    assert branches[1].C == pytest.approx(2.0)


def test_no_real_branch_gives_empty_list():
    """u^2/2 - u - A has no real root once A < -1/2."""
    assert find_constants(fkdv_model(0.8, 3), 1.0, -2.0) == []


@pytest.mark.parametrize("speed", [0.0, -1.0, float("inf")])
def test_speed_must_be_positive(kdv_model: ScalarModel, speed: float):
    with pytest.raises(ArgumentError):
        find_constants(kdv_model, speed, 0.0)


def test_constant_polynomial_vanishes_on_branches():
    model = fkdv_model(1.5, 4)
    poly = constant_polynomial(model, 1.0, 1.0)
    for branch in find_constants(model, 1.0, 1.0):
        assert abs(poly(branch.C)) < 1e-10


# =============================================================================
# SHIFTED PROBLEM
# =============================================================================

def test_shifted_coefficients_for_quadratic_f():
    model = fkdv_model(0.8, 3)
    branch = ConstantBranch(1.0 - math.sqrt(3.0), 0.0)
    sp = build_shifted(model, 1.0, 1.0, branch)
    assert sp.degrees == (2,)
    assert sp.term_coefficient(2) == pytest.approx(0.5)
    assert sp.linear_shift == pytest.approx(branch.C)
    with pytest.raises(ArgumentError):
        sp.term_coefficient(3)


def test_shifted_coefficients_for_cubic_f():
    model = fkdv_model(1.5, 4)
    C = find_constants(model, 1.0, 1.0)[0].C
    sp = build_shifted(model, 1.0, 1.0, ConstantBranch(C, 0.0))
    assert sp.degrees == (2, 3)
    # f(u) = u^3/3: f''/2 = C, f'''/6 = 1/3
    assert sp.term_coefficient(2) == pytest.approx(C)
    assert sp.term_coefficient(3) == pytest.approx(1.0 / 3.0)


def test_linear_symbol_adds_dispersion():
    grid = PeriodicGrid(math.pi, 16)
    model = fkdv_model(2.0, 3)
    sp = build_shifted(model, 1.0, 0.0, ConstantBranch(0.0, 0.0))
    assert np.allclose(sp.linear_symbol(grid), 1.0 + grid.wavenumbers**2)


def test_bind_rejects_vanishing_symbol():
    """C = 2 gives c_s - f'(C) = -1, cancelled by xi^2 at xi = 1."""
    grid = PeriodicGrid(math.pi, 16)
    model = fkdv_model(2.0, 3)
    sp = build_shifted(model, 1.0, 0.0, ConstantBranch(2.0, 0.0))
    with pytest.raises(SingularDenominatorError):
        sp.bind(grid)


def test_nonlinear_parts_skip_zero_terms():
    grid = PeriodicGrid(math.pi, 16)
    model = fkdv_model(1.5, 4)
    sp = build_shifted(model, 1.0, 0.0, ConstantBranch(0.0, 0.0))
    parts = sp.bind(grid).nonlinear_parts(SpectralField.from_function(grid, np.cos).coeffs)
    assert list(parts) == [3]


@pytest.mark.parametrize(
    "model, speed, A",
    [
        (fkdv_model(0.8, 3), 1.0, 1.0),
        (fkdv_model(1.5, 4), 1.0, 1.0),
        (ScalarModel(PolynomialNonlinearity([0.3, 0.1, 0.05]), kdv_symbol(), name="quintic"), 1.3, 0.2),
    ],
)
def test_full_and_shifted_residuals_agree(model: ScalarModel, speed: float, A: float):
    """The full equation at psi + C and the shifted equation at psi differ only by P(C)."""
    grid = PeriodicGrid(10.0, 64)
    rng = np.random.default_rng(11)
    for branch in find_constants(model, speed, A):
        sp = build_shifted(model, speed, A, branch)
        for _ in range(100):
            psi = forward_transform(0.3 * rng.standard_normal(grid.n_modes), grid)
            r1, r2 = shift_equivalence_residual(sp, psi)
            assert r1 == pytest.approx(r2, rel=1e-9, abs=1e-9)
