# tests/test_boussinesq.py
"""Tests for the interfacial Boussinesq system: coefficients, constants, shifted system."""
import logging
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from core.boussinesq import (
    BoussinesqConstants,
    BoussinesqParams,
    algebraic_residuals,
    boussinesq_nonlinearity,
    boussinesq_vmax,
    build_boussinesq_shifted,
    constant_polynomial,
    find_boussinesq_constants,
    mode_matrix,
    profile_residuals,
    reconstruct_boussinesq_constants,
    seed_pair,
    shifted_residuals,
)
from core.errors import ArgumentError, ConfigurationError
from core.spectral import PeriodicGrid, SpectralField, forward_transform


@pytest.fixture
def shallow() -> BoussinesqParams:
    """r = 0.8, H = 0.95 at the lower end of the s range."""
    return BoussinesqParams(0.8, 0.95, -1.76)


@pytest.fixture
def deep() -> BoussinesqParams:
    return BoussinesqParams(0.8, 1.8, -2.44)


def hand_built_shifted(params: BoussinesqParams, c_s: float = 1.05, C1: float = 0.1, C2: float = -0.2):
    """A shifted system whose A1, A2 are chosen so that (C1, C2) is exact."""
    A1, A2 = algebraic_residuals(params, c_s, 0.0, 0.0, C1, C2)
    constants = BoussinesqConstants(C1, C2, 0.0, 0.0)
    return build_boussinesq_shifted(params, c_s, A1, A2, constants)


def band_limited_pair(grid: PeriodicGrid):
    k = math.pi / grid.half_length
    x = grid.nodes
    eta = forward_transform(0.3 * np.cos(k * x) + 0.1 * np.sin(2 * k * x), grid)
    w = forward_transform(-0.2 * np.cos(2 * k * x) + 0.15 * np.sin(k * x), grid)
    return eta, w


# =============================================================================
# COEFFICIENTS
# =============================================================================

def test_coefficients(shallow: BoussinesqParams):
    r, H, s = 0.8, 0.95, -1.76
    assert shallow.d1 == pytest.approx(H / (r + H))
    assert shallow.d2 == pytest.approx(H**2 / (2 * (r + H) ** 2) * (s + 2 * (1 + r * H) / 3))
    assert shallow.d3 == pytest.approx(s * H / (2 * (r + H)))
    assert shallow.d4 == pytest.approx((H**2 - r) / (r + H) ** 2)
    assert shallow.d5 == pytest.approx(r * (1 + H) ** 2 / (r + H) ** 3)


@pytest.mark.parametrize("H, expected", [(0.95, 1.000454), (1.8, 1.065919)])
def test_maximal_speed(H: float, expected: float):
    params = BoussinesqParams(0.8, H, -(1 + 0.8 * H))
    assert boussinesq_vmax(params) == pytest.approx(expected, abs=1e-6)
    assert params.v_max == boussinesq_vmax(params)


def test_s_range(deep: BoussinesqParams):
    low, high = deep.s_range
    assert low == pytest.approx(-2.44)
    assert high == pytest.approx(-2.44 * 2 / 3)


def test_s_outside_range_only_warns(caplog: pytest.LogCaptureFixture):
    with caplog.at_level(logging.WARNING, logger="core.boussinesq"):
        BoussinesqParams(0.8, 0.95, 0.5)
    assert "outside the usual range" in caplog.text


@pytest.mark.parametrize("r, H", [(0.0, 1.0), (1.0, -1.0), (float("nan"), 1.0)])
def test_params_reject_nonpositive_ratios(r: float, H: float):
    with pytest.raises(ArgumentError):
        BoussinesqParams(r, H, -1.0)


# =============================================================================
# CONSTANT PAIRS
# =============================================================================

def scan_roots(poly, low: float = -10.0, high: float = 10.0, samples: int = 20001) -> list:
    z = np.linspace(low, high, samples)
    values = poly(z)
    roots = []
    for a, b, fa, fb in zip(z[:-1], z[1:], values[:-1], values[1:]):
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0:
            roots.append(brentq(poly, a, b, xtol=1e-14))
    return roots


def test_constant_pairs_near_maximal_speed(shallow: BoussinesqParams):
    c_s = shallow.v_max - 1e-4
    pairs = find_boussinesq_constants(shallow, c_s, -1.0, -2.0)
    assert pairs
    for pair in pairs:
        r1, r2 = algebraic_residuals(shallow, c_s, -1.0, -2.0, pair.C1, pair.C2)
        assert abs(r1) < 1e-8 and abs(r2) < 1e-8
    assert [abs(p.C1) for p in pairs] == sorted(abs(p.C1) for p in pairs)


def test_constant_pairs_match_sign_change_scan(shallow: BoussinesqParams):
    c_s = shallow.v_max - 1e-4
    poly = constant_polynomial(shallow, c_s, -1.0, -2.0)
    found = sorted(p.C1 for p in find_boussinesq_constants(shallow, c_s, -1.0, -2.0))
    scanned = scan_roots(poly)
    assert scanned
    for root in scanned:
        assert min(abs(c - root) for c in found) < 1e-8


def test_second_constant_follows_first(deep: BoussinesqParams):
    c_s = deep.v_max - 1e-4
    for pair in find_boussinesq_constants(deep, c_s, 1.0, 1.0):
        D = deep.d1 + deep.d4 * pair.C1 - deep.d5 * pair.C1**2
        assert pair.C2 == pytest.approx((c_s * pair.C1 - 1.0) / D)


def test_zero_fluxes_admit_the_rest_state(deep: BoussinesqParams):
    pairs = find_boussinesq_constants(deep, 1.02, 0.0, 0.0)
    assert pairs[0].C1 == pytest.approx(0.0, abs=1e-12)
    assert pairs[0].C2 == pytest.approx(0.0, abs=1e-12)


def test_unit_speed_is_rejected(deep: BoussinesqParams):
    with pytest.raises(ArgumentError):
        find_boussinesq_constants(deep, 1.0, 1.0, 1.0)


# =============================================================================
# SHIFTED SYSTEM
# =============================================================================

def test_mode_matrix_entries(shallow: BoussinesqParams):
    shifted = hand_built_shifted(shallow)
    k = 0.7
    M = shifted.coupling
    expected = np.array([
        [1.05, -(shallow.d1 - shallow.d2 * k**2)],
        [-1.0 / shallow.d1, 1.05 * (1.0 - shallow.d3 * k**2)],
    ]) + M
    assert np.allclose(mode_matrix(shifted, k), expected)


def test_coupling_vanishes_at_rest(shallow: BoussinesqParams):
    shifted = hand_built_shifted(shallow, C1=0.0, C2=0.0)
    assert np.allclose(shifted.coupling, 0.0)


def test_linear_solve_inverts_linear_operator(shallow: BoussinesqParams):
    grid = PeriodicGrid(20.0, 64)
    bound = hand_built_shifted(shallow).bind(grid)
    rng = np.random.default_rng(5)
    vec = np.concatenate([forward_transform(rng.standard_normal(64), grid).coeffs,
                          forward_transform(rng.standard_normal(64), grid).coeffs])
    assert np.allclose(bound.solve_linear(bound.apply_linear(vec)), vec, atol=1e-12)


def test_nonlinear_parts_match_nonlinearity_pairs(shallow: BoussinesqParams):
    grid = PeriodicGrid(20.0, 32)
    shifted = hand_built_shifted(shallow)
    eta, w = band_limited_pair(grid)
    (q_eta, q_w), (c_eta, c_w) = boussinesq_nonlinearity(shifted, eta, w)
    parts = shifted.bind(grid).nonlinear_parts(np.concatenate([eta.coeffs, w.coeffs]))
    assert set(parts) == {2, 3}
    assert np.allclose(parts[2], np.concatenate([q_eta.coeffs, q_w.coeffs]))
    assert np.allclose(parts[3], np.concatenate([c_eta.coeffs, c_w.coeffs]))


def test_nonlinearity_rejects_mixed_grids(shallow: BoussinesqParams):
    shifted = hand_built_shifted(shallow)
    with pytest.raises(ConfigurationError):
        boussinesq_nonlinearity(shifted, SpectralField.zeros(PeriodicGrid(1.0, 16)),
                                SpectralField.zeros(PeriodicGrid(2.0, 16)))


@pytest.mark.parametrize("C1, C2", [(0.1, -0.2), (-0.4, 0.3), (0.0, 0.0)])
def test_shifted_and_full_residuals_agree(deep: BoussinesqParams, C1: float, C2: float):
    """The difference system is an exact rewrite of the full system about (C1, C2)."""
    grid = PeriodicGrid(20.0, 64)
    shifted = hand_built_shifted(deep, C1=C1, C2=C2)
    eta_t, w_t = band_limited_pair(grid)
    full = profile_residuals(shifted, eta_t.shifted(C1), w_t.shifted(C2))
    local = shifted_residuals(shifted, eta_t, w_t)
    assert np.allclose(full[0], local[0], atol=1e-12)
    assert np.allclose(full[1], local[1], atol=1e-12)


def test_coefficient_residual_matches_nodal_residual(deep: BoussinesqParams):
    """L u - N(u) in coefficients equals the transformed nodal residual for band-limited input."""
    grid = PeriodicGrid(20.0, 32)
    shifted = hand_built_shifted(deep)
    eta_t, w_t = band_limited_pair(grid)
    bound = shifted.bind(grid)
    vec = np.concatenate([eta_t.coeffs, w_t.coeffs])
    coefficient_residual = bound.apply_linear(vec) - sum(bound.nonlinear_parts(vec).values())
    r1, r2 = shifted_residuals(shifted, eta_t, w_t)
    nodal = np.concatenate([forward_transform(r1, grid).coeffs, forward_transform(r2, grid).coeffs])
    assert np.allclose(coefficient_residual, nodal, atol=1e-12)


def test_seed_pair_is_proportional(shallow: BoussinesqParams):
    grid = PeriodicGrid(60.0, 128)
    shifted = hand_built_shifted(shallow)
    eta, w = seed_pair(shifted, grid)
    assert eta.values().max() == pytest.approx(0.1)
    assert np.allclose(w.values(), (1.05 / shallow.d1) * eta.values())


def test_constant_profiles_reconstruct_fluxes(deep: BoussinesqParams):
    grid = PeriodicGrid(20.0, 32)
    c_s = 1.03
    C1, C2 = 0.25, -0.1
    A1, A2 = algebraic_residuals(deep, c_s, 0.0, 0.0, C1, C2)
    (m1, s1), (m2, s2) = reconstruct_boussinesq_constants(
        deep, c_s, SpectralField.constant(grid, C1), SpectralField.constant(grid, C2)
    )
    assert m1 == pytest.approx(A1)
    assert m2 == pytest.approx(A2)
    assert s1 < 1e-14 and s2 < 1e-14


def test_rough_pair_reconstruction_matches_coefficient_residual(deep: BoussinesqParams):
    """With alias-free products the spread of each flux is the non-mean part of L u - N(u)."""
    grid = PeriodicGrid(20.0, 32)
    shifted = hand_built_shifted(deep)
    rng = np.random.default_rng(4)
    eta_t = forward_transform(0.1 * rng.standard_normal(32), grid)
    w_t = forward_transform(0.1 * rng.standard_normal(32), grid)
    bound = shifted.bind(grid)
    vec = np.concatenate([eta_t.coeffs, w_t.coeffs])
    r_eta, r_w = np.split(bound.apply_linear(vec) - sum(bound.nonlinear_parts(vec).values()), 2)

    (m1, s1), (m2, s2) = reconstruct_boussinesq_constants(
        deep, shifted.speed, eta_t.shifted(0.1), w_t.shifted(-0.2)
    )
    assert m1 - shifted.A1 == pytest.approx(r_eta[0].real, abs=1e-12)
    assert m2 - shifted.A2 == pytest.approx(r_w[0].real, abs=1e-12)
    assert s1 == pytest.approx(np.linalg.norm(r_eta[1:]), rel=1e-10)
    assert s2 == pytest.approx(np.linalg.norm(r_w[1:]), rel=1e-10)


def test_symmetric_margins_are_smallest_eigenvalues(shallow: BoussinesqParams):
    grid = PeriodicGrid(5.0, 16)
    shifted = hand_built_shifted(shallow)
    margins = shifted.symmetric_margins(grid)
    for k, margin in zip(grid.wavenumbers, margins):
        matrix = mode_matrix(shifted, k)
        assert margin == pytest.approx(np.linalg.eigvalsh(0.5 * (matrix + matrix.T))[0], abs=1e-12)


def test_shallow_branches_differ_in_definiteness(shallow: BoussinesqParams):
    """Just below v_max with A1 = -1, A2 = -2 the smallest-|C1| pair is indefinite, the next is not."""
    grid = PeriodicGrid(60.0, 512)
    c_s = shallow.v_max - 1e-4
    first, second = find_boussinesq_constants(shallow, c_s, -1.0, -2.0)[:2]
    indefinite = build_boussinesq_shifted(shallow, c_s, -1.0, -2.0, first)
    definite = build_boussinesq_shifted(shallow, c_s, -1.0, -2.0, second)
    assert indefinite.symmetric_margins(grid).min() < 0.0
    assert definite.symmetric_margins(grid).min() > 0.0
