# tests/test_mpe.py
"""Tests for minimal polynomial extrapolation."""
import numpy as np
import pytest

from core.errors import ArgumentError
from core.mpe import MpeConfig, accelerated_solve_cycle, mpe_extrapolate, safeguarded_extrapolation

MATRIX = np.diag([0.9, 0.5, -0.3])
OFFSET = np.array([1.0, -2.0, 0.5])
FIXED_POINT = np.linalg.solve(np.eye(3) - MATRIX, OFFSET)


def linear_step(x: np.ndarray) -> np.ndarray:
    return MATRIX @ x + OFFSET


def linear_sequence(count: int, start=None) -> list:
    vectors = [np.zeros(3) if start is None else start]
    while len(vectors) < count:
        vectors.append(linear_step(vectors[-1]))
    return vectors


def test_config_defaults_and_window():
    cfg = MpeConfig()
    assert cfg.cycle_width == 6
    assert cfg.restart
    assert cfg.window == 8


@pytest.mark.parametrize("kwargs", [{"cycle_width": 0}, {"cycle_width": 2.5}, {"ls_tolerance": 0.0}])
def test_config_rejects_bad_values(kwargs):
    with pytest.raises(ArgumentError):
        MpeConfig(**kwargs)


def test_linear_iteration_is_extrapolated_exactly():
    """A 3-dimensional linear map has a minimal polynomial of degree 3."""
    result = mpe_extrapolate(linear_sequence(5))
    assert np.allclose(result, FIXED_POINT, atol=1e-10)


def test_plain_iterates_are_far_from_the_limit():
    assert np.linalg.norm(linear_sequence(5)[-1] - FIXED_POINT) > 1.0


def test_scalar_geometric_sequence():
    values = [1.0 - 0.5**n for n in range(3)]
    result = mpe_extrapolate(values)
    assert isinstance(result, float)
    assert result == pytest.approx(1.0)


def test_complex_vectors_keep_their_type():
    start = np.array([1.0 + 1.0j, 0.0, -1.0j])
    vectors = [start]
    for _ in range(4):
        vectors.append(MATRIX @ vectors[-1] + OFFSET)
    result = mpe_extrapolate(vectors)
    assert np.iscomplexobj(result)
    assert np.allclose(result, FIXED_POINT, atol=1e-10)


def test_constant_sequence_returns_first_vector():
    x = np.array([1.0, 2.0])
    assert np.array_equal(mpe_extrapolate([x, x.copy(), x.copy()]), x)


def test_extrapolation_needs_three_vectors():
    with pytest.raises(ArgumentError):
        mpe_extrapolate([np.zeros(2), np.ones(2)])


def test_extrapolation_rejects_mixed_shapes():
    with pytest.raises(ArgumentError):
        mpe_extrapolate([np.zeros(2), np.ones(2), np.ones(3)])


def test_safeguard_accepts_improvement():
    cfg = MpeConfig(cycle_width=3)
    vectors = linear_sequence(cfg.window)
    result, accepted = safeguarded_extrapolation(
        vectors, lambda v: float(np.linalg.norm(v - FIXED_POINT)), cfg
    )
    assert accepted
    assert np.allclose(result, FIXED_POINT, atol=1e-10)


def test_safeguard_rejects_worse_candidate():
    cfg = MpeConfig(cycle_width=3)
    vectors = linear_sequence(cfg.window)

    def residual(v: np.ndarray) -> float:
        return 1.0 if np.allclose(v, FIXED_POINT, atol=1e-8) else 0.0

    result, accepted = safeguarded_extrapolation(vectors, residual, cfg)
    assert not accepted
    assert result is vectors[-1]


def distance(v: np.ndarray) -> float:
    return float(np.linalg.norm(v - FIXED_POINT))


def test_extrapolation_commutes_with_a_shift():
    shift = np.array([10.0, -3.0, 0.25])
    vectors = linear_sequence(5, start=np.array([0.3, 0.1, -0.7]))
    moved = mpe_extrapolate([v + shift for v in vectors])
    assert np.allclose(moved, mpe_extrapolate(vectors) + shift, atol=1e-10)


def test_accelerated_cycle_reaches_fixed_point():
    cfg = MpeConfig(cycle_width=3)
    result, accepted = accelerated_solve_cycle(linear_step, np.zeros(3), cfg, distance)
    assert accepted
    assert np.allclose(result, FIXED_POINT, atol=1e-10)


def test_accelerated_cycle_takes_cycle_width_plus_one_steps():
    calls = []

    def counted(x: np.ndarray) -> np.ndarray:
        calls.append(x)
        return linear_step(x)

    accelerated_solve_cycle(counted, np.zeros(3), MpeConfig(cycle_width=4), distance)
    assert len(calls) == 5


def test_accelerated_cycle_falls_back_to_last_iterate():
    cfg = MpeConfig(cycle_width=3)
    plain = linear_sequence(cfg.window)

    def worse_at_limit(v: np.ndarray) -> float:
        return 1.0 if np.allclose(v, FIXED_POINT, atol=1e-8) else 0.5

    result, accepted = accelerated_solve_cycle(linear_step, np.zeros(3), cfg, worse_at_limit, start_residual=0.5)
    assert not accepted
    assert np.array_equal(result, plain[-1])
