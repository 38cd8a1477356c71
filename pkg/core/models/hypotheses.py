"""
Checks of the standing assumptions on a scalar model.

- nonlinearity: f is a polynomial with gamma_j >= 0 (j < p), gamma_p > 0.
- small-wavenumber: alpha(xi)/|xi|^(2 s_tilde) -> 0 as xi -> 0 for some
  s_tilde >= (p0 - 2)/4.
- large-wavenumber: alpha(xi)/|xi|^(2 s) bounded away from 0 and infinity
  for some s >= (p - 2)/4.

Power-law symbols are decided exactly. Other symbols are sampled with the
declared exponents and only earn a heuristic verdict.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List

import numpy as np

from config import (
    HYPOTHESIS_RATIO_BOUNDS,
    HYPOTHESIS_SAMPLE_RANGE,
    HYPOTHESIS_SMALL_RANGE,
    SYMBOL_SAMPLE_POINTS,
)
from core.models.scalar import ScalarModel

logger = logging.getLogger(__name__)


class HypothesisStatus(str, Enum):
    PASSED = "pass"
    FAILED = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    status: HypothesisStatus
    detail: str
    heuristic: bool = False


@dataclass
class HypothesisReport:
    model: str
    checks: List[HypothesisCheck] = field(default_factory=list)

    def status(self, name: str) -> HypothesisStatus:
        for check in self.checks:
            if check.name == name:
                return check.status
        raise KeyError(name)

    @property
    def all_passed(self) -> bool:
        return all(c.status is HypothesisStatus.PASSED for c in self.checks)

    def lines(self) -> List[str]:
        rows = []
        for c in self.checks:
            tag = " (heuristic)" if c.heuristic else ""
            rows.append(f"{c.name}: {c.status.value}{tag} - {c.detail}")
        return rows


def _status(ok: bool) -> HypothesisStatus:
    return HypothesisStatus.PASSED if ok else HypothesisStatus.FAILED


def _check_nonlinearity(model: ScalarModel) -> HypothesisCheck:
    nl = model.nonlinearity
    ok = nl.satisfies_standard_form
    return HypothesisCheck(
        "nonlinearity", _status(ok),
        f"gammas {list(nl.gammas)} with p = {nl.degree}",
    )


def _power_law_checks(model: ScalarModel, mu: float) -> List[HypothesisCheck]:
    p = model.degree
    p0 = model.nonlinearity.lowest_degree
    checks = []
    if p0 is None:
        checks.append(HypothesisCheck(
            "small-wavenumber", HypothesisStatus.INCONCLUSIVE, "no positive gamma_j defines p0"))
    else:
        bound = (p0 - 2) / 4.0
        checks.append(HypothesisCheck(
            "small-wavenumber", _status(mu / 2.0 > bound),
            f"mu/2 = {mu / 2.0:g} must exceed (p0-2)/4 = {bound:g}",
        ))
    bound = (p - 2) / 4.0
    checks.append(HypothesisCheck(
        "large-wavenumber", _status(mu / 2.0 >= bound),
        f"mu/2 = {mu / 2.0:g} must be >= (p-2)/4 = {bound:g}",
    ))
    return checks


def _sampled_ratio(model: ScalarModel, exponent: float, band) -> np.ndarray:
    xi = np.logspace(np.log10(band[0]), np.log10(band[1]), SYMBOL_SAMPLE_POINTS)
    return np.asarray(model.dispersion(xi), dtype=float) / xi ** (2.0 * exponent)


def _sampled_checks(model: ScalarModel) -> List[HypothesisCheck]:
    if model.dispersion_exponents is None:
        reason = "no declared exponents for a non-power-law symbol"
        return [
            HypothesisCheck("small-wavenumber", HypothesisStatus.INCONCLUSIVE, reason),
            HypothesisCheck("large-wavenumber", HypothesisStatus.INCONCLUSIVE, reason),
        ]

    s_tilde, s = model.dispersion_exponents
    p = model.degree
    p0 = model.nonlinearity.lowest_degree
    checks = []

    # ratio must shrink toward xi -> 0
    small = _sampled_ratio(model, s_tilde, HYPOTHESIS_SMALL_RANGE)
    vanishing = bool(np.all(np.isfinite(small)) and abs(small[0]) < abs(small[-1]))
    if p0 is None:
        checks.append(HypothesisCheck(
            "small-wavenumber", HypothesisStatus.INCONCLUSIVE, "no positive gamma_j defines p0", True))
    else:
        bound = (p0 - 2) / 4.0
        checks.append(HypothesisCheck(
            "small-wavenumber", _status(vanishing and s_tilde >= bound),
            f"s_tilde = {s_tilde:g} vs (p0-2)/4 = {bound:g}; sampled ratio "
            f"{'decays' if vanishing else 'does not decay'} toward 0",
            heuristic=True,
        ))

    large = _sampled_ratio(model, s, HYPOTHESIS_SAMPLE_RANGE)
    low, high = HYPOTHESIS_RATIO_BOUNDS
    bounded = bool(np.all(np.isfinite(large)) and large.min() > low and large.max() < high)
    bound = (p - 2) / 4.0
    checks.append(HypothesisCheck(
        "large-wavenumber", _status(bounded and s >= bound),
        f"s = {s:g} vs (p-2)/4 = {bound:g}; sampled ratio in "
        f"[{large.min():.3g}, {large.max():.3g}]",
        heuristic=True,
    ))
    return checks


def check_hypotheses(model: ScalarModel) -> HypothesisReport:
    report = HypothesisReport(model=model.name, checks=[_check_nonlinearity(model)])
    if model.power_law is not None:
        report.checks.extend(_power_law_checks(model, model.power_law))
    else:
        report.checks.extend(_sampled_checks(model))
    for check in report.checks:
        logger.debug("%s | %s", model.name, check)
    return report
