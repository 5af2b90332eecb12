"""Multisimultaneity predictions for arbitrary timing regimes.

Before-choices are independent given the path class.  An after-choice
depends on the values the other two photons *would* produce in
before-choices: actual values for devices that really chose before, latent
hypothetical values for devices that also chose after.  After-relative
choices behave as before ones in this setup because every two-party QM
marginal is uniform.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .quantum import (
    OUTCOMES,
    PAIRS,
    JointDistribution,
    PathClass,
    PhaseSettings,
    joint_from_correlation,
    qm_marginal,
)
from .spacetime import Timing, TimingRegime

_SIGNS = (1, -1)


def pr_path(c: PathClass) -> float:
    """Probability that a detected triplet belongs to path class `c`."""
    return 0.5


def pr_before_given_path(i: int, value: int, c: PathClass) -> float:
    """P(photon i leaves by `value` in a before-choice | class c)."""
    if value not in _SIGNS:
        raise ValueError("value must be +1 or -1")
    return 0.5


def conditional_after(k: int, omega: int, given: tuple[int, int], ph: PhaseSettings) -> float:
    """P(after-choice at device k yields `omega` | before-values `given` of
    the other two devices, in increasing device order)."""
    rho, sigma = given
    return 0.5 * (1 + rho * sigma * omega * math.sin(ph.delta))


def effective_labels(regime: TimingRegime) -> tuple[bool, bool, bool]:
    """Per device: True when it acts as an after-choice.

    After-relative labels collapse to before.
    """
    return tuple(label.kind is Timing.AFTER for label in regime)


def _check_after_relative_licence(regime: TimingRegime, ph: PhaseSettings) -> None:
    if not any(label.kind is Timing.AFTER_RELATIVE for label in regime):
        return
    for pair in PAIRS:
        for v in qm_marginal(pair, ph).values():
            if abs(v - 0.25) > 1e-12:
                raise ValueError(
                    "after-relative values only behave as before ones when the "
                    "two-party marginals are uniform"
                )


def ms_joint(regime: TimingRegime, ph: PhaseSettings, method: str = "sum") -> JointDistribution:
    """Joint distribution of (rho, sigma, omega) under `regime`.

    ``method="sum"`` enumerates path class and hypothetical before-values;
    ``method="closed"`` uses the resulting closed forms.
    """
    if method == "closed":
        return joint_from_correlation(ms_correlation_closed(regime, ph))
    if method != "sum":
        raise ValueError(f"unknown method {method!r}")
    _check_after_relative_licence(regime, ph)
    is_after = effective_labels(regime)
    after_ids = [i for i in (1, 2, 3) if is_after[i - 1]]

    probs = {}
    for actual in OUTCOMES:
        terms = []
        for c in PathClass:
            for hyp in itertools.product(_SIGNS, repeat=len(after_ids)):
                before_value = list(actual)
                for i, h in zip(after_ids, hyp):
                    before_value[i - 1] = h
                w = pr_path(c)
                for i in (1, 2, 3):
                    w *= pr_before_given_path(i, before_value[i - 1], c)
                for i in after_ids:
                    others = tuple(before_value[j - 1] for j in (1, 2, 3) if j != i)
                    w *= conditional_after(i, actual[i - 1], others, ph)
                terms.append(w)
        probs[actual] = math.fsum(terms)
    return JointDistribution(probs)


def ms_correlation_closed(regime: TimingRegime, ph: PhaseSettings) -> float:
    """sin(delta)**n for an odd number n of after-choices, else 0."""
    n_after = sum(effective_labels(regime))
    if n_after % 2 == 0:
        return 0.0
    return math.sin(ph.delta) ** n_after


def ms_correlation(regime: TimingRegime, ph: PhaseSettings, method: str = "closed") -> float:
    return ms_joint(regime, ph, method=method).correlation()


@dataclass(frozen=True)
class RegimePrediction:
    regime: TimingRegime
    dist: JointDistribution
    correlation: float

    def __post_init__(self):
        if abs(self.dist.correlation() - self.correlation) > 1e-12:
            raise ValueError("correlation disagrees with the distribution")


def predict(regime: TimingRegime, ph: PhaseSettings, method: str = "sum") -> RegimePrediction:
    dist = ms_joint(regime, ph, method=method)
    return RegimePrediction(regime, dist, dist.correlation())

