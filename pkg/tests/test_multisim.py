import itertools
import math

import pytest
from hypothesis import given

import oracles
from conftest import phase_settings, random_phase_tuples
from ghz_timing.multisim import (
    RegimePrediction,
    conditional_after,
    ms_correlation,
    ms_joint,
    pr_before_given_path,
    pr_path,
    predict,
)
from ghz_timing.quantum import OUTCOMES, PAIRS, PathClass, PhaseSettings, qm_joint
from ghz_timing.spacetime import AFTER, BEFORE, TimingLabel, TimingRegime

LABELS = [BEFORE, AFTER] + [TimingLabel.after_relative(k) for k in (1, 2, 3)]


def all_regimes():
    out = []
    for combo in itertools.product(LABELS, repeat=3):
        try:
            out.append(TimingRegime(combo))
        except ValueError:
            pass
    return out


def max_diff(dist, table):
    return max(abs(dist[o] - table[o]) for o in OUTCOMES)


def test_path_and_before_probabilities():
    assert pr_path(PathClass.C1) == 0.5
    assert pr_path(PathClass.C2) == 0.5
    assert sum(pr_path(c) for c in PathClass) == 1
    assert pr_before_given_path(1, 1, PathClass.C1) == 0.5
    assert pr_before_given_path(3, -1, PathClass.C2) == 0.5
    assert sum(pr_before_given_path(2, v, PathClass.C1) for v in (1, -1)) == 1


def test_conditional_after_examples():
    assert conditional_after(3, 1, (1, 1), PhaseSettings.from_delta(math.pi / 2)) == 1.0
    for args in itertools.product((1, -1), repeat=3):
        assert conditional_after(1, args[0], args[1:], PhaseSettings()) == 0.5
    ph = PhaseSettings.from_delta(math.pi / 6)
    got = conditional_after(3, -1, (1, 1), ph)
    assert got == pytest.approx(0.25, abs=1e-15)
    # QM joint over its (rho, sigma) marginal
    qm = qm_joint(ph)
    assert got == pytest.approx(qm[(1, 1, -1)] / (qm[(1, 1, 1)] + qm[(1, 1, -1)]), abs=1e-15)


@pytest.mark.parametrize("delta", [0.0, 0.4, math.pi / 2, 2.9])
def test_all_before_uniform(delta):
    dist = ms_joint(TimingRegime.parse("bbb"), PhaseSettings.from_delta(delta))
    assert all(abs(v - 1 / 8) < 1e-15 for v in dist.values())


def test_after_after_before_uniform_brute_force():
    for ph in random_phase_tuples(50, seed=5):
        dist = ms_joint(TimingRegime.parse("aab"), ph)
        assert max_diff(dist, oracles.after_after_before(ph)) < 1e-12
        assert all(abs(v - 1 / 8) < 1e-12 for v in dist.values())


def test_all_after_sin_cubed():
    dist = ms_joint(TimingRegime.parse("aaa"), PhaseSettings.from_delta(math.pi / 6))
    for o in OUTCOMES:
        want = 0.140625 if o[0] * o[1] * o[2] == 1 else 0.109375
        assert dist[o] == pytest.approx(want, abs=1e-15)


def test_qm_equivalent_timing_at_maximal_interference():
    ph = PhaseSettings.from_delta(math.pi / 2)
    regime = TimingRegime((BEFORE, TimingLabel.after_relative(1), AFTER))
    assert ms_joint(regime, ph).max_abs_diff(qm_joint(ph)) < 1e-15


@pytest.mark.parametrize(
    "name, delta, e",
    [("bbb", 0.3, 0.0), ("bbb", math.pi / 2, 0.0), ("aab", 1.1, 0.0), ("aab", math.pi / 2, 0.0), ("aaa", math.pi / 2, 1.0)],
)
def test_correlation_examples(name, delta, e):
    regime = TimingRegime.parse(name)
    ph = PhaseSettings.from_delta(delta)
    assert ms_correlation(regime, ph) == pytest.approx(e, abs=1e-12)
    assert ms_correlation(regime, ph, method="sum") == pytest.approx(e, abs=1e-12)


def test_untabulated_regime_bba_is_qm():
    for ph in random_phase_tuples(20, seed=9):
        assert ms_joint(TimingRegime.parse("bba"), ph).max_abs_diff(qm_joint(ph)) < 1e-12


def test_predict_bundles_correlation():
    p = predict(TimingRegime.parse("aaa"), PhaseSettings.from_delta(1.0))
    assert isinstance(p, RegimePrediction)
    assert p.correlation == pytest.approx(math.sin(1.0) ** 3, abs=1e-12)


def test_unknown_method():
    with pytest.raises(ValueError):
        ms_joint(TimingRegime.parse("bbb"), PhaseSettings(), method="fast")


def test_oracle_equivalence_named_regimes(phase_sample):
    cases = [
        (TimingRegime.parse("bbb"), oracles.all_before),
        (TimingRegime.parse("a[3]/a[3]/b"), lambda ph: oracles.afterrel_afterrel_before(ph)),
        (TimingRegime.parse("aab"), oracles.after_after_before),
        (TimingRegime.parse("aaa"), oracles.all_after),
    ]
    for i, j, k in itertools.permutations((1, 2, 3)):
        labels = [None] * 3
        labels[i - 1] = BEFORE
        labels[j - 1] = TimingLabel.after_relative(i)
        labels[k - 1] = AFTER
        cases.append((TimingRegime(tuple(labels)), lambda ph, i=i, j=j, k=k: oracles.before_afterrel_after(ph, i, j, k)))
    for ph in phase_sample:
        for regime, oracle in cases:
            assert max_diff(ms_joint(regime, ph), oracle(ph)) < 1e-12, (regime, ph)


@given(phase_settings)
def test_every_regime_normalised_and_no_signaling(ph):
    for regime in all_regimes():
        dist = ms_joint(regime, ph)
        assert min(dist.values()) >= 0
        assert abs(math.fsum(dist.values()) - 1) < 1e-12
        for pair in PAIRS:
            assert all(abs(v - 0.25) < 1e-12 for v in dist.marginal(pair).values())
        assert dist.max_abs_diff(ms_joint(regime, ph, method="closed")) < 1e-12


def test_regime_monotonicity_at_quarter_turn():
    ph = PhaseSettings.from_delta(math.pi / 2)
    got = [ms_correlation(TimingRegime.parse(n), ph) for n in ("bbb", "aab", "aaa")]
    assert got == pytest.approx([0.0, 0.0, 1.0], abs=1e-12)
