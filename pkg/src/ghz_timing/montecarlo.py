"""Seeded sampling of outcome triples under QM or Multisimultaneity.

Random numbers are counter based: the uniform for (draw index n, stream j)
is the (8n + j)-th output of SplitMix64 started from state ``seed``::

    z = (seed + (8n + j + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    z =  z ^ (z >> 31)
    u = (z >> 11) * 2**-53

Streams: 0 path class, 1-3 before-values of devices 1-3, 4-6 after-choice
draws of devices 1-3, 7 direct draw from the QM distribution.  A draw is a
pure function of (seed, n), so any partition of the index range gives the
same tallies.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .multisim import conditional_after, effective_labels, pr_before_given_path, pr_path
from .quantum import OUTCOMES, Outcome, PathClass, PhaseSettings, qm_joint
from .spacetime import TimingRegime

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
N_STREAMS = 8
STREAM_PATH = 0
STREAM_BEFORE = 1
STREAM_AFTER = 4
STREAM_QM = 7
THEORIES = ("qm", "ms")
CHUNK = 1 << 18


def splitmix64(seed: int, counter: int) -> int:
    z = (seed + (counter + 1) * GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def uniform(seed: int, index: int, stream: int) -> float:
    return (splitmix64(seed & MASK64, index * N_STREAMS + stream) >> 11) * 2.0**-53


def _uniforms(seed: int, start: int, stop: int, stream: int) -> np.ndarray:
    counters = np.arange(start, stop, dtype=np.uint64) * np.uint64(N_STREAMS) + np.uint64(stream + 1)
    z = np.uint64(seed & MASK64) + counters * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class SamplerSpec:
    theory: str
    phases: PhaseSettings
    n: int
    seed: int = 0
    regime: TimingRegime | None = None

    def __post_init__(self):
        if self.theory not in THEORIES:
            raise ValueError(f"theory must be one of {THEORIES}, got {self.theory!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.theory == "ms" and self.regime is None:
            raise ValueError("Multisimultaneity sampling needs a timing regime")


@dataclass(frozen=True)
class EstimateResult:
    counts: dict[Outcome, int]
    e_hat: float
    stderr: float
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", sum(self.counts.values()))


def _qm_cdf(ph: PhaseSettings) -> list[float]:
    cdf, acc = [], 0.0
    for p in qm_joint(ph).values():
        acc += p
        cdf.append(acc)
    cdf[-1] = 1.0
    return cdf


def sample_triple(spec: SamplerSpec, index: int) -> Outcome:
    """Outcome of draw `index`; scalar reference for `sample_counts`."""
    u = lambda stream: uniform(spec.seed, index, stream)  # noqa: E731
    if spec.theory == "qm":
        x = u(STREAM_QM)
        for o, edge in zip(OUTCOMES, _qm_cdf(spec.phases)):
            if x < edge:
                return o
        return OUTCOMES[-1]

    c = PathClass.C1 if u(STREAM_PATH) < pr_path(PathClass.C1) else PathClass.C2
    before = [
        1 if u(STREAM_BEFORE + i - 1) < pr_before_given_path(i, 1, c) else -1 for i in (1, 2, 3)
    ]
    out = list(before)
    for i, is_after in zip((1, 2, 3), effective_labels(spec.regime)):
        if is_after:
            others = tuple(before[j - 1] for j in (1, 2, 3) if j != i)
            p_plus = conditional_after(i, 1, others, spec.phases)
            out[i - 1] = 1 if u(STREAM_AFTER + i - 1) < p_plus else -1
    return tuple(out)


def _tally(triples: np.ndarray) -> dict[Outcome, int]:
    # encode (+1, -1) -> (0, 1) bits in OUTCOMES order
    bits = (triples < 0).astype(np.int64)
    codes = bits[:, 0] * 4 + bits[:, 1] * 2 + bits[:, 2]
    hist = np.bincount(codes, minlength=8)
    return {o: int(hist[k]) for k, o in enumerate(OUTCOMES)}


def sample_counts(spec: SamplerSpec, start: int = 0, stop: int | None = None) -> dict[Outcome, int]:
    """Tallies for draws ``start <= index < stop`` (default: the whole spec)."""
    stop = spec.n if stop is None else stop
    if not 0 <= start <= stop:
        raise ValueError("need 0 <= start <= stop")
    total: Counter = Counter({o: 0 for o in OUTCOMES})
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        total.update(_tally(_sample_block(spec, lo, hi)))
    return {o: total[o] for o in OUTCOMES}


def _sample_block(spec: SamplerSpec, lo: int, hi: int) -> np.ndarray:
    u = lambda stream: _uniforms(spec.seed, lo, hi, stream)  # noqa: E731
    if spec.theory == "qm":
        table = np.array(OUTCOMES, dtype=np.int64)
        idx = np.searchsorted(np.array(_qm_cdf(spec.phases)), u(STREAM_QM), side="right")
        return table[np.minimum(idx, 7)]

    in_c1 = u(STREAM_PATH) < pr_path(PathClass.C1)
    cols = []
    for i in (1, 2, 3):
        threshold = np.where(
            in_c1, pr_before_given_path(i, 1, PathClass.C1), pr_before_given_path(i, 1, PathClass.C2)
        )
        cols.append(np.where(u(STREAM_BEFORE + i - 1) < threshold, 1, -1))
    before = np.stack(cols, axis=1)
    out = before.copy()
    s = math.sin(spec.phases.delta)
    for i, is_after in enumerate(effective_labels(spec.regime)):
        if is_after:
            j, k = (m for m in range(3) if m != i)
            p_plus = 0.5 * (1 + before[:, j] * before[:, k] * s)
            out[:, i] = np.where(u(STREAM_AFTER + i) < p_plus, 1, -1)
    return out


def estimate_correlation(spec: SamplerSpec) -> EstimateResult:
    counts = sample_counts(spec)
    n = sum(counts.values())
    e_hat = sum(o[0] * o[1] * o[2] * k for o, k in counts.items()) / n
    stderr = math.sqrt(max(0.0, 1.0 - e_hat * e_hat) / n)
    return EstimateResult(counts, e_hat, stderr)
