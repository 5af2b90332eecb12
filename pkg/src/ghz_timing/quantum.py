"""Quantum-mechanical predictions for the 3-photon energy-time GHZ setup.

Amplitude bookkeeping: every photon ends in a Franson-type interferometer
whose first splitter sends it into one of two arms and whose choice device
recombines the arms onto outputs +/-.  Splitters are symmetric 50-50 with
transmission 1/sqrt(2) and reflection i/sqrt(2).  The "short-like" arm
(s for photons 1, 2 and l1 for photon 3) is the transmitted one at the
first splitter; the other arm is reflected.
"""
from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass
from typing import Mapping

T = 1 / math.sqrt(2)
R = 1j / math.sqrt(2)

# Relative phase on the C2 amplitude.  Chosen so that the interference term
# comes out as +sin(delta) rather than -cos(delta); pinned by a test.
CALIBRATION_PHASE = -math.pi / 2

Outcome = tuple[int, int, int]
OUTCOMES: tuple[Outcome, ...] = tuple(itertools.product((1, -1), repeat=3))
PAIRS = ((1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class PhaseSettings:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "phi1", "phi2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"phase {name} must be finite")
            object.__setattr__(self, name, value)

    @classmethod
    def from_delta(cls, delta: float) -> "PhaseSettings":
        """Settings with the whole phase combination carried by alpha."""
        return cls(alpha=delta)

    @property
    def delta(self) -> float:
        """The only phase combination the correlations depend on."""
        return self.alpha - self.beta - self.gamma + self.phi2 - self.phi1


class PathClass(enum.Enum):
    """The two indistinguishable photon-triple path classes.

    Per photon: (pump, source arm, interferometer arm).
    """

    C1 = (("S1", "s", "l1"), ("S2", "l2", "s"), ("S2", "l2", "l1"))
    C2 = (("S1", "l1", "s"), ("S2", "s", "l2"), ("S1", "l1", "l2"))


# Interferometer arm that counts as "long" for each photon; the other one is
# the transmitted (short-like) arm.
_LONG_ARM = {1: "l1", 2: "l2", 3: "l2"}
_ARMS = {1: ("s", "l1"), 2: ("s", "l2"), 3: ("l1", "l2")}


def splitter_amplitude(device: int, arm: str, port: int) -> complex:
    """Amplitude for photon `device` to take `arm` and leave by `port`."""
    if arm not in _ARMS[device]:
        raise ValueError(f"interferometer {device} has no arm {arm!r}")
    if port not in (1, -1):
        raise ValueError("port must be +1 or -1")
    if arm == _LONG_ARM[device]:
        # reflected in, then reflected to + / transmitted to -
        return R * (R if port == 1 else T)
    return T * (T if port == 1 else R)


def _class_phase(c: PathClass, ph: PhaseSettings) -> float:
    (_, _, arm1), (_, _, arm2), (pump3, src3, arm3) = c.value
    phase = 0.0
    if arm1 == "l1":
        phase += ph.alpha
    if arm2 == "l2":
        phase += ph.beta
    if arm3 == "l2":
        phase += ph.gamma
    # photons 2,3 (C1) or 1,3 (C2) are twins from one pump photon, so the
    # source arm they share is crossed once
    phase += ph.phi1 if src3 == "l1" else ph.phi2
    if c is PathClass.C2:
        phase += CALIBRATION_PHASE
    return phase


def path_amplitude(c: PathClass, o: Outcome, ph: PhaseSettings) -> complex:
    amp = cmath.exp(1j * _class_phase(c, ph))
    for device, (_, _, arm), port in zip((1, 2, 3), c.value, o):
        amp *= splitter_amplitude(device, arm, port)
    return amp


@dataclass(frozen=True)
class JointDistribution:
    """Probabilities of the eight outcome triples (rho, sigma, omega)."""

    p: Mapping[Outcome, float]

    def __post_init__(self):
        p = {o: float(self.p[o]) for o in OUTCOMES}
        if len(self.p) != 8:
            raise ValueError("a joint distribution has exactly 8 entries")
        for o, v in p.items():
            if not -1e-12 <= v <= 1 + 1e-12:
                raise ValueError(f"probability {v} for {o} outside [0, 1]")
        if abs(math.fsum(p.values()) - 1.0) > 1e-12:
            raise ValueError("probabilities do not sum to 1")
        object.__setattr__(self, "p", p)

    def __getitem__(self, o: Outcome) -> float:
        return self.p[tuple(o)]

    def values(self) -> list[float]:
        return [self.p[o] for o in OUTCOMES]

    def correlation(self) -> float:
        """Expectation of rho * sigma * omega."""
        num = math.fsum(r * s * w * v for (r, s, w), v in self.p.items())
        return num / math.fsum(self.p.values()) + 0.0

    def marginal(self, pair: tuple[int, int]) -> dict[tuple[int, int], float]:
        i, j = pair
        if i == j or {i, j} - {1, 2, 3}:
            raise ValueError(f"bad device pair {pair!r}")
        out: dict[tuple[int, int], float] = {}
        for a, b in itertools.product((1, -1), repeat=2):
            out[(a, b)] = math.fsum(v for o, v in self.p.items() if o[i - 1] == a and o[j - 1] == b)
        return out

    def max_abs_diff(self, other: "JointDistribution") -> float:
        return max(abs(self.p[o] - other.p[o]) for o in OUTCOMES)


def joint_from_correlation(e: float) -> JointDistribution:
    """Distribution (1/8)[1 + rho*sigma*omega*e]."""
    return JointDistribution({o: (1 + o[0] * o[1] * o[2] * e) / 8 for o in OUTCOMES})


def qm_joint(ph: PhaseSettings) -> JointDistribution:
    return joint_from_correlation(math.sin(ph.delta))


def qm_joint_from_amplitudes(ph: PhaseSettings) -> JointDistribution:
    """Same distribution via |A(C1, o) + A(C2, o)|^2 / K."""
    weights = {
        o: abs(path_amplitude(PathClass.C1, o, ph) + path_amplitude(PathClass.C2, o, ph)) ** 2
        for o in OUTCOMES
    }
    k = math.fsum(weights.values())
    return JointDistribution({o: w / k for o, w in weights.items()})


def qm_correlation(ph: PhaseSettings) -> float:
    return qm_joint(ph).correlation()


def unitarity_residual(ports: tuple[str, str]) -> float:
    """|A(p+)A*(q+) + A(p-)A*(q-)| for the device whose arms are `ports`."""
    p, q = ports
    for device, arms in _ARMS.items():
        if set(arms) == {p, q} and p != q:
            break
    else:
        raise ValueError(f"no choice device has input arms {ports!r}")
    total = sum(
        splitter_amplitude(device, p, port) * splitter_amplitude(device, q, port).conjugate()
        for port in (1, -1)
    )
    return abs(total)


def qm_marginal(pair: tuple[int, int], ph: PhaseSettings) -> dict[tuple[int, int], float]:
    return qm_joint(ph).marginal(pair)
