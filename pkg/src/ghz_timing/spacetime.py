"""Event bookkeeping in special relativity and before/after timing labels.

Times are seconds, lengths meters, velocities m/s, all in the laboratory
frame unless stated otherwise.  A device frame is the inertial frame moving
with the device's velocity at its choice instant, with origin coinciding
with the lab origin at t = 0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PhysicsError

C = 299_792_458.0  # m/s, exact by definition of the metre
C2 = C * C

DEFAULT_TIE_TOLERANCE = 1e-18  # s


@dataclass(frozen=True)
class Event:
    t: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("t", "x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"event coordinate {name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @property
    def position(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Velocity:
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0

    def __post_init__(self):
        for name in ("vx", "vy", "vz"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"velocity component {name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.speed >= C:
            raise PhysicsError(f"speed {self.speed!r} m/s is not below c")

    @property
    def components(self) -> tuple[float, float, float]:
        return (self.vx, self.vy, self.vz)

    @property
    def speed(self) -> float:
        return math.hypot(self.vx, self.vy, self.vz)

    def dot(self, r: Iterable[float]) -> float:
        return math.fsum(a * b for a, b in zip(self.components, r))


REST = Velocity()


def gamma_minus_one(v: Velocity) -> float:
    """gamma - 1 without cancellation for slow frames (|v| of a few km/s)."""
    beta2 = math.fsum(c * c for c in v.components) / C2
    return math.expm1(-0.5 * math.log1p(-beta2))


def gamma(v: Velocity) -> float:
    return 1.0 + gamma_minus_one(v)


def boost_time(e: Event, v: Velocity) -> float:
    """Time coordinate of `e` in the frame moving with velocity `v`.

    Evaluates gamma * (t - v.r/c^2) as u + (gamma - 1) * u so the
    picosecond-scale shift v.r/c^2 is not swamped by gamma rounding.
    """
    if not isinstance(v, Velocity):
        v = Velocity(*v)
    u = math.fsum((e.t, -v.dot(e.position) / C2))
    return math.fsum((u, gamma_minus_one(v) * u))


def boost_event(e: Event, v: Velocity) -> Event:
    """Full Lorentz boost of `e` into the frame moving with velocity `v`."""
    t_prime = boost_time(e, v)
    v2 = math.fsum(c * c for c in v.components)
    if v2 == 0.0:
        return Event(e.t, e.x, e.y, e.z)
    gm1 = gamma_minus_one(v)
    g = 1.0 + gm1
    # r' = r + [(gamma - 1)(v.r)/v^2 - gamma t] v
    k = math.fsum((gm1 * v.dot(e.position) / v2, -g * e.t))
    x, y, z = (r + k * c for r, c in zip(e.position, v.components))
    return Event(t_prime, x, y, z)


def frame_time_difference(a: Event, b: Event, v: Velocity) -> float:
    """T_b - T_a as measured in the frame moving with `v`.

    Differences are formed in the lab frame first, so a common time offset
    or a large absolute time never costs precision.
    """
    dt = b.t - a.t
    dr = (b.x - a.x, b.y - a.y, b.z - a.z)
    u = math.fsum((dt, -v.dot(dr) / C2))
    return math.fsum((u, gamma_minus_one(v) * u))


def interval(a: Event, b: Event) -> float:
    """Spacetime interval c^2 dt^2 - |dr|^2 between two events (m^2)."""
    dt = b.t - a.t
    return math.fsum((C2 * dt * dt, -(b.x - a.x) ** 2, -(b.y - a.y) ** 2, -(b.z - a.z) ** 2))


@dataclass(frozen=True)
class ChoiceDevice:
    id: int
    choice_event: Event
    velocity: Velocity = REST

    def __post_init__(self):
        if self.id not in (1, 2, 3):
            raise ValueError(f"device id must be 1, 2 or 3, got {self.id!r}")


class Timing(enum.Enum):
    BEFORE = "b"
    AFTER_RELATIVE = "a[]"
    AFTER = "a"


@dataclass(frozen=True)
class TimingLabel:
    kind: Timing
    other: int | None = None

    def __post_init__(self):
        if (self.kind is Timing.AFTER_RELATIVE) != (self.other is not None):
            raise ValueError("only AfterRelative labels carry a reference device")

    @classmethod
    def before(cls) -> "TimingLabel":
        return cls(Timing.BEFORE)

    @classmethod
    def after(cls) -> "TimingLabel":
        return cls(Timing.AFTER)

    @classmethod
    def after_relative(cls, other: int) -> "TimingLabel":
        return cls(Timing.AFTER_RELATIVE, other)

    @classmethod
    def parse(cls, text: str) -> "TimingLabel":
        s = text.strip()
        lowered = s.lower()
        if lowered in ("b", "before"):
            return cls.before()
        if lowered in ("a", "after"):
            return cls.after()
        for prefix in ("a[", "afterrelative("):
            if lowered.startswith(prefix) and lowered[-1] in "])":
                return cls.after_relative(int(s[len(prefix):-1]))
        raise ValueError(f"unrecognised timing label {text!r}")

    @property
    def name(self) -> str:
        if self.kind is Timing.AFTER_RELATIVE:
            return f"AfterRelative({self.other})"
        return "Before" if self.kind is Timing.BEFORE else "After"

    def __str__(self) -> str:
        if self.kind is Timing.AFTER_RELATIVE:
            return f"a[{self.other}]"
        return self.kind.value


BEFORE = TimingLabel.before()
AFTER = TimingLabel.after()


@dataclass(frozen=True)
class TimingRegime:
    """One timing label per device; ``labels[i - 1]`` belongs to device ``i``."""

    labels: tuple[TimingLabel, TimingLabel, TimingLabel]

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(labels) != 3:
            raise ValueError("a timing regime has exactly three labels")
        for i, label in enumerate(labels, start=1):
            if not isinstance(label, TimingLabel):
                raise TypeError(f"label for device {i} is not a TimingLabel")
            if label.kind is Timing.AFTER_RELATIVE and label.other not in {1, 2, 3} - {i}:
                raise ValueError(f"device {i} cannot be after-relative to {label.other}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def parse(cls, text: str) -> "TimingRegime":
        """Accepts ``"a/a/b"``, ``"a[3]/a[3]/b"`` or a compact ``"aab"``."""
        s = text.strip()
        parts = s.split("/") if "/" in s else list(s)
        return cls(tuple(TimingLabel.parse(p) for p in parts))

    def __getitem__(self, device_id: int) -> TimingLabel:
        return self.labels[device_id - 1]

    def __iter__(self):
        return iter(self.labels)

    def __str__(self) -> str:
        return "/".join(str(label) for label in self.labels)

    @property
    def names(self) -> tuple[str, str, str]:
        return tuple(label.name for label in self.labels)


def _by_id(devices: Sequence[ChoiceDevice]) -> dict[int, ChoiceDevice]:
    table = {d.id: d for d in devices}
    if len(devices) != 3 or set(table) != {1, 2, 3}:
        raise ValueError("need exactly three devices with distinct ids 1, 2, 3")
    return table


def frame_time_offsets(i: int, devices: Sequence[ChoiceDevice]) -> dict[int, float]:
    """T_j - T_i for every device j, measured in device i's frame."""
    table = _by_id(devices)
    me = table[i]
    return {
        j: frame_time_difference(me.choice_event, d.choice_event, me.velocity)
        for j, d in table.items()
    }


def classify_device(
    i: int, devices: Sequence[ChoiceDevice], tol: float = DEFAULT_TIE_TOLERANCE
) -> TimingLabel:
    """Timing label of device `i`'s choice judged in its own frame.

    ``T_i >= T_x`` holds when ``T_x - T_i <= tol``; strict ``T_i < T_x`` is
    its complement.
    """
    offsets = frame_time_offsets(i, devices)
    j, k = (d for d in (1, 2, 3) if d != i)
    j_later = offsets[j] > tol
    k_later = offsets[k] > tol
    if j_later and k_later:
        return BEFORE
    if not j_later and not k_later:
        return AFTER
    if j_later:
        return TimingLabel.after_relative(k)
    return TimingLabel.after_relative(j)


def classify_all(
    devices: Sequence[ChoiceDevice], tol: float = DEFAULT_TIE_TOLERANCE
) -> TimingRegime:
    return TimingRegime(tuple(classify_device(i, devices, tol) for i in (1, 2, 3)))


@dataclass(frozen=True)
class FeasibilitySpec:
    D: float
    delta_t: float
    V: float

    def __post_init__(self):
        if not self.D > 0:
            raise ValueError("D must be positive")
        _check_bound_inputs(self.delta_t, self.V)

    @property
    def min_distance(self) -> float:
        return min_distance(self.delta_t, self.V)

    @property
    def feasible(self) -> bool:
        return self.D > self.min_distance


def _check_bound_inputs(delta_t: float, V: float) -> None:
    if not delta_t > 0:
        raise ValueError(f"delta_t must be positive, got {delta_t!r}")
    if not V > 0:
        raise ValueError(f"V must be positive, got {V!r}")
    if V > C:
        raise PhysicsError(f"V = {V!r} m/s exceeds c")


def min_distance(delta_t: float, V: float) -> float:
    """Smallest device separation (m) that lets motion at `V` reorder two
    choices whose lab-frame timing is only known to within `delta_t`."""
    _check_bound_inputs(delta_t, V)
    return C2 * delta_t / V


def check_feasibility(D: float, delta_t: float, V: float) -> bool:
    return FeasibilitySpec(D, delta_t, V).feasible
