"""Experiment configurations, the three proposed presets, and phase scans."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .multisim import ms_correlation
from .quantum import PhaseSettings, qm_correlation
from .spacetime import (
    REST,
    ChoiceDevice,
    Event,
    TimingRegime,
    Velocity,
    classify_all,
    min_distance,
)

NOMINAL_DELTA_T = 2e-12  # s
NOMINAL_SPEED = 2500.0  # m/s
PRESET_NAMES = ("bbb", "aab", "aaa")

# Preset geometry.  The CD31 lab offset has to stay inside the window
# V * d / c^2 (about 1.5-2 ps here) or the moving devices' labels flip.
LINE_SEPARATION = 110.0  # m, CD11-CD21 for "bbb"/"aab"
CD31_OFFSET_Y = 40.0  # m, CD31 sits off the CD11-CD21 axis at its midpoint
TRIANGLE_LEG = 72.0  # m, CD11-CD31 and CD21-CD31 for "aaa"
CD31_TIME_OFFSET = 1e-12  # s


@dataclass(frozen=True)
class ExperimentConfig:
    devices: tuple[ChoiceDevice, ChoiceDevice, ChoiceDevice]
    phases: PhaseSettings = PhaseSettings()
    delta_t: float = NOMINAL_DELTA_T
    label: str = ""
    intent: TimingRegime | None = None

    def __post_init__(self):
        devices = tuple(sorted(self.devices, key=lambda d: d.id))
        if [d.id for d in devices] != [1, 2, 3]:
            raise ValueError("need exactly three devices with ids 1, 2, 3")
        for a, b in itertools.combinations(devices, 2):
            if a.choice_event.position == b.choice_event.position:
                raise ValueError(f"devices {a.id} and {b.id} share a position")
        if not self.delta_t > 0:
            raise ValueError("delta_t must be positive")
        object.__setattr__(self, "devices", devices)

    def device(self, i: int) -> ChoiceDevice:
        return self.devices[i - 1]

    def with_phases(self, phases: PhaseSettings) -> "ExperimentConfig":
        return replace(self, phases=phases)


def separation(cfg: ExperimentConfig, i: int, j: int) -> float:
    a = cfg.device(i).choice_event.position
    b = cfg.device(j).choice_event.position
    return math.dist(a, b)


def axial_speed(cfg: ExperimentConfig, i: int, j: int, frame: int) -> float:
    """|v_frame . u| with u the unit vector from device i to device j."""
    a = np.array(cfg.device(i).choice_event.position)
    b = np.array(cfg.device(j).choice_event.position)
    u = (b - a) / np.linalg.norm(b - a)
    v = np.array(cfg.device(frame).velocity.components)
    return float(abs(v @ u))


def _line_devices(direction: int, cd31_time: float) -> tuple[ChoiceDevice, ...]:
    half = LINE_SEPARATION / 2
    return (
        ChoiceDevice(1, Event(0.0, -half, 0.0, 0.0), Velocity(-direction * NOMINAL_SPEED)),
        ChoiceDevice(2, Event(0.0, half, 0.0, 0.0), Velocity(direction * NOMINAL_SPEED)),
        ChoiceDevice(3, Event(cd31_time, 0.0, CD31_OFFSET_Y, 0.0), REST),
    )


def _triangle_devices() -> tuple[ChoiceDevice, ...]:
    # right angle at CD31 (origin); CD11-CD21 along x; both moving toward CD31
    h = TRIANGLE_LEG / math.sqrt(2)
    w = NOMINAL_SPEED / math.sqrt(2)
    return (
        ChoiceDevice(1, Event(0.0, -h, h, 0.0), Velocity(w, -w)),
        ChoiceDevice(2, Event(0.0, h, h, 0.0), Velocity(-w, -w)),
        ChoiceDevice(3, Event(CD31_TIME_OFFSET, 0.0, 0.0, 0.0), REST),
    )


def preset(name: str, delta_t: float = NOMINAL_DELTA_T, phases: PhaseSettings | None = None) -> ExperimentConfig:
    """Geometry realizing one of the proposed timings.

    ``"bbb"``: CD11, CD21 recede from each other, CD31 at rest chooses first
    in the lab.  ``"aab"``: same with the motion reversed.  ``"aaa"``:
    right triangle with CD31 at the right angle choosing last in the lab and
    CD11, CD21 moving toward it.
    """
    if name == "bbb":
        devices = _line_devices(+1, -CD31_TIME_OFFSET)
    elif name == "aab":
        devices = _line_devices(-1, -CD31_TIME_OFFSET)
    elif name == "aaa":
        devices = _triangle_devices()
    else:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    return ExperimentConfig(
        devices=devices,
        phases=phases or PhaseSettings(),
        delta_t=delta_t,
        label=name,
        intent=TimingRegime.parse(name),
    )


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str
    margin: float | None = None


@dataclass(frozen=True)
class ValidationReport:
    regime: TimingRegime
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"regime: {', '.join(self.regime.names)} ({self.regime})"]
        for c in self.checks:
            out.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        out.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return out


def relevant_pairs(cfg: ExperimentConfig) -> list[tuple[int, int]]:
    """CD11-CD21 plus any other pair in which both devices move."""
    moving = {d.id for d in cfg.devices if d.velocity.speed > 0}
    pairs = {(1, 2)}
    pairs.update(p for p in itertools.combinations((1, 2, 3), 2) if set(p) <= moving)
    return sorted(pairs)


def _pair_check(cfg: ExperimentConfig, i: int, j: int) -> Check:
    D = separation(cfg, i, j)
    V = min(axial_speed(cfg, i, j, i), axial_speed(cfg, i, j, j))
    name = f"separation CD{i}1-CD{j}1"
    if V == 0.0:
        return Check(name, False, f"D = {D:.4g} m but no motion along the pair axis", None)
    bound = min_distance(cfg.delta_t, V)
    margin = D - bound
    return Check(
        name,
        D > bound,
        f"D = {D:.4g} m vs c^2*dt/V = {bound:.4g} m (V = {V:.5g} m/s, margin {margin:+.3g} m)",
        margin,
    )


def validate(cfg: ExperimentConfig) -> ValidationReport:
    regime = classify_all(cfg.devices)
    checks = [_pair_check(cfg, i, j) for i, j in relevant_pairs(cfg)]
    if cfg.intent is not None:
        checks.append(
            Check(
                "regime",
                regime == cfg.intent,
                f"classified {regime}, intended {cfg.intent}",
            )
        )
    return ValidationReport(regime, checks)


@dataclass(frozen=True)
class ScanRow:
    delta: float
    e_qm: float
    e_ms: float
    regime: TimingRegime

    def __post_init__(self):
        if abs(self.e_qm) > 1 + 1e-12 or abs(self.e_ms) > 1 + 1e-12:
            raise ValueError("correlation outside [-1, 1]")


def linear_grid(start: float, stop: float, steps: int) -> list[float]:
    """`steps` evenly spaced values from `start` to `stop` inclusive."""
    if steps < 1:
        raise ValueError("a grid needs at least one point")
    return np.linspace(start, stop, steps).tolist()


def scan(cfg: ExperimentConfig, grid: Sequence[float]) -> list[ScanRow]:
    """QM and Multisimultaneity correlations along a phase grid.

    The phase combination is carried by alpha; the others are zero.
    """
    if len(grid) == 0:
        raise ValueError("empty grid")
    regime = classify_all(cfg.devices)
    rows = []
    for delta in grid:
        ph = PhaseSettings.from_delta(delta)
        rows.append(ScanRow(float(delta), qm_correlation(ph), ms_correlation(regime, ph), regime))
    return rows

