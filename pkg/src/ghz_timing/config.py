"""JSON configuration files.

Units: seconds, meters, m/s, radians.  Device ids follow list order.
Unknown keys are rejected so a misspelt unit suffix cannot be ignored.

Example::

    {
      "label": "bbb",
      "intent": "b/b/b",
      "devices": [
        {"position_m": [-55, 0, 0], "velocity_mps": [-2500, 0, 0], "choice_time_s": 0.0},
        {"position_m": [55, 0, 0], "velocity_mps": [2500, 0, 0], "choice_time_s": 0.0},
        {"position_m": [0, 40, 0], "velocity_mps": [0, 0, 0], "choice_time_s": -1e-12}
      ],
      "phases": {"alpha": 0.0, "beta": 0.0, "gamma": 0.0, "phi1": 0.0, "phi2": 0.0},
      "delta_t_s": 2e-12,
      "sampler": {"theory": "qm", "n": 100000, "seed": 0},
      "scan": {"start": 0.0, "stop": 6.283185307179586, "steps": 13}
    }
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .experiment import ExperimentConfig
from .quantum import PhaseSettings
from .spacetime import ChoiceDevice, Event, TimingRegime, Velocity


class ConfigError(ValueError):
    """The config file is unreadable or does not match the schema."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


Vec3 = tuple[float, float, float]


class DeviceModel(_Strict):
    position_m: Vec3
    velocity_mps: Vec3 = (0.0, 0.0, 0.0)
    choice_time_s: float


class PhasesModel(_Strict):
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0


class SamplerModel(_Strict):
    theory: Literal["qm", "ms"] = "qm"
    n: int = Field(100_000, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)


class ScanModel(_Strict):
    start: float = 0.0
    stop: float = 6.283185307179586
    steps: int = Field(13, ge=1)


class ConfigFile(_Strict):
    label: str = ""
    intent: Optional[str] = None
    devices: list[DeviceModel] = Field(min_length=3, max_length=3)
    phases: PhasesModel = PhasesModel()
    delta_t_s: float = Field(2e-12, gt=0)
    sampler: SamplerModel = SamplerModel()
    scan: ScanModel = ScanModel()

    @field_validator("intent")
    @classmethod
    def _regime(cls, v):
        if v is not None:
            TimingRegime.parse(v)
        return v

    def to_experiment(self) -> ExperimentConfig:
        """Build the domain config; raises PhysicsError for |v| >= c."""
        devices = tuple(
            ChoiceDevice(i, Event(d.choice_time_s, *d.position_m), Velocity(*d.velocity_mps))
            for i, d in enumerate(self.devices, start=1)
        )
        try:
            return ExperimentConfig(
                devices=devices,
                phases=PhaseSettings(**self.phases.model_dump()),
                delta_t=self.delta_t_s,
                label=self.label,
                intent=TimingRegime.parse(self.intent) if self.intent else None,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_experiment(cls, cfg: ExperimentConfig, **extra) -> "ConfigFile":
        return cls(
            label=cfg.label,
            intent=str(cfg.intent) if cfg.intent else None,
            devices=[
                DeviceModel(
                    position_m=d.choice_event.position,
                    velocity_mps=d.velocity.components,
                    choice_time_s=d.choice_event.t,
                )
                for d in cfg.devices
            ],
            phases=PhasesModel(
                alpha=cfg.phases.alpha,
                beta=cfg.phases.beta,
                gamma=cfg.phases.gamma,
                phi1=cfg.phases.phi1,
                phi2=cfg.phases.phi2,
            ),
            delta_t_s=cfg.delta_t,
            **extra,
        )


def load_config(path: str | Path) -> ConfigFile:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        return ConfigFile.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"invalid config {path}:\n{exc}") from exc


def dump_config(cfg: ConfigFile) -> str:
    return json.dumps(cfg.model_dump(mode="json"), indent=2) + "\n"
