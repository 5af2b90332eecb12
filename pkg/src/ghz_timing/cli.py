"""Command-line interface.

Exit codes: 0 success, 2 config/usage error, 3 physics precondition error.
"""
from __future__ import annotations

import argparse
import io
import math
import re
import sys
from pathlib import Path

from .config import ConfigError, ConfigFile, dump_config, load_config
from .errors import PhysicsError
from .experiment import PRESET_NAMES, linear_grid, preset, scan, validate
from .montecarlo import SamplerSpec, estimate_correlation
from .multisim import ms_joint
from .quantum import OUTCOMES, qm_joint
from .spacetime import boost_time, classify_all, frame_time_offsets, min_distance

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3

_ANGLE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])?\*?(pi|π)(?:/(\d+\.?\d*))?$")


def fmt(x: float) -> str:
    """12 significant digits, locale independent, no negative zero."""
    return format(float(x) + 0.0, ".12g")


def parse_angle(text: str) -> float:
    """A float, or a multiple of pi such as ``2pi``, ``pi/2``, ``-0.5*π``."""
    s = text.strip()
    try:
        return float(s)
    except ValueError:
        pass
    m = _ANGLE.match(s.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse angle {text!r}")
    coeff, _, denom = m.groups()
    value = (float(coeff) if coeff not in (None, "+", "-") else -1.0 if coeff == "-" else 1.0) * math.pi
    return value / float(denom) if denom else value


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:steps, got {text!r}")
    return linear_grid(parse_angle(parts[0]), parse_angle(parts[1]), int(parts[2]))


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    cfg = load_config(args.config).to_experiment()
    regime = classify_all(cfg.devices)
    print(f"config: {cfg.label or args.config}")
    print("device  lab t [s]           speed [m/s]     own-frame t [s]     label")
    for d, label in zip(cfg.devices, regime):
        print(
            f"CD{d.id}1    {fmt(d.choice_event.t):<18}  {fmt(d.velocity.speed):<14}  "
            f"{fmt(boost_time(d.choice_event, d.velocity)):<18}  {label.name}"
        )
    print("T_j - T_i in device i's frame [ps]:")
    for d in cfg.devices:
        offsets = frame_time_offsets(d.id, cfg.devices)
        cells = "  ".join(f"T{j}-T{d.id}={fmt(offsets[j] * 1e12)}" for j in (1, 2, 3) if j != d.id)
        print(f"  frame CD{d.id}1: {cells}")
    print(f"regime: {', '.join(regime.names)}")
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = load_config(args.config).to_experiment()
    report = validate(cfg)
    print("\n".join(report.lines()))
    return EXIT_OK


def cmd_predict(args) -> int:
    cfg = load_config(args.config).to_experiment()
    regime = classify_all(cfg.devices)
    qm = qm_joint(cfg.phases)
    ms = ms_joint(regime, cfg.phases)
    buf = io.StringIO()
    buf.write(f"# regime {regime}  delta {fmt(cfg.phases.delta)}\n")
    buf.write("rho,sigma,omega,p_qm,p_ms\n")
    for o in OUTCOMES:
        buf.write(f"{o[0]},{o[1]},{o[2]},{fmt(qm[o])},{fmt(ms[o])}\n")
    buf.write(f"# E_qm {fmt(qm.correlation())}  E_ms {fmt(ms.correlation())}\n")
    _write(buf.getvalue(), None)
    return EXIT_OK


def cmd_scan(args) -> int:
    file_cfg = load_config(args.config)
    cfg = file_cfg.to_experiment()
    if args.grid:
        grid = parse_grid(args.grid)
    else:
        s = file_cfg.scan
        grid = linear_grid(s.start, s.stop, s.steps)
    buf = io.StringIO()
    buf.write("delta,e_qm,e_ms,regime\n")
    for row in scan(cfg, grid):
        buf.write(f"{fmt(row.delta)},{fmt(row.e_qm)},{fmt(row.e_ms)},{row.regime}\n")
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    file_cfg = load_config(args.config)
    cfg = file_cfg.to_experiment()
    theory = args.theory or file_cfg.sampler.theory
    n = args.n if args.n is not None else file_cfg.sampler.n
    seed = args.seed if args.seed is not None else file_cfg.sampler.seed
    if n < 1:
        raise ConfigError("--n must be at least 1")
    if not 0 <= seed < 2**64:
        raise ConfigError("--seed must be a 64-bit unsigned integer")
    regime = classify_all(cfg.devices)
    spec = SamplerSpec(theory, cfg.phases, n, seed, regime if theory == "ms" else None)
    result = estimate_correlation(spec)
    expected = (qm_joint(cfg.phases) if theory == "qm" else ms_joint(regime, cfg.phases))

    print(f"theory {theory}  regime {regime if theory == 'ms' else '-'}  n {n}  seed {seed}")
    print("rho sigma omega   count       expected")
    for o in OUTCOMES:
        print(f"{o[0]:+d}  {o[1]:+d}    {o[2]:+d}     {result.counts[o]:<10d}  {fmt(expected[o] * n)}")
    print(f"E_hat = {fmt(result.e_hat)} +/- {fmt(result.stderr)}")
    if args.out:
        buf = io.StringIO()
        buf.write("rho,sigma,omega,count\n")
        for o in OUTCOMES:
            buf.write(f"{o[0]},{o[1]},{o[2]},{result.counts[o]}\n")
        _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_feasibility(args) -> int:
    for name in ("delta_t", "velocity", "distance"):
        value = getattr(args, name)
        if value is not None and not value > 0:
            raise ConfigError(f"--{name.replace('_', '-')} must be positive")
    d_min = min_distance(args.delta_t, args.velocity)
    print(f"D_min = c^2 * dt / V = {fmt(d_min)} m")
    if args.distance is None:
        return EXIT_OK
    ok = args.distance > d_min
    print(f"D = {fmt(args.distance)} m -> {'PASS' if ok else 'FAIL'}")
    return EXIT_OK


def cmd_preset(args) -> int:
    cfg = preset(args.name, delta_t=args.delta_t)
    _write(dump_config(ConfigFile.from_experiment(cfg)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghz-timing",
        description="QM vs Multisimultaneity predictions for 3-photon moving beam-splitter experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="boosted choice times and timing labels")
    p.add_argument("config")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("validate", help="feasibility and intended-regime checks")
    p.add_argument("config")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("predict", help="joint distributions under both theories")
    p.add_argument("config")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("scan", help="correlations over a phase grid, as CSV")
    p.add_argument("config")
    p.add_argument("--grid", help="start:stop:steps, inclusive; angles may use pi, e.g. 0:2pi:13")
    p.add_argument("--out", help="CSV file (default stdout)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sample", help="Monte Carlo outcome counts")
    p.add_argument("config")
    p.add_argument("--theory", choices=("qm", "ms"))
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="counts CSV file")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("feasibility", help="minimum device separation D > c^2 dt / V")
    p.add_argument("--delta-t", type=float, required=True, help="seconds")
    p.add_argument("--velocity", type=float, required=True, help="m/s")
    p.add_argument("--distance", type=float, help="meters")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("preset", help="write one of the proposed configurations as JSON")
    p.add_argument("name", choices=PRESET_NAMES)
    p.add_argument("--delta-t", type=float, default=2e-12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PhysicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
