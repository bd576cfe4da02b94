"""Command-line entry point: ``chanstatic {run,triplet,budget,gen-env}``."""
from __future__ import annotations

import argparse
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

from . import serialize
from .config import ConfigError, ScenarioConfig, load, mapping_to_text
from .geometry import DomainError, GeometryError, kmh_to_ms
from .metrics import summarize
from .motion import CompensationMode, static_budget_s
from .scenario import run_scenario

log = logging.getLogger("chanstatic")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

TRIPLET_FILES = {
    CompensationMode.FIXED: ("fixed", "fixed.csv"),
    CompensationMode.COMPENSATE: ("compensated", "compensated.csv"),
    CompensationMode.STATIONARY: ("stationary", "stationary.csv"),
}

PHONE_NOTE = ("note: this 1 cm / 20 km/h case is often quoted as 1.6 ms; "
              "length / speed gives the value above")


def _load_config(args) -> ScenarioConfig:
    cfg = load(args.config) if args.config else ScenarioConfig()
    if args.seed_override is not None:
        cfg = replace(cfg, seed=args.seed_override)
    return cfg


def cmd_run(args) -> int:
    cfg = _load_config(args)
    trace = run_scenario(cfg.scenario())
    out = Path(args.out)
    serialize.write_trace_csv(trace, out)
    doc = serialize.summary_document(summarize(trace), trace.mode.value, cfg.echo())
    serialize.write_json(doc, out.with_suffix(".json"))
    log.info("wrote %s (%d samples) and %s", out, len(trace), out.with_suffix(".json"))
    return EXIT_OK


def cmd_triplet(args) -> int:
    cfg = _load_config(args)
    base = cfg.scenario()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    modes = list(TRIPLET_FILES)
    with ThreadPoolExecutor(max_workers=3) as pool:
        traces = list(pool.map(lambda m: run_scenario(replace(base, mode=m)), modes))
    summaries = {}
    for mode, trace in zip(modes, traces):
        name, filename = TRIPLET_FILES[mode]
        serialize.write_trace_csv(trace, out / filename)
        summaries[name] = summarize(trace)
    serialize.write_json(serialize.comparison_document(summaries, cfg.echo()), out / "comparison.json")
    log.info("wrote triplet to %s", out)
    return EXIT_OK


def budget_report(length_m: float, speed: float, unit: str) -> str:
    if unit not in ("m/s", "km/h"):
        raise DomainError(f"unknown speed unit {unit!r}")
    speed_ms = kmh_to_ms(speed) if unit == "km/h" else speed
    budget_ms = static_budget_s(length_m, speed_ms) * 1e3
    lines = [
        f"usable length: {length_m:g} m",
        f"speed: {speed_ms:.4f} m/s",
        f"static budget: {budget_ms:.1f} ms",
    ]
    if unit == "km/h" and math.isclose(length_m, 0.01) and math.isclose(speed, 20.0):
        lines.append(PHONE_NOTE)
    return "\n".join(lines)


def cmd_budget(args) -> int:
    print(budget_report(args.length_m, args.speed, args.unit))
    return EXIT_OK


def cmd_gen_env(args) -> int:
    cfg = _load_config(args)
    env = cfg.environment()
    entries = {
        "kind": "explicit",
        "los_enabled": "true" if env.los_enabled else "false",
        "reference_gain": repr(env.reference_gain),
    }
    for i, s in enumerate(env.scatterers):
        p, r = s.position, s.reflectivity
        entries[f"scatterer.{i}"] = ", ".join(repr(v) for v in (p.x, p.y, p.z, r.re, r.im))
    text = mapping_to_text({"environment": entries})
    if args.out:
        serialize._atomic_write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chanstatic",
                                     description="Channel-static antenna multipath simulator.")
    parser.add_argument("--format-version", type=int, default=serialize.FORMAT_VERSION,
                        help="output format version (only 1 is supported)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_args(p, out_help):
        p.add_argument("--config", help="scenario config file (defaults used if omitted)")
        p.add_argument("--out", required=True, help=out_help)
        p.add_argument("--seed-override", type=int, help="replace the environment seed")

    p = sub.add_parser("run", help="run one scenario; writes trace CSV and summary JSON")
    scenario_args(p, "trace CSV path; the summary goes next to it with a .json suffix")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("triplet", help="run fixed / compensated / stationary")
    scenario_args(p, "output directory")
    p.set_defaults(func=cmd_triplet)

    p = sub.add_parser("budget", help="time a channel can be held static")
    p.add_argument("length_m", type=float, help="usable rail length in meters")
    p.add_argument("speed", type=float, help="platform speed")
    p.add_argument("--unit", choices=("m/s", "km/h"), default="m/s")
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("gen-env", help="write a generated environment as an explicit config fragment")
    p.add_argument("--config")
    p.add_argument("--out", help="fragment path (stdout if omitted)")
    p.add_argument("--seed-override", type=int)
    p.set_defaults(func=cmd_gen_env)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.format_version != serialize.FORMAT_VERSION:
        parser.error(f"unsupported --format-version {args.format_version}")
    if args.command == "budget":
        if not (math.isfinite(args.speed) and args.speed > 0):
            parser.error("speed must be positive")
        if not (math.isfinite(args.length_m) and args.length_m >= 0):
            parser.error("length must be non-negative")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (GeometryError, DomainError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
