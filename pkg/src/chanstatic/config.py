"""Plain-text scenario configuration.

INI-style sections with ``key = value`` lines; vectors are comma-separated.
Every key is optional and falls back to the default listed in ``SCHEMA``::

    [carrier]
    frequency_hz = 2450000000.0

    [link]
    tx_anchor = 0.0, 0.0, 1.0
    rx_position = 2.0, 0.0, 1.0

    [trajectory]
    direction = 1.0, 0.0, 0.0
    step_lambda = 0.02
    total_lambda = 6.0
    dwell_s = 0.2
    speed_m_per_s = 0.05

    [rail]
    usable_length_m = 1.0

    [mode]
    mode = compensate            ; fixed | compensate | stationary

    [environment]
    kind = anechoic              ; anechoic | office | explicit
    seed = 0
    residual_count = 0           ; anechoic
    residual_db = -30.0          ; anechoic
    scatterer_count = 30         ; office
    room_extent_m = 18.0, 14.0, 4.0
    los_enabled = true
    reference_gain = 1.0
    scatterer.0 = x, y, z, re, im    ; explicit, indices 0..M-1

    [parasitic]                  ; omit the section for no parasitic
    enabled = true
    offset = 0.0, 0.0, -0.15
    reflectivity = 0.1, 0.0      ; re, im
"""
from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, replace
from pathlib import Path

from .geometry import Carrier, ComplexGain, Vec3
from .motion import CompensationMode, Rail, SteppedTrajectory
from .propagation import Environment, Scatterer
from .scenario import (DEFAULT_ROOM_EXTENT_M, Parasitic, Scenario, make_anechoic, make_office)

ENV_KINDS = ("anechoic", "office", "explicit")
_SCATTERER_KEY = re.compile(r"^scatterer\.(\d+)$")


class ConfigError(ValueError):
    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class ScenarioConfig:
    frequency_hz: float = 2.45e9
    tx_anchor: tuple = (0.0, 0.0, 1.0)
    rx_position: tuple = (2.0, 0.0, 1.0)
    direction: tuple = (1.0, 0.0, 0.0)
    step_lambda: float = 0.02
    total_lambda: float = 6.0
    dwell_s: float = 0.2
    speed_m_per_s: float = 0.05
    usable_length_m: float = 1.0
    mode: str = "compensate"
    env_kind: str = "anechoic"
    seed: int = 0
    residual_count: int = 0
    residual_db: float = -30.0
    scatterer_count: int = 30
    room_extent_m: tuple = DEFAULT_ROOM_EXTENT_M
    los_enabled: bool = True
    reference_gain: float = 1.0
    scatterers: tuple = ()  # explicit (x, y, z, re, im) rows
    parasitic_enabled: bool = False
    parasitic_offset: tuple = (0.0, 0.0, -0.15)
    parasitic_reflectivity: tuple = (0.1, 0.0)

    def environment(self) -> Environment:
        if self.env_kind == "anechoic":
            env = make_anechoic(self.seed, self.residual_count, self.residual_db,
                                center=(Vec3(*self.tx_anchor) + Vec3(*self.rx_position)) * 0.5)
        elif self.env_kind == "office":
            env = make_office(self.seed, self.scatterer_count, self.room_extent_m,
                              center=(Vec3(*self.tx_anchor) + Vec3(*self.rx_position)) * 0.5)
        else:
            env = Environment(tuple(Scatterer(Vec3(x, y, z), ComplexGain(re, im))
                                    for x, y, z, re, im in self.scatterers))
        return Environment(env.scatterers, self.los_enabled, self.reference_gain)

    def scenario(self) -> Scenario:
        parasitic = None
        if self.parasitic_enabled:
            parasitic = Parasitic(Vec3(*self.parasitic_offset), ComplexGain(*self.parasitic_reflectivity))
        return Scenario(
            environment=self.environment(),
            carrier=Carrier(self.frequency_hz),
            trajectory=SteppedTrajectory(Vec3(*self.direction), self.step_lambda, self.dwell_s,
                                         self.total_lambda, self.speed_m_per_s),
            rail=Rail(self.usable_length_m),
            mode=CompensationMode(self.mode),
            tx_anchor=Vec3(*self.tx_anchor),
            rx_position=Vec3(*self.rx_position),
            parasitic=parasitic,
        )

    def echo(self) -> dict:
        """Section/key/value strings that :func:`parse_mapping` turns back into this config."""
        out: dict[str, dict[str, str]] = {}
        for section, key, attr, _, fmt, _ in SCHEMA:
            out.setdefault(section, {})[key] = fmt(getattr(self, attr))
        for i, row in enumerate(self.scatterers):
            out["environment"][f"scatterer.{i}"] = _fmt_vec(row)
        if not self.parasitic_enabled:
            del out["parasitic"]
        return out

    def to_text(self) -> str:
        return mapping_to_text(self.echo())


def mapping_to_text(mapping: dict) -> str:
    lines = []
    for section, values in mapping.items():
        lines.append(f"[{section}]")
        lines.extend(f"{k} = {v}" for k, v in values.items())
        lines.append("")
    return "\n".join(lines)


# -- value parsers -----------------------------------------------------------

def _float(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise ValueError("must be finite")
    return v


def _vec(n: int):
    def parse(text: str) -> tuple:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != n:
            raise ValueError(f"expected {n} comma-separated numbers")
        return tuple(_float(p) for p in parts)
    return parse


def _int(text: str) -> int:
    return int(text.strip())


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in {"true", "yes", "on", "1"}:
        return True
    if t in {"false", "no", "off", "0"}:
        return False
    raise ValueError("expected true or false")


def _choice(options):
    def parse(text: str) -> str:
        t = text.strip().lower()
        if t not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return t
    return parse


def _fmt_float(v: float) -> str:
    return repr(float(v))


def _fmt_vec(v) -> str:
    return ", ".join(repr(float(x)) for x in v)


def _positive(v):
    return v > 0


def _non_negative(v):
    return v >= 0


def _unit(v):
    return abs(math.sqrt(sum(x * x for x in v)) - 1.0) <= 1e-12


def _any(v):
    return True


# (section, key, attribute, parser, formatter, (predicate, message))
SCHEMA = [
    ("carrier", "frequency_hz", "frequency_hz", _float, _fmt_float, (_positive, "must be > 0")),
    ("link", "tx_anchor", "tx_anchor", _vec(3), _fmt_vec, (_any, "")),
    ("link", "rx_position", "rx_position", _vec(3), _fmt_vec, (_any, "")),
    ("trajectory", "direction", "direction", _vec(3), _fmt_vec, (_unit, "must have unit norm")),
    ("trajectory", "step_lambda", "step_lambda", _float, _fmt_float, (_positive, "must be > 0")),
    ("trajectory", "total_lambda", "total_lambda", _float, _fmt_float, (_non_negative, "must be >= 0")),
    ("trajectory", "dwell_s", "dwell_s", _float, _fmt_float, (_non_negative, "must be >= 0")),
    ("trajectory", "speed_m_per_s", "speed_m_per_s", _float, _fmt_float, (_non_negative, "must be >= 0")),
    ("rail", "usable_length_m", "usable_length_m", _float, _fmt_float, (_non_negative, "must be >= 0")),
    ("mode", "mode", "mode", _choice([m.value for m in CompensationMode]), str, (_any, "")),
    ("environment", "kind", "env_kind", _choice(ENV_KINDS), str, (_any, "")),
    ("environment", "seed", "seed", _int, str, (_non_negative, "must be >= 0")),
    ("environment", "residual_count", "residual_count", _int, str, (_non_negative, "must be >= 0")),
    ("environment", "residual_db", "residual_db", _float, _fmt_float, (lambda v: v <= 0, "must be <= 0")),
    ("environment", "scatterer_count", "scatterer_count", _int, str, (lambda v: v >= 1, "must be >= 1")),
    ("environment", "room_extent_m", "room_extent_m", _vec(3), _fmt_vec,
     (lambda v: all(x > 0 for x in v), "all extents must be > 0")),
    ("environment", "los_enabled", "los_enabled", _bool, lambda v: "true" if v else "false", (_any, "")),
    ("environment", "reference_gain", "reference_gain", _float, _fmt_float, (_positive, "must be > 0")),
    ("parasitic", "enabled", "parasitic_enabled", _bool, lambda v: "true" if v else "false", (_any, "")),
    ("parasitic", "offset", "parasitic_offset", _vec(3), _fmt_vec, (_any, "")),
    ("parasitic", "reflectivity", "parasitic_reflectivity", _vec(2), _fmt_vec,
     (lambda v: math.hypot(*v) <= 1.0, "magnitude must be <= 1")),
]
_BY_KEY = {(s, k): (attr, parse, check) for s, k, attr, parse, _, check in SCHEMA}
SECTIONS = tuple(dict.fromkeys(s for s, *_ in SCHEMA))


def _line_index(text: str) -> dict:
    """Map (section, key) to the 1-based line on which the key appears."""
    index = {}
    section = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
        elif section and line and line[0] not in "#;":
            key = re.split(r"[=:]", line, maxsplit=1)[0].strip().lower()
            index.setdefault((section, key), n)
    return index


def parse_mapping(mapping: dict, lines: dict | None = None) -> ScenarioConfig:
    """Build a config from ``{section: {key: text}}``; unknown keys are rejected."""
    lines = lines or {}
    values: dict = {}
    scatterers: dict[int, tuple] = {}
    parasitic_seen = False
    for section, entries in mapping.items():
        if section not in SECTIONS:
            raise ConfigError(f"unknown section [{section}]")
        if section == "parasitic":
            parasitic_seen = True
        for key, text in entries.items():
            where = lines.get((section, key))
            m = _SCATTERER_KEY.match(key)
            if section == "environment" and m:
                try:
                    scatterers[int(m.group(1))] = _vec(5)(text)
                except ValueError as exc:
                    raise ConfigError(str(exc), key, where) from None
                if math.hypot(scatterers[int(m.group(1))][3], scatterers[int(m.group(1))][4]) > 1.0:
                    raise ConfigError("reflectivity magnitude must be <= 1", key, where)
                continue
            if (section, key) not in _BY_KEY:
                raise ConfigError(f"unknown key in [{section}]", key, where)
            attr, parse, (check, message) = _BY_KEY[(section, key)]
            try:
                v = parse(text)
            except ValueError as exc:
                raise ConfigError(f"invalid value {text.strip()!r}: {exc}", key, where) from None
            if not check(v):
                raise ConfigError(f"{text.strip()!r} {message}", key, where)
            values[attr] = v
    if scatterers:
        if sorted(scatterers) != list(range(len(scatterers))):
            raise ConfigError("scatterer.N indices must run 0..M-1 without gaps", "scatterer")
        values["scatterers"] = tuple(scatterers[i] for i in range(len(scatterers)))
    if parasitic_seen:
        values.setdefault("parasitic_enabled", True)
    cfg = ScenarioConfig(**values)
    if cfg.tx_anchor == cfg.rx_position:
        raise ConfigError("rx_position must differ from tx_anchor", "rx_position", lines.get(("link", "rx_position")))
    if cfg.scatterers and cfg.env_kind != "explicit":
        raise ConfigError("scatterer.N entries require kind = explicit", "kind", lines.get(("environment", "kind")))
    return cfg


def parse_text(text: str) -> ScenarioConfig:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"),
                                       default_section="__none__")
    try:
        parser.read_string(text)
    except configparser.DuplicateOptionError as exc:
        raise ConfigError("duplicate key", exc.option, exc.lineno) from None
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], None, getattr(exc, "lineno", None)) from None
    mapping = {s: dict(parser.items(s)) for s in parser.sections()}
    return parse_mapping(mapping, _line_index(text))


def load(path) -> ScenarioConfig:
    return parse_text(Path(path).read_text())


def with_seed(cfg: ScenarioConfig, seed: int) -> ScenarioConfig:
    return replace(cfg, seed=seed)
