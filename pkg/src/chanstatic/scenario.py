"""Scenario composition, the three-mode measurement protocol and seeded environments."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import Carrier, ComplexGain, GeometryError, Vec3
from .motion import CompensationMode, Rail, SteppedTrajectory, antenna_track
from .propagation import Environment, Scatterer, channel_gains
from .rng import XorShift64Star

DEFAULT_FREQUENCY_HZ = 2.45e9
DEFAULT_TX_ANCHOR = Vec3(0.0, 0.0, 1.0)
DEFAULT_RX_POSITION = Vec3(2.0, 0.0, 1.0)
DEFAULT_ROOM_EXTENT_M = (18.0, 14.0, 4.0)
ANECHOIC_BOX_M = 5.0


@dataclass(frozen=True)
class Parasitic:
    """Reflector rigidly attached to the moving platform.

    ``offset`` is relative to the antenna anchor shifted by the platform
    displacement, so it follows the platform regardless of what the antenna
    does on its rail.
    """

    offset: Vec3 = Vec3(0.0, 0.0, -0.15)
    reflectivity: ComplexGain = ComplexGain(0.1, 0.0)

    def __post_init__(self) -> None:
        if abs(self.reflectivity) > 1.0 + 1e-12:
            raise ValueError("parasitic |reflectivity| must be <= 1")


@dataclass(frozen=True)
class Scenario:
    environment: Environment = field(default_factory=Environment)
    carrier: Carrier = field(default_factory=lambda: Carrier(DEFAULT_FREQUENCY_HZ))
    trajectory: SteppedTrajectory = field(default_factory=SteppedTrajectory)
    rail: Rail = field(default_factory=Rail)
    mode: CompensationMode = CompensationMode.COMPENSATE
    tx_anchor: Vec3 = DEFAULT_TX_ANCHOR
    rx_position: Vec3 = DEFAULT_RX_POSITION
    parasitic: Parasitic | None = None

    def __post_init__(self) -> None:
        if self.tx_anchor == self.rx_position:
            raise GeometryError("rx_position must differ from tx_anchor")


@dataclass(frozen=True)
class ChannelTrace:
    """Settled channel samples of one scenario run, stored column-wise."""

    steps: np.ndarray
    time_s: np.ndarray
    tx_positions: np.ndarray
    h: np.ndarray
    mode: CompensationMode
    carrier: Carrier
    trajectory: SteppedTrajectory
    rx_position: Vec3

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def travel_lambda(self) -> np.ndarray:
        """Platform travel in wavelengths at each sample (zero when stationary)."""
        if self.mode is CompensationMode.STATIONARY:
            return np.zeros(len(self.steps))
        return self.steps * self.trajectory.step_lambda

    def samples(self) -> list[tuple[int, float, Vec3, ComplexGain]]:
        return [(int(s), float(t), Vec3.from_iterable(p), ComplexGain.from_complex(complex(v)))
                for s, t, p, v in zip(self.steps, self.time_s, self.tx_positions, self.h)]


def run_scenario(s: Scenario) -> ChannelTrace:
    """Sample the channel at every settled platform position."""
    traj = s.trajectory
    plat, ant = antenna_track(traj, s.mode, s.rail, s.tx_anchor, s.carrier)
    extra = None
    if s.parasitic is not None:
        extra = (s.tx_anchor.as_array()[None, :] + plat + s.parasitic.offset.as_array()[None, :],
                 complex(s.parasitic.reflectivity))
    try:
        h = channel_gains(s.environment, ant, s.rx_position, s.carrier, extra=extra)
    except GeometryError as exc:
        raise GeometryError(f"{exc} (step index = row index, mode {s.mode.value})") from exc
    steps = np.arange(traj.sample_count, dtype=np.int64)
    return ChannelTrace(
        steps=steps,
        time_s=steps * traj.dwell_s,
        tx_positions=ant,
        h=h,
        mode=s.mode,
        carrier=s.carrier,
        trajectory=traj,
        rx_position=s.rx_position,
    )


def run_triplet(base: Scenario) -> tuple[ChannelTrace, ChannelTrace, ChannelTrace]:
    """Run ``base`` as fixed, compensated and stationary, in that order."""
    return tuple(run_scenario(replace(base, mode=m)) for m in
                 (CompensationMode.FIXED, CompensationMode.COMPENSATE, CompensationMode.STATIONARY))


def _link_center(tx: Vec3, rx: Vec3) -> Vec3:
    return (tx + rx) * 0.5


def make_anechoic(seed: int, residual_count: int = 0, residual_db: float = -30.0,
                  center: Vec3 | None = None, box_m: float = ANECHOIC_BOX_M) -> Environment:
    """LOS link plus weak residual reflections.

    Each residual scatterer draws, in order, x, y, z uniformly in a cube of
    side ``box_m`` centred on ``center`` (default: midpoint of the default
    link), then a phase uniform in [-pi, pi). Magnitudes are all
    ``10**(residual_db/20)``.
    """
    if residual_count < 0:
        raise ValueError("residual_count must be >= 0")
    if residual_db > 0:
        raise ValueError("residual_db must be <= 0")
    c = center if center is not None else _link_center(DEFAULT_TX_ANCHOR, DEFAULT_RX_POSITION)
    half = box_m / 2.0
    mag = 10.0 ** (residual_db / 20.0)
    rng = XorShift64Star(seed)
    scat = []
    for _ in range(residual_count):
        pos = Vec3(rng.uniform(c.x - half, c.x + half),
                   rng.uniform(c.y - half, c.y + half),
                   rng.uniform(c.z - half, c.z + half))
        phase = rng.uniform(-math.pi, math.pi)
        scat.append(Scatterer(pos, ComplexGain.polar(mag, phase)))
    return Environment(tuple(scat), los_enabled=True)


def make_office(seed: int, scatterer_count: int = 30,
                room_extent_m: tuple[float, float, float] = DEFAULT_ROOM_EXTENT_M,
                center: Vec3 | None = None) -> Environment:
    """LOS link inside a room full of random reflectors.

    The room spans ``room_extent_m`` = (Lx, Ly, Lz), centred horizontally on
    ``center`` (default: midpoint of the default link) with the floor at
    z = 0. Per scatterer the draws are x, y, z, |reflectivity| in [0.2, 0.9],
    phase in [-pi, pi).
    """
    if scatterer_count < 1:
        raise ValueError("scatterer_count must be >= 1")
    lx, ly, lz = room_extent_m
    c = center if center is not None else _link_center(DEFAULT_TX_ANCHOR, DEFAULT_RX_POSITION)
    rng = XorShift64Star(seed)
    scat = []
    for _ in range(scatterer_count):
        pos = Vec3(rng.uniform(c.x - lx / 2, c.x + lx / 2),
                   rng.uniform(c.y - ly / 2, c.y + ly / 2),
                   rng.uniform(0.0, lz))
        mag = rng.uniform(0.2, 0.9)
        phase = rng.uniform(-math.pi, math.pi)
        scat.append(Scatterer(pos, ComplexGain.polar(mag, phase)))
    return Environment(tuple(scat), los_enabled=True)
