"""Stepped platform trajectory, compensation rail and static-time budget."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .geometry import Carrier, DomainError, Vec3


class CompensationMode(Enum):
    FIXED = "fixed"            # antenna rigid on the platform
    COMPENSATE = "compensate"  # antenna counter-moves on its rail
    STATIONARY = "stationary"  # nothing moves


@dataclass(frozen=True)
class SteppedTrajectory:
    """Platform moved in equal steps along a straight line.

    ``step_lambda`` and ``total_lambda`` are in wavelengths; ``dwell_s`` is the
    settle time before each sample. ``speed_m_per_s`` is only used for the
    in-motion Doppler between samples.
    """

    direction: Vec3 = Vec3(1.0, 0.0, 0.0)
    step_lambda: float = 0.02
    dwell_s: float = 0.2
    total_lambda: float = 6.0
    speed_m_per_s: float = 0.05

    def __post_init__(self) -> None:
        if abs(self.direction.norm() - 1.0) > 1e-12:
            raise ValueError(f"direction must be a unit vector, got norm {self.direction.norm()!r}")
        if not (self.step_lambda > 0.0 and math.isfinite(self.step_lambda)):
            raise ValueError("step_lambda must be positive")
        if not (self.total_lambda >= 0.0 and math.isfinite(self.total_lambda)):
            raise ValueError("total_lambda must be non-negative")
        if not (self.dwell_s >= 0.0 and math.isfinite(self.dwell_s)):
            raise ValueError("dwell_s must be non-negative")
        if not (self.speed_m_per_s >= 0.0 and math.isfinite(self.speed_m_per_s)):
            raise ValueError("speed_m_per_s must be non-negative")

    @property
    def last_step(self) -> int:
        # guard against 6/0.02 = 299.99999999999994
        return int(math.floor(self.total_lambda / self.step_lambda + 1e-9))

    @property
    def sample_count(self) -> int:
        return self.last_step + 1


@dataclass(frozen=True)
class Rail:
    """Antenna travel available on the platform."""

    usable_length_m: float = 1.0

    def __post_init__(self) -> None:
        if not (self.usable_length_m >= 0.0 and math.isfinite(self.usable_length_m)):
            raise ValueError("usable_length_m must be non-negative")


def _check_step(step_index: int, traj: SteppedTrajectory) -> None:
    if not 0 <= step_index <= traj.last_step:
        raise IndexError(f"step_index {step_index} outside [0, {traj.last_step}]")


def platform_displacement(step_index: int, traj: SteppedTrajectory, carrier: Carrier) -> Vec3:
    """Platform offset from its start after ``step_index`` steps, in meters."""
    _check_step(step_index, traj)
    return traj.direction * (step_index * traj.step_lambda * carrier.wavelength_m)


def antenna_position(step_index: int, traj: SteppedTrajectory, mode: CompensationMode,
                     rail: Rail, anchor: Vec3, carrier: Carrier) -> Vec3:
    """Absolute antenna position for one settled step.

    In COMPENSATE mode the antenna holds ``anchor`` until the platform has
    moved further than the rail allows; past that the rail is saturated and
    the antenna rides along with the excess displacement.
    """
    _check_step(step_index, traj)
    if mode is CompensationMode.STATIONARY:
        return anchor
    disp = platform_displacement(step_index, traj, carrier)
    if mode is CompensationMode.FIXED:
        return anchor + disp
    travel = step_index * traj.step_lambda * carrier.wavelength_m
    if travel <= rail.usable_length_m:
        return anchor
    return anchor + traj.direction * (travel - rail.usable_length_m)


def antenna_track(traj: SteppedTrajectory, mode: CompensationMode, rail: Rail,
                  anchor: Vec3, carrier: Carrier) -> tuple[np.ndarray, np.ndarray]:
    """Platform displacements and antenna positions for every step as (N, 3) arrays."""
    steps = range(traj.sample_count)
    plat = np.array([tuple(platform_displacement(i, traj, carrier)) if mode is not CompensationMode.STATIONARY
                     else (0.0, 0.0, 0.0) for i in steps])
    ant = np.array([tuple(antenna_position(i, traj, mode, rail, anchor, carrier)) for i in steps])
    return plat.reshape(-1, 3), ant.reshape(-1, 3)


def static_budget_s(usable_length_m: float, speed_m_per_s: float) -> float:
    """How long the channel can be held static: rail length over platform speed."""
    if not (math.isfinite(speed_m_per_s) and speed_m_per_s > 0.0):
        raise DomainError(f"speed must be positive, got {speed_m_per_s!r}")
    if not (math.isfinite(usable_length_m) and usable_length_m >= 0.0):
        raise DomainError(f"usable length must be non-negative, got {usable_length_m!r}")
    return usable_length_m / speed_m_per_s
