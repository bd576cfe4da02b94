"""Figures of merit for channel traces."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels
from .scenario import ChannelTrace

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TraceSummary:
    amplitude_span_db: float
    phase_excursion_deg: float
    sample_count: int
    max_abs_doppler_hz: float
    zero_magnitude: bool = False  # a sample hit |h| == 0; span is then inf

    def to_dict(self) -> dict:
        d = asdict(self)
        if math.isinf(d["amplitude_span_db"]):
            d["amplitude_span_db"] = None
        return d


def _gains(trace) -> np.ndarray:
    return np.asarray(trace.h if isinstance(trace, ChannelTrace) else trace, dtype=np.complex128)


def amplitude_span_db(trace) -> float:
    """Min-to-max spread of ``20*log10|h|``; ``inf`` if any sample is exactly zero."""
    mag = np.abs(_gains(trace))
    lo = mag.min()
    if lo == 0.0:
        return math.inf
    return float(20.0 * math.log10(mag.max() / lo))


def wrap_to_pi(x):
    """Map angles into (-pi, pi]."""
    return math.pi - np.mod(math.pi - np.asarray(x, dtype=np.float64), TWO_PI)


def unwrap_angles(phase) -> np.ndarray:
    """Unwrap a sequence of angles so each step lies in (-pi, pi]."""
    p = np.asarray(phase, dtype=np.float64)
    if p.size == 0:
        raise ValueError("cannot unwrap an empty sequence")
    steps = wrap_to_pi(np.diff(p))
    out = np.empty_like(p)
    out[0] = p[0]
    out[1:] = p[0] + np.cumsum(steps)
    return out


def unwrap_phase(trace) -> np.ndarray:
    """Continuous channel phase in radians, starting at the principal value."""
    return unwrap_angles(np.angle(_gains(trace)))


def phase_excursion_deg(trace) -> float:
    u = unwrap_phase(trace)
    return float(math.degrees(u.max() - u.min()))


def antenna_velocities(trace: ChannelTrace) -> np.ndarray:
    """Absolute antenna velocity during each movement interval, shape (N-1, 3).

    The platform covers one step at ``speed_m_per_s``; the antenna's velocity
    is that speed scaled by how far the antenna itself moved in the interval.
    """
    traj = trace.trajectory
    step_m = traj.step_lambda * trace.carrier.wavelength_m
    moved = np.diff(trace.tx_positions, axis=0)
    return moved * (traj.speed_m_per_s / step_m)


def los_doppler(trace: ChannelTrace) -> np.ndarray:
    """LOS Doppler (Hz) for each movement interval, evaluated at the interval start."""
    if len(trace) < 2:
        return np.zeros(0)
    vel = antenna_velocities(trace)
    start = trace.tx_positions[:-1]
    out, bad = _kernels.path_dopplers(start, trace.rx_position.as_array(), np.zeros((0, 3)), vel,
                                      True, 1.0 / trace.carrier.wavelength_m)
    if bad >= 0:
        raise ValueError(f"antenna on the receiver during interval {bad}")
    return out[:, 0]


def summarize(trace: ChannelTrace) -> TraceSummary:
    span = amplitude_span_db(trace)
    dop = los_doppler(trace)
    return TraceSummary(
        amplitude_span_db=span,
        phase_excursion_deg=phase_excursion_deg(trace),
        sample_count=len(trace),
        max_abs_doppler_hz=float(np.abs(dop).max()) if dop.size else 0.0,
        zero_magnitude=math.isinf(span),
    )
