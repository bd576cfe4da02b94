"""Single-bounce geometric propagation in a static scatterer environment."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .geometry import Carrier, ComplexGain, GeometryError, Vec3, distance


@dataclass(frozen=True)
class Scatterer:
    """Point reflector with a single-bounce complex reflection coefficient."""

    position: Vec3
    reflectivity: ComplexGain

    def __post_init__(self) -> None:
        # small slack so polar() round-off at |r| = 1 is accepted
        if abs(self.reflectivity) > 1.0 + 1e-12:
            raise ValueError(f"|reflectivity| must be <= 1, got {abs(self.reflectivity)!r}")


@dataclass(frozen=True)
class Environment:
    """Static propagation environment: scatterers plus an optional direct path."""

    scatterers: tuple[Scatterer, ...] = ()
    los_enabled: bool = True
    reference_gain: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "scatterers", tuple(self.scatterers))
        if not (math.isfinite(self.reference_gain) and self.reference_gain > 0.0):
            raise ValueError(f"reference_gain must be positive, got {self.reference_gain!r}")

    def with_scatterer(self, scatterer: Scatterer) -> Environment:
        return Environment(self.scatterers + (scatterer,), self.los_enabled, self.reference_gain)

    def positions(self) -> np.ndarray:
        """Scatterer positions as an (M, 3) array."""
        if not self.scatterers:
            return np.zeros((0, 3))
        return np.array([tuple(s.position) for s in self.scatterers], dtype=np.float64)

    def reflectivities(self) -> np.ndarray:
        return np.array([complex(s.reflectivity) for s in self.scatterers], dtype=np.complex128)

    @property
    def path_count(self) -> int:
        return len(self.scatterers) + (1 if self.los_enabled else 0)


class PathKind(Enum):
    LOS = "los"
    BOUNCE = "bounce"


@dataclass(frozen=True)
class PropagationPath:
    total_length_m: float
    coefficient: ComplexGain
    kind: PathKind
    scatterer_index: int | None = None


def _check_geometry(env: Environment, tx: Vec3, rx: Vec3) -> None:
    if tx == rx:
        raise GeometryError(f"tx and rx coincide at {tx}")
    for i, s in enumerate(env.scatterers):
        if s.position == tx or s.position == rx:
            raise GeometryError(f"antenna coincides with scatterer {i} at {s.position}")


def enumerate_paths(env: Environment, tx: Vec3, rx: Vec3) -> list[PropagationPath]:
    """List the LOS path (if enabled) followed by one bounce path per scatterer.

    Coefficients carry spreading loss ``1/total_length``, the environment's
    reference gain and the reflectivity, but not the carrier phase.
    """
    _check_geometry(env, tx, rx)
    g = env.reference_gain
    paths = []
    if env.los_enabled:
        d = distance(tx, rx)
        paths.append(PropagationPath(d, ComplexGain(g / d, 0.0), PathKind.LOS))
    for i, s in enumerate(env.scatterers):
        d = distance(tx, s.position) + distance(s.position, rx)
        r = s.reflectivity
        paths.append(PropagationPath(d, ComplexGain(g * r.re / d, g * r.im / d), PathKind.BOUNCE, i))
    return paths


def channel_gains(env: Environment, tx_positions, rx: Vec3, carrier: Carrier, extra=None) -> np.ndarray:
    """Vectorized channel gain over many transmit positions.

    Args:
        env: static environment.
        tx_positions: (N, 3) array of transmit antenna positions.
        rx: receive antenna position.
        carrier: carrier defining the wavenumber.
        extra: optional ``(positions (N, 3), reflectivity)`` for one extra
            scatterer whose position changes per row; it is appended after the
            static scatterers.

    Returns:
        Complex (N,) array of gains.
    """
    tx = np.asarray(tx_positions, dtype=np.float64).reshape(-1, 3)
    n = tx.shape[0]
    scat = env.positions()
    refl = env.reflectivities()
    if extra is not None:
        extra_pos, extra_refl = extra
        extra_pos = np.asarray(extra_pos, dtype=np.float64).reshape(n, 1, 3)
        scat = np.concatenate([np.broadcast_to(scat, (n,) + scat.shape), extra_pos], axis=1)
        refl = np.append(refl, complex(extra_refl))
    h, bad = _kernels.channel_gains(tx, rx.as_array(), scat, refl, env.los_enabled,
                                    env.reference_gain, carrier.wavenumber)
    if bad >= 0:
        raise GeometryError(f"degenerate path (zero-length segment) at row {bad}")
    return h


def channel_gain(env: Environment, tx: Vec3, rx: Vec3, carrier: Carrier) -> ComplexGain:
    """Narrowband gain ``sum(coef * exp(-j*2*pi*L/lambda))`` over all paths."""
    _check_geometry(env, tx, rx)
    h = channel_gains(env, tx.as_array()[None, :], rx, carrier)
    return ComplexGain.from_complex(complex(h[0]))


def path_doppler(env: Environment, tx: Vec3, rx: Vec3, tx_velocity: Vec3, carrier: Carrier) -> list[float]:
    """Instantaneous Doppler shift in Hz for every path, in path order.

    The receiver and scatterers are static, so only the segment touching the
    transmitter changes length: ``f = -(1/lambda) * unit(tx - p) . v`` where
    ``p`` is the receiver (LOS) or the scatterer.
    """
    _check_geometry(env, tx, rx)
    out, bad = _kernels.path_dopplers(tx.as_array()[None, :], rx.as_array(), env.positions(),
                                      tx_velocity.as_array()[None, :], env.los_enabled,
                                      1.0 / carrier.wavelength_m)
    if bad >= 0:
        raise GeometryError("zero-length segment in Doppler evaluation")
    return [float(f) for f in out[0]]
