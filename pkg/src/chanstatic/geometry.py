"""Geometric and RF value types shared across the simulator.

All lengths are meters, all velocities meters per second. Quantities that
are naturally expressed in wavelengths (step size, travel) are converted to
meters at the boundary using :class:`Carrier`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299792458.0


class DomainError(ValueError):
    """Raised for out-of-domain scalar arguments (frequencies, speeds)."""


class GeometryError(ValueError):
    """Raised when antenna/scatterer positions make a path degenerate."""


def _check_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Vec3:
    """A point or velocity in 3-D space."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_finite("Vec3 component", self.x, self.y, self.z)

    def __add__(self, other: Vec3) -> Vec3:
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Vec3) -> Vec3:
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, k: float) -> Vec3:
        return Vec3(self.x * k, self.y * k, self.z * k)

    __rmul__ = __mul__

    def __neg__(self) -> Vec3:
        return Vec3(-self.x, -self.y, -self.z)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def dot(self, other: Vec3) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def unit(self) -> Vec3:
        n = self.norm()
        if n == 0.0:
            raise GeometryError("cannot normalize a zero-length vector")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    @classmethod
    def from_iterable(cls, values) -> Vec3:
        x, y, z = values
        return cls(x, y, z)


@dataclass(frozen=True)
class ComplexGain:
    """Complex amplitude of a path or of the whole narrowband channel."""

    re: float
    im: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "im", float(self.im))
        _check_finite("ComplexGain component", self.re, self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    @property
    def phase(self) -> float:
        return math.atan2(self.im, self.re)

    @classmethod
    def from_complex(cls, z: complex) -> ComplexGain:
        return cls(z.real, z.imag)

    @classmethod
    def polar(cls, magnitude: float, phase: float) -> ComplexGain:
        return cls(magnitude * math.cos(phase), magnitude * math.sin(phase))


def wavelength(frequency_hz: float) -> float:
    """Free-space wavelength in meters for a carrier frequency in Hz."""
    f = float(frequency_hz)
    if not math.isfinite(f) or f <= 0.0:
        raise DomainError(f"frequency_hz must be positive and finite, got {frequency_hz!r}")
    return SPEED_OF_LIGHT / f


@dataclass(frozen=True)
class Carrier:
    """Carrier frequency with its derived wavelength."""

    frequency_hz: float
    wavelength_m: float = field(init=False)
    c_m_per_s: float = field(init=False, default=SPEED_OF_LIGHT)

    def __post_init__(self) -> None:
        object.__setattr__(self, "frequency_hz", float(self.frequency_hz))
        object.__setattr__(self, "wavelength_m", wavelength(self.frequency_hz))

    @property
    def wavenumber(self) -> float:
        """Phase constant 2*pi/lambda in rad/m."""
        return 2.0 * math.pi / self.wavelength_m


def distance(a: Vec3, b: Vec3) -> float:
    """Euclidean distance between two points."""
    return (b - a).norm()


def kmh_to_ms(speed_kmh: float) -> float:
    return speed_kmh / 3.6
