"""Hot loops: phasor summation over (antenna position, path) pairs.

Each kernel has a numba ``@njit`` build and a pure-numpy twin with the same
summation order (LOS first, then scatterers in list order). Set
``CHANSTATIC_DISABLE_NUMBA=1`` to force the numpy path, or when numba is not
importable the numpy path is used automatically.
"""
from __future__ import annotations

import math
import os

import numpy as np

_DISABLE = os.environ.get("CHANSTATIC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLE:
        raise ImportError("numba disabled by CHANSTATIC_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _seg(ax, ay, az, bx, by, bz):
    dx = ax - bx
    dy = ay - by
    dz = az - bz
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def _gains_loop(tx, rx, scat, refl, los, ref_gain, k):
    n = tx.shape[0]
    m = scat.shape[1]
    out = np.zeros(n, dtype=np.complex128)
    bad = -1
    for i in range(n):
        tx0 = tx[i, 0]
        tx1 = tx[i, 1]
        tx2 = tx[i, 2]
        acc = 0.0 + 0.0j
        if los:
            d = _seg(tx0, tx1, tx2, rx[0], rx[1], rx[2])
            if d == 0.0:
                if bad < 0:
                    bad = i
                continue
            ph = k * d
            acc += (ref_gain / d) * complex(math.cos(ph), -math.sin(ph))
        for j in range(m):
            s0 = scat[i, j, 0]
            s1 = scat[i, j, 1]
            s2 = scat[i, j, 2]
            d1 = _seg(tx0, tx1, tx2, s0, s1, s2)
            d2 = _seg(s0, s1, s2, rx[0], rx[1], rx[2])
            if d1 == 0.0 or d2 == 0.0:
                if bad < 0:
                    bad = i
                break
            d = d1 + d2
            ph = k * d
            coef = complex(ref_gain * refl[j].real / d, ref_gain * refl[j].imag / d)
            acc += coef * complex(math.cos(ph), -math.sin(ph))
        out[i] = acc
    return out, bad


def _gains_numpy(tx, rx, scat, refl, los, ref_gain, k):
    n = tx.shape[0]
    m = scat.shape[1]
    acc = np.zeros(n, dtype=np.complex128)
    bad_rows = np.zeros(n, dtype=bool)
    if los:
        diff = tx - rx[None, :]
        d = np.sqrt(diff[:, 0] * diff[:, 0] + diff[:, 1] * diff[:, 1] + diff[:, 2] * diff[:, 2])
        bad_rows |= d == 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            ph = k * d
            acc += (ref_gain / d) * (np.cos(ph) - 1j * np.sin(ph))
    for j in range(m):
        s = scat[:, j, :]
        a = tx - s
        b = s - rx[None, :]
        d1 = np.sqrt(a[:, 0] * a[:, 0] + a[:, 1] * a[:, 1] + a[:, 2] * a[:, 2])
        d2 = np.sqrt(b[:, 0] * b[:, 0] + b[:, 1] * b[:, 1] + b[:, 2] * b[:, 2])
        bad_rows |= (d1 == 0.0) | (d2 == 0.0)
        d = d1 + d2
        with np.errstate(divide="ignore", invalid="ignore"):
            ph = k * d
            coef = (ref_gain * refl[j].real / d) + 1j * (ref_gain * refl[j].imag / d)
            acc += coef * (np.cos(ph) - 1j * np.sin(ph))
    bad = int(np.argmax(bad_rows)) if bad_rows.any() else -1
    acc[bad_rows] = 0.0
    return acc, bad


def _doppler_loop(tx, rx, scat, vel, los, inv_lambda):
    n = tx.shape[0]
    m = scat.shape[1]
    width = m + (1 if los else 0)
    out = np.zeros((n, width), dtype=np.float64)
    bad = -1
    for i in range(n):
        col = 0
        if los:
            dx = tx[i, 0] - rx[0]
            dy = tx[i, 1] - rx[1]
            dz = tx[i, 2] - rx[2]
            d = math.sqrt(dx * dx + dy * dy + dz * dz)
            if d == 0.0:
                if bad < 0:
                    bad = i
            else:
                rate = (dx * vel[i, 0] + dy * vel[i, 1] + dz * vel[i, 2]) / d
                out[i, col] = -inv_lambda * rate
            col += 1
        for j in range(m):
            dx = tx[i, 0] - scat[i, j, 0]
            dy = tx[i, 1] - scat[i, j, 1]
            dz = tx[i, 2] - scat[i, j, 2]
            d = math.sqrt(dx * dx + dy * dy + dz * dz)
            if d == 0.0:
                if bad < 0:
                    bad = i
            else:
                rate = (dx * vel[i, 0] + dy * vel[i, 1] + dz * vel[i, 2]) / d
                out[i, col] = -inv_lambda * rate
            col += 1
    return out, bad


def _doppler_numpy(tx, rx, scat, vel, los, inv_lambda):
    cols = []
    bad_rows = np.zeros(tx.shape[0], dtype=bool)

    def radial(a):
        d = np.sqrt(a[:, 0] * a[:, 0] + a[:, 1] * a[:, 1] + a[:, 2] * a[:, 2])
        zero = d == 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            rate = (a[:, 0] * vel[:, 0] + a[:, 1] * vel[:, 1] + a[:, 2] * vel[:, 2]) / d
        rate[zero] = 0.0
        return -inv_lambda * rate, zero

    if los:
        f, zero = radial(tx - rx[None, :])
        cols.append(f)
        bad_rows |= zero
    for j in range(scat.shape[1]):
        f, zero = radial(tx - scat[:, j, :])
        cols.append(f)
        bad_rows |= zero
    out = np.stack(cols, axis=1) if cols else np.zeros((tx.shape[0], 0))
    bad = int(np.argmax(bad_rows)) if bad_rows.any() else -1
    return out, bad


if HAVE_NUMBA:
    _seg = njit(cache=True)(_seg)
    _gains_impl = njit(cache=True)(_gains_loop)
    _doppler_impl = njit(cache=True)(_doppler_loop)
else:
    _gains_impl = _gains_numpy
    _doppler_impl = _doppler_numpy


def _as_inputs(tx, rx, scat):
    tx = np.ascontiguousarray(tx, dtype=np.float64).reshape(-1, 3)
    rx = np.ascontiguousarray(rx, dtype=np.float64).reshape(3)
    scat = np.ascontiguousarray(scat, dtype=np.float64)
    if scat.ndim == 2:
        scat = np.ascontiguousarray(np.broadcast_to(scat.reshape(-1, 3), (tx.shape[0], scat.shape[0], 3)))
    if scat.shape[0] != tx.shape[0]:
        raise ValueError("per-row scatterer array must match the number of antenna positions")
    return tx, rx, scat


def channel_gains(tx, rx, scat, refl, los, ref_gain, k, backend=None):
    """Narrowband gain for each row of antenna positions.

    Args:
        tx: (N, 3) transmit antenna positions.
        rx: (3,) receive antenna position.
        scat: (M, 3) static scatterers, or (N, M, 3) per-row scatterers.
        refl: (M,) complex reflectivities.
        los: include the line-of-sight path.
        ref_gain: scale applied to every path.
        k: wavenumber in rad/m.
        backend: ``"numba"``, ``"numpy"`` or None for the module default.

    Returns:
        ``(h, bad)`` where ``h`` is complex (N,) and ``bad`` is the first row
        with a zero-length segment, or -1.
    """
    tx, rx, scat = _as_inputs(tx, rx, scat)
    refl = np.ascontiguousarray(refl, dtype=np.complex128).reshape(-1)
    impl = _select(backend, _gains_impl, _gains_numpy)
    h, bad = impl(tx, rx, scat, refl, bool(los), float(ref_gain), float(k))
    return h, int(bad)


def path_dopplers(tx, rx, scat, vel, los, inv_lambda, backend=None):
    """Per-path Doppler in Hz for each row; shape (N, paths)."""
    tx, rx, scat = _as_inputs(tx, rx, scat)
    vel = np.ascontiguousarray(vel, dtype=np.float64).reshape(-1, 3)
    impl = _select(backend, _doppler_impl, _doppler_numpy)
    out, bad = impl(tx, rx, scat, vel, bool(los), float(inv_lambda))
    return out, int(bad)


def _select(backend, compiled, numpy_impl):
    if backend is None:
        return compiled
    if backend == "numpy":
        return numpy_impl
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return compiled
    raise ValueError(f"unknown backend {backend!r}")
