import os
import subprocess
import sys

import numpy as np
import pytest

from chanstatic import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba backend not available")
BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


def _random_case(rng, n=64, m=12):
    tx = rng.uniform(-1, 1, (n, 3))
    rx = np.array([2.0, 0.3, 1.0])
    scat = rng.uniform(-5, 5, (m, 3))
    refl = rng.uniform(0, 1, m) * np.exp(1j * rng.uniform(-np.pi, np.pi, m))
    return tx, rx, scat, refl


@needs_numba
@pytest.mark.parametrize("los", [True, False])
def test_gain_backends_agree(los):
    rng = np.random.default_rng(7)
    tx, rx, scat, refl = _random_case(rng)
    k = 2 * np.pi / 0.1224
    h_nb, bad_nb = _kernels.channel_gains(tx, rx, scat, refl, los, 1.0, k, backend="numba")
    h_np, bad_np = _kernels.channel_gains(tx, rx, scat, refl, los, 1.0, k, backend="numpy")
    assert bad_nb == bad_np == -1
    np.testing.assert_allclose(h_nb, h_np, rtol=0, atol=1e-13)


@needs_numba
def test_doppler_backends_agree():
    rng = np.random.default_rng(3)
    tx, rx, scat, _ = _random_case(rng)
    vel = rng.normal(size=tx.shape)
    a, _ = _kernels.path_dopplers(tx, rx, scat, vel, True, 8.17, backend="numba")
    b, _ = _kernels.path_dopplers(tx, rx, scat, vel, True, 8.17, backend="numpy")
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_degenerate_row_reported(backend):
    tx = np.array([[0.0, 0, 0], [1.0, 1.0, 0], [0.5, 0, 0]])
    scat = np.array([[1.0, 1.0, 0]])
    _, bad = _kernels.channel_gains(tx, np.array([2.0, 0, 0]), scat, np.array([0.5 + 0j]), True, 1.0, 1.0,
                                    backend=backend)
    assert bad == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_identical_rows_give_identical_gains(backend):
    rng = np.random.default_rng(11)
    _, rx, scat, refl = _random_case(rng)
    tx = np.repeat([[0.1, -0.2, 1.0]], 301, axis=0)
    h, _ = _kernels.channel_gains(tx, rx, scat, refl, True, 1.0, 51.3, backend=backend)
    assert np.all(h == h[0])


def test_env_flag_selects_numpy():
    code = "from chanstatic import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, CHANSTATIC_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.channel_gains(np.zeros((1, 3)), np.ones(3), np.zeros((0, 3)), np.zeros(0), True, 1.0, 1.0,
                               backend="cuda")
