"""Compare the numba and numpy phasor-sum kernels.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from chanstatic import _kernels
from chanstatic.scenario import make_office

CASES = [(301, 30), (10_000, 30), (100_000, 30), (10_000, 300)]


def inputs(n, m, seed=0):
    env = make_office(seed, m)
    rng = np.random.default_rng(seed)
    tx = np.column_stack([rng.uniform(0, 0.8, n), np.zeros(n), np.ones(n)])
    return tx, np.array([2.0, 0.0, 1.0]), env.positions(), env.reflectivities()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    k = 2 * np.pi * 2.45e9 / 299792458.0
    print(f"{'N':>8} {'M':>5} " + " ".join(f"{b + ' [ms]':>13}" for b in backends) + f" {'speedup':>8}")
    for n, m in CASES:
        tx, rx, scat, refl = inputs(n, m)
        times = {}
        for b in backends:
            _kernels.channel_gains(tx[:2], rx, scat, refl, True, 1.0, k, backend=b)  # warm-up / JIT
            t = timeit.repeat(lambda: _kernels.channel_gains(tx, rx, scat, refl, True, 1.0, k, backend=b),
                              number=1, repeat=args.repeat)
            times[b] = min(t) * 1e3
        h_np, _ = _kernels.channel_gains(tx, rx, scat, refl, True, 1.0, k, backend="numpy")
        if "numba" in times:
            h_nb, _ = _kernels.channel_gains(tx, rx, scat, refl, True, 1.0, k, backend="numba")
            assert np.max(np.abs(h_np - h_nb)) < 1e-12
        speedup = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        print(f"{n:>8} {m:>5} " + " ".join(f"{times[b]:>13.3f}" for b in backends) + f" {speedup:>8.2f}")


if __name__ == "__main__":
    main()
