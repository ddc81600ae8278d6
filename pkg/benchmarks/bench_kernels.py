"""Time the hot kernels: numba variant versus the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--size N] [--repeat R]

Each kernel is called once before timing so that JIT compilation (or the
on-disk cache load) is excluded; the best of ``repeat`` runs is reported.
With ``CASIMIR_DISABLE_NUMBA=1`` only the numpy column is filled.
"""
import argparse
import timeit

import numpy as np

from casimir_entropy import _kernels, planar
from casimir_entropy._accel import use_numba
from casimir_entropy.materials import Drude


def _inputs(n, rng):
    q = rng.uniform(1e-4, 10.0, n) + 1j * rng.uniform(-3.0, 3.0, n)
    chi = rng.uniform(0.1, 4.0, n) + 0j
    inv_eps = rng.uniform(0.0, 1.0, n) + 0j
    z = rng.uniform(0.0, 8.0, n) + 1j * rng.uniform(-8.0, 8.0, n)
    return q, chi, inv_eps, z


def _best(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=200_000, help="points per kernel call")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    q, chi, inv_eps, z = _inputs(args.size, np.random.default_rng(args.seed))
    kernels = {
        "planar_log TE": (lambda: _kernels._planar_log_nb(q, chi, inv_eps, 0.5, 0),
                          lambda: _kernels._planar_log_np(q, chi, inv_eps, 0.5, 0)),
        "planar_log TM": (lambda: _kernels._planar_log_nb(q, chi, inv_eps, 0.5, 1),
                          lambda: _kernels._planar_log_np(q, chi, inv_eps, 0.5, 1)),
        "bessel l=3": (lambda: _kernels._bessel_nb(3, z, 400), lambda: _kernels._bessel_np(3, z, 400)),
        "bessel l=8": (lambda: _kernels._bessel_nb(8, z, 400), lambda: _kernels._bessel_np(8, z, 400)),
    }
    print(f"numba active: {use_numba()}   points per call: {args.size}")
    print(f"{'kernel':<16}{'numba [ms]':>12}{'numpy [ms]':>12}{'speed-up':>10}")
    for name, (fast, slow) in kernels.items():
        t_np = _best(slow, args.repeat)
        if use_numba():
            t_nb = _best(fast, args.repeat)
            print(f"{name:<16}{1e3 * t_nb:>12.2f}{1e3 * t_np:>12.2f}{t_np / t_nb:>10.1f}")
        else:
            print(f"{name:<16}{'-':>12}{1e3 * t_np:>12.2f}{'-':>10}")

    geom = planar.PlanarGeometry(1.0)
    t = _best(lambda: planar.delta_f(Drude(1.0, 0.1), geom, 0.05), max(1, args.repeat // 2))
    print(f"end-to-end delta_f(Drude, aT = 0.05): {1e3 * t:.1f} ms")


if __name__ == "__main__":
    main()
