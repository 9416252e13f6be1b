"""Compiled vs numpy kernels: per-call timings and one end-to-end synthesis.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time
import timeit

import numpy as np

from sphere_designs import kernels
from sphere_designs.designs import synthesize
from sphere_designs.index_algebra import named_family
from sphere_designs.potentials import canonical_potential


def _cases(rng):
    for n, d, t in ((12, 3, 5), (60, 4, 6), (240, 8, 4)):
        V = rng.standard_normal((n, d))
        V /= np.linalg.norm(V, axis=1)[:, None]
        table = canonical_potential("real", d, named_family("t_design", t)).kernel_table()
        yield f"real n={n} d={d} t={t}", "value_grad_real", V, table
    for n, d, t in ((4, 2, 2), (40, 4, 3), (160, 6, 2)):
        V = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
        V /= np.linalg.norm(V, axis=1)[:, None]
        table = canonical_potential("complex", d, named_family("tt_design", t)).kernel_table()
        yield f"complex n={n} d={d} tt={t}", "value_grad_complex", V, table


def _time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if "compiled" not in kernels.BACKENDS:
        print("compiled kernels unavailable; only the numpy fallback is installed")
        return
    py, cy = kernels.get_backend("python"), kernels.get_backend("compiled")
    print(f"{'case':32s} {'python':>12s} {'compiled':>12s} {'speedup':>8s} {'max|dv|':>9s}")
    for label, name, V, table in _cases(rng):
        w = np.full(V.shape[0], 1.0 / V.shape[0])
        f_py, f_cy = getattr(py, name), getattr(cy, name)
        v1, g1 = f_py(V, table, w)
        v2, g2 = f_cy(V, table, w)
        err = max(abs(v1 - v2), float(np.max(np.abs(g1 - g2))))
        t_py = _time(lambda: f_py(V, table, w), args.repeat)
        t_cy = _time(lambda: f_cy(V, table, w), args.repeat)
        print(f"{label:32s} {t_py * 1e6:10.1f}us {t_cy * 1e6:10.1f}us {t_py / t_cy:7.1f}x {err:9.1e}")

    print()
    idx = named_family("t_design", 5)
    for backend in ("python", "compiled"):
        saved = kernels._impl
        kernels._impl = kernels.get_backend(backend)
        try:
            t0 = time.perf_counter()
            res = synthesize("real", 3, 12, idx, seed=42)
            dt = time.perf_counter() - t0
        finally:
            kernels._impl = saved
        print(f"synthesize R^3 n=12 t=5 [{backend:8s}] {dt:7.3f}s residual {res.residual:.2e}")


if __name__ == "__main__":
    main()
