"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--full]

``--full`` adds the dipole integral at the production tolerance, which
takes tens of seconds per element in pure Python.
"""
import argparse
import time

import numpy as np

from qrcube import _pykernels
from qrcube.cube import QUARTER_TURNS, CubeState, apply, move_permutation

try:
    from qrcube import _kernels
except ImportError:
    _kernels = None


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _search_args(n, planted):
    s = CubeState.labeled(n)
    t = apply(s, planted)
    perms = np.array([move_permutation(m, n) for m in QUARTER_TURNS], dtype=np.intc)
    k = len(perms)
    ident = np.arange(6 * n * n)
    inv = np.full(k, -1, dtype=np.intc)
    com = np.zeros((k, k), dtype=np.uint8)
    for i in range(k):
        for j in range(k):
            ij = perms[i][perms[j]]
            if np.array_equal(ij, ident):
                inv[i] = j
            com[i, j] = np.array_equal(ij, perms[j][perms[i]])
    return s.stickers.real.astype(np.intc), t.stickers.real.astype(np.intc), perms, inv, com


def cases(full):
    rng = np.random.default_rng(0)
    polys = [np.concatenate([[1.0], rng.normal(size=8) + 1j * rng.normal(size=8)]) for _ in range(200)]
    yield "poly_roots x200 (degree 8)", lambda k: [k.poly_roots(c) for c in polys]
    yield "dipole 2s-2pz tol 1e-5", lambda k: k.dipole_triple(1, 2, 1.0, 60.0, 1e-5)
    if full:
        yield "dipole 2s-2pz tol 1e-8", lambda k: k.dipole_triple(1, 2, 1.0, 60.0, 1e-8)
    args = _search_args(3, "L1(1) B1(2) U1(3) R'1(4)")
    yield "ids_search n=3 depth 4", lambda k: k.ids_search(*args, 4)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true")
    a = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'case':32s} {'python [s]':>12s} {'compiled [s]':>13s} {'speedup':>9s}")
    for name, fn in cases(a.full):
        tp = _best(lambda: fn(_pykernels), a.repeat)
        if _kernels is None:
            print(f"{name:32s} {tp:12.4f} {'-':>13s} {'-':>9s}")
            continue
        tc = _best(lambda: fn(_kernels), a.repeat)
        print(f"{name:32s} {tp:12.4f} {tc:13.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
