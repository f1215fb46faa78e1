"""Time the numba and numpy paths of each integer kernel on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Outputs of the two paths are compared before timing; a mismatch aborts.
The first jit call (compilation) is excluded from the timings.
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from constellation_lab import kernels


def _chain_succ(n: int) -> np.ndarray:
    # a path with a few extra forward edges: many closed subsets, none trivial
    rng = np.random.default_rng(0)
    succ = np.zeros(n, dtype=np.int64)
    for i in range(n - 1):
        succ[i] |= np.int64(1) << (i + 1)
        if i + 3 < n and rng.random() < 0.3:
            succ[i] |= np.int64(1) << (i + 3)
    return succ


def cases():
    succ = _chain_succ(18)
    seeds = np.arange(1, 4096, dtype=np.int64) % (1 << 18)
    weights = np.array([[2], [1], [1]], dtype=np.int64)
    moduli = np.array([7], dtype=np.int64)
    rows = kernels._trivial_exponents_numpy(weights, moduli, 21)
    sl2_weights = np.array([-3, -1, 1, 3, -2, 0, 2], dtype=np.int64)
    lo, width = -3 * 12, 6 * 12 + 1
    return [
        ("closed_subsets n=18", kernels._closed_subsets_jit, kernels._closed_subsets_numpy, (succ,)),
        ("closure_masks 4095 seeds", kernels._closure_masks_jit, kernels._closure_masks_numpy, (succ, seeds)),
        ("sym_weight_counts d=12", kernels._sym_weight_counts_jit, kernels._sym_weight_counts_numpy, (sl2_weights, 12, lo, width)),
        ("trivial_exponents Z/7 deg<=21", kernels._trivial_exponents_jit, kernels._trivial_exponents_numpy, (weights, moduli, 21)),
        (f"minimal_rows m={len(rows)}", kernels._minimal_rows_jit, kernels._minimal_rows_numpy, (rows,)),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy path exists", file=sys.stderr)
        return 1
    print(f"{'kernel':34} {'jit ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, jit, ref, inputs in cases():
        a, b = jit(*inputs), ref(*inputs)
        if not np.array_equal(np.sort(a, axis=0), np.sort(b, axis=0)):
            print(f"{name}: paths disagree", file=sys.stderr)
            return 2
        t_jit = min(timeit.repeat(lambda: jit(*inputs), number=1, repeat=args.repeat)) * 1e3
        t_ref = min(timeit.repeat(lambda: ref(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:34} {t_jit:10.3f} {t_ref:10.3f} {t_ref / t_jit:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
