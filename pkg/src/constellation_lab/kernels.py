"""Integer combinatorial kernels with a numba path and a pure-numpy path.

The exact-rational layers only call into these for the combinatorial inner
loops: arrow-closed subsets of a multiplicity-free module (bitmasks over at
most 62 basis vectors), weight counting for symmetric powers and enumeration
of invariant exponent vectors.

Set ``CONSTELLATION_LAB_DISABLE_JIT=1`` to force the numpy implementations.
Both paths are importable explicitly (``*_jit`` / ``*_numpy``) so tests and
``benchmarks/bench_kernels.py`` can compare them.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
JIT_DISABLED = os.environ.get("CONSTELLATION_LAB_DISABLE_JIT", "").strip() not in ("", "0")
USE_JIT = HAVE_NUMBA and not JIT_DISABLED

MAX_MASK_BITS = 62


def _njit(func):
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


# --- arrow-closed subsets -------------------------------------------------


@_njit
def _closed_subsets_jit(succ):
    n = succ.shape[0]
    total = np.int64(1) << n
    out = np.empty(total, dtype=np.int64)
    k = 0
    for mask in range(total):
        ok = True
        for i in range(n):
            if (mask >> i) & 1 and (succ[i] & ~mask) != 0:
                ok = False
                break
        if ok:
            out[k] = mask
            k += 1
    return out[:k]


def _closed_subsets_numpy(succ):
    n = succ.shape[0]
    masks = np.arange(np.int64(1) << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for i in range(n):
        has_i = ((masks >> i) & 1).astype(bool)
        ok &= ~has_i | ((succ[i] & ~masks) == 0)
    return masks[ok]


@_njit
def _closure_masks_jit(succ, seeds):
    n = succ.shape[0]
    out = seeds.copy()
    for k in range(out.shape[0]):
        mask = out[k]
        frontier = mask
        while frontier != 0:
            new = np.int64(0)
            for i in range(n):
                if (frontier >> i) & 1:
                    new |= succ[i]
            new &= ~mask
            mask |= new
            frontier = new
        out[k] = mask
    return out


def _closure_masks_numpy(succ, seeds):
    masks = seeds.astype(np.int64, copy=True)
    n = succ.shape[0]
    while True:
        grown = masks.copy()
        for i in range(n):
            grown |= np.where((masks >> i) & 1, succ[i], np.int64(0))
        if np.array_equal(grown, masks):
            return masks
        masks = grown


def _check_masks(succ):
    succ = np.ascontiguousarray(succ, dtype=np.int64)
    if succ.shape[0] > MAX_MASK_BITS:
        raise ValueError(f"at most {MAX_MASK_BITS} basis vectors supported by bitmask kernels")
    return succ


def closed_subsets(succ):
    """All bitmasks ``S`` with ``succ[i] ⊆ S`` for every ``i ∈ S``, ascending."""
    succ = _check_masks(succ)
    if USE_JIT:
        return _closed_subsets_jit(succ)
    return _closed_subsets_numpy(succ)


def closure_masks(succ, seeds):
    """Smallest successor-closed superset of each seed mask."""
    succ = _check_masks(succ)
    seeds = np.ascontiguousarray(seeds, dtype=np.int64)
    if USE_JIT:
        return _closure_masks_jit(succ, seeds)
    return _closure_masks_numpy(succ, seeds)


# --- weight counting for symmetric powers ---------------------------------


@_njit
def _sym_weight_counts_jit(weights, degree, lo, width):
    # table[k, w - lo]: number of degree-k monomials with total weight w
    table = np.zeros((degree + 1, width), dtype=np.int64)
    table[0, -lo] = 1
    for j in range(weights.shape[0]):
        wj = weights[j]
        for k in range(1, degree + 1):
            for w in range(width):
                src = w - wj
                if 0 <= src < width:
                    table[k, w] += table[k - 1, src]
    return table[degree]


def _sym_weight_counts_numpy(weights, degree, lo, width):
    table = np.zeros((degree + 1, width), dtype=np.int64)
    table[0, -lo] = 1
    for wj in weights:
        for k in range(1, degree + 1):
            prev = table[k - 1]
            if wj >= 0:
                table[k, wj:] += prev[: width - wj]
            else:
                table[k, : width + wj] += prev[-wj:]
    return table[degree]


def sym_weight_counts(weights, degree):
    """Histogram of total weights over degree-``degree`` monomials.

    Returns ``(lowest_weight, counts)`` where ``counts[i]`` is the number of
    monomials of total weight ``lowest_weight + i``.
    """
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    if weights.size == 0:
        return 0, np.array([1 if degree == 0 else 0], dtype=np.int64)
    lo = min(0, int(weights.min())) * degree
    hi = max(0, int(weights.max())) * degree
    width = hi - lo + 1
    if USE_JIT:
        return lo, _sym_weight_counts_jit(weights, degree, lo, width)
    return lo, _sym_weight_counts_numpy(weights, degree, lo, width)


# --- invariant exponent vectors -------------------------------------------


@_njit
def _trivial_exponents_jit(weights, moduli, bound):
    n = weights.shape[0]
    k = weights.shape[1]
    cap = 1024
    out = np.empty((cap, n), dtype=np.int64)
    count = 0
    e = np.zeros(n, dtype=np.int64)
    while True:
        # odometer over exponent vectors of total degree <= bound
        i = n - 1
        while i >= 0:
            e[i] += 1
            if e.sum() <= bound:
                break
            e[i] = 0
            i -= 1
        if i < 0:
            break
        trivial = True
        for c in range(k):
            s = np.int64(0)
            for v in range(n):
                s += e[v] * weights[v, c]
            if moduli[c] == 0:
                if s != 0:
                    trivial = False
                    break
            elif s % moduli[c] != 0:
                trivial = False
                break
        if trivial:
            if count == cap:
                grown = np.empty((cap * 2, n), dtype=np.int64)
                grown[:cap] = out
                out = grown
                cap *= 2
            out[count] = e
            count += 1
    return out[:count]


def _trivial_exponents_numpy(weights, moduli, bound):
    n = weights.shape[0]
    grid = np.indices((bound + 1,) * n).reshape(n, -1).T
    grid = grid[(grid.sum(axis=1) <= bound) & (grid.sum(axis=1) > 0)]
    totals = grid @ weights
    trivial = np.ones(grid.shape[0], dtype=bool)
    for c, m in enumerate(moduli):
        trivial &= (totals[:, c] == 0) if m == 0 else (totals[:, c] % m == 0)
    found = grid[trivial]
    # match the odometer's lexicographic order
    order = np.lexsort(found.T[::-1]) if found.size else np.arange(0)
    return np.ascontiguousarray(found[order], dtype=np.int64)


def trivial_character_exponents(weights, moduli, bound):
    """Non-zero exponent vectors of degree <= bound whose character is trivial.

    ``weights`` is ``(n_variables, n_factors)``; ``moduli[c] == 0`` marks a
    free (torus) coordinate. Rows come out in lexicographic order.
    """
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    moduli = np.ascontiguousarray(moduli, dtype=np.int64)
    if weights.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if USE_JIT:
        return _trivial_exponents_jit(weights, moduli, bound)
    return _trivial_exponents_numpy(weights, moduli, bound)


@_njit
def _minimal_rows_jit(rows):
    m = rows.shape[0]
    keep = np.ones(m, dtype=np.bool_)
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            divides = True
            equal = True
            for c in range(rows.shape[1]):
                if rows[j, c] > rows[i, c]:
                    divides = False
                    break
                if rows[j, c] != rows[i, c]:
                    equal = False
            if divides and not equal:
                keep[i] = False
                break
    return keep


def _minimal_rows_numpy(rows, chunk=256):
    m = rows.shape[0]
    keep = np.ones(m, dtype=bool)
    for start in range(0, m, chunk):
        block = rows[start : start + chunk]
        le = (rows[None, :, :] <= block[:, None, :]).all(axis=2)
        ne = (rows[None, :, :] != block[:, None, :]).any(axis=2)
        keep[start : start + chunk] = ~(le & ne).any(axis=1)
    return keep


def minimal_rows(rows):
    """Boolean mask of rows not componentwise-dominating another distinct row."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if USE_JIT:
        return _minimal_rows_jit(rows)
    return _minimal_rows_numpy(rows)
