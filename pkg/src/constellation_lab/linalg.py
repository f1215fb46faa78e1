"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; a matrix is a tuple of
rows. Subspaces are stored as their reduced row echelon basis, which makes
equality of subspaces plain tuple equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, str or Fraction")
    return Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(frac(e) for e in entries)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(m: Matrix, ncols_if_empty: int = 0) -> tuple[int, int]:
    if not m:
        return (0, ncols_if_empty)
    return (len(m), len(m[0]))


def zeros(nrows: int, ncols: int) -> Matrix:
    z = Fraction(0)
    return tuple(tuple(z for _ in range(ncols)) for _ in range(nrows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def scale(m: Matrix, c) -> Matrix:
    c = frac(c)
    return tuple(tuple(c * x for x in row) for row in m)


def matvec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return ()
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols)
        for row in a
    )


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def rref(rows: Iterable[Sequence[Fraction]]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form of the row space, zero rows dropped.

    Pivots are chosen at the lowest available column index, so the result is
    canonical for the span.
    """
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        pv = work[r][c]
        if pv != 1:
            work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def span(vectors: Iterable[Sequence[Fraction]]) -> Matrix:
    return rref(vectors)[0]


def rank(vectors: Iterable[Sequence[Fraction]]) -> int:
    return len(rref(vectors)[0])


def in_span(v: Sequence[Fraction], basis: Matrix) -> bool:
    return rank(tuple(basis) + (tuple(v),)) == len(basis)


def contains(big: Matrix, small: Matrix) -> bool:
    return all(in_span(v, big) for v in small)


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    aug = [list(row) + list(e) for row, e in zip(m, identity(n))]
    reduced, pivots = rref(aug)
    if len(reduced) < n or tuple(pivots[:n]) != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def is_invertible(m: Matrix) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and rank(m) == n


def transpose(m: Matrix, ncols_if_empty: int = 0) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols_if_empty))
    return tuple(tuple(col) for col in zip(*m))


def coordinate_complement(basis: Matrix, n: int) -> Matrix:
    """Standard basis vectors at the non-pivot columns of ``basis``."""
    _, pivots = rref(basis)
    return tuple(unit(n, i) for i in range(n) if i not in set(pivots))


def fmt(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
