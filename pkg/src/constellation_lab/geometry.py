"""Invariant monomials of a diagonal action and the Hilbert–Chow point of a module."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import kernels
from . import linalg as la
from .errors import DegreeBoundError, InputError, check
from .modules import ActionSpec, EquivariantModule


@dataclass(frozen=True)
class InvariantGenerators:
    """Minimal trivial-character monomials, as exponent vectors, up to ``degree_bound``."""

    names: tuple
    exponents: tuple
    degree_bound: int

    def labels(self) -> list:
        return [monomial_name(self.names, e) for e in self.exponents]


def monomial_name(names: Iterable[str], exps: Iterable[int]) -> str:
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts) or "1"


def default_degree_bound(action: ActionSpec) -> int:
    """``lcm`` of the cyclic orders times the number of variables.

    Torus coordinates add a factor of the largest absolute torus weight.
    """
    g = action.group
    orders = [n for n in g.moduli if n]
    base = math.lcm(*orders) if orders else 1
    torus_cols = [c for c, n in enumerate(g.moduli) if n == 0]
    spread = max([abs(w[c]) for _, w in action.variables for c in torus_cols] or [1])
    return base * len(action.variables) * max(spread, 1)


def _trivial_rows(action: ActionSpec, bound: int) -> np.ndarray:
    return kernels.trivial_character_exponents(action.weight_matrix(), np.array(action.group.moduli), bound)


def invariant_monomial_generators(action: ActionSpec, degree_bound: int | None = None) -> InvariantGenerators:
    """Minimal generators of the monoid of invariant monomials.

    Trivial-character exponents are enumerated up to the bound and reduced to
    the componentwise-minimal ones. The bound is then probed one degree
    higher: a trivial monomial there that no generator divides means the
    bound was too small, and :class:`DegreeBoundError` is raised.
    """
    bound = default_degree_bound(action) if degree_bound is None else int(degree_bound)
    if bound < 1:
        raise DegreeBoundError("degree bound must be at least 1")
    rows = _trivial_rows(action, bound + 1)
    if rows.size == 0:
        return InvariantGenerators(action.names, (), bound)
    degree = rows.sum(axis=1)
    gens = rows[degree <= bound]
    gens = gens[kernels.minimal_rows(gens)] if gens.size else gens
    probe = rows[degree == bound + 1]
    for row in probe:
        if not gens.size or not (gens <= row).all(axis=1).any():
            raise DegreeBoundError(
                f"degree bound {bound} too small: {monomial_name(action.names, row)} is a new generator"
            )
    ordered = sorted((tuple(int(x) for x in r) for r in gens), reverse=True)
    return InvariantGenerators(action.names, tuple(ordered), bound)


@dataclass(frozen=True)
class QuotientPoint:
    generators: InvariantGenerators
    values: tuple

    def as_dict(self) -> dict:
        return dict(zip(self.generators.labels(), self.values))


def hilbert_chow_point(m: EquivariantModule, gens: InvariantGenerators) -> QuotientPoint:
    """Scalars by which the invariant generators act on the invariant line of ``m``."""
    g = m.group
    rho0 = g.trivial
    if m.dim(rho0) != 1:
        raise InputError(f"needs a one-dimensional invariant component, got dimension {m.dim(rho0)}")
    if gens.names != m.action.names or any(m.action.monomial_weight(e) != rho0 for e in gens.exponents):
        raise InputError("generators belong to a different action")
    values = []
    for e in gens.exponents:
        end, vec = m.apply_monomial(e, rho0, (Fraction(1),))
        check(end == rho0, f"generator {e} does not return to the invariant component")
        check(len(vec) in (0, 1), "invariant action is not a scalar")
        values.append(vec[0] if vec else Fraction(0))
    return QuotientPoint(gens, tuple(values))


def evaluate_generators(gens: InvariantGenerators, point: Iterable) -> tuple:
    p = la.vector(point)
    out = []
    for e in gens.exponents:
        v = Fraction(1)
        for c, k in zip(p, e):
            v *= c**k
        out.append(v)
    return tuple(out)


def binomial_relations(gens: InvariantGenerators, max_factors: int = 3) -> list:
    """Pairs of generator multisets with equal products, up to ``max_factors`` factors."""
    n = len(gens.exponents)
    by_product: dict = {}
    for k in range(1, max_factors + 1):
        for combo in itertools.combinations_with_replacement(range(n), k):
            total = tuple(sum(gens.exponents[i][j] for i in combo) for j in range(len(gens.names)))
            by_product.setdefault(total, []).append(combo)
    return [(a, b) for combos in by_product.values() for a, b in itertools.combinations(combos, 2)]


def satisfies_relations(point: QuotientPoint, max_factors: int = 3) -> bool:
    for a, b in binomial_relations(point.generators, max_factors):
        if math.prod(point.values[i] for i in a) != math.prod(point.values[i] for i in b):
            return False
    return True
