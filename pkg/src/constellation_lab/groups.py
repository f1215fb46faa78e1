"""Irreducible representations of the supported reductive groups.

Two families are handled:

* diagonalizable groups ``Z/n_1 x ... x Z/n_k x Z^r`` (finite abelian, tori
  and products of both). An irrep is a character, labelled by an integer
  tuple with the finite coordinates reduced to ``[0, n_i)``.
* ``SL2``, whose irreps ``V_n`` (dimension ``n + 1``) are labelled by the
  integer ``n >= 0``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import kernels
from .errors import DegreeBoundError, LabelError

Label = Union[tuple, int]

DEFAULT_DEGREE_BOUND = 12


@dataclass(frozen=True)
class GroupSpec:
    """A supported group.

    ``moduli`` describes a diagonalizable group: ``n >= 2`` is a cyclic factor
    ``Z/n``, ``0`` is a free factor ``Z`` (a rank-one torus). ``kind == "sl2"``
    ignores ``moduli``.
    """

    kind: str
    moduli: tuple = ()

    def __post_init__(self):
        if self.kind == "sl2":
            if self.moduli:
                raise LabelError("SL2 takes no cyclic factors")
            return
        if self.kind != "diagonal":
            raise LabelError(f"unknown group kind {self.kind!r}")
        if not self.moduli:
            raise LabelError("a diagonalizable group needs at least one factor")
        for n in self.moduli:
            if not isinstance(n, int) or (n != 0 and n < 2):
                raise LabelError(f"cyclic factors must be >= 2 (0 marks a torus factor), got {n!r}")

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls("diagonal", (n,))

    @classmethod
    def abelian(cls, *factors: int) -> "GroupSpec":
        if any(n < 2 for n in factors):
            raise LabelError("all cyclic factors must be >= 2")
        return cls("diagonal", tuple(factors))

    @classmethod
    def torus(cls, rank: int = 1) -> "GroupSpec":
        if rank < 1:
            raise LabelError("torus rank must be >= 1")
        return cls("diagonal", (0,) * rank)

    @classmethod
    def sl2(cls) -> "GroupSpec":
        return cls("sl2")

    @property
    def is_diagonal(self) -> bool:
        return self.kind == "diagonal"

    @property
    def is_finite(self) -> bool:
        return self.is_diagonal and 0 not in self.moduli

    @property
    def rank(self) -> int:
        """Number of coordinates of a character label (1 for SL2)."""
        return len(self.moduli) if self.is_diagonal else 1

    @property
    def order(self) -> int | None:
        return math.prod(self.moduli) if self.is_finite else None

    @property
    def trivial(self) -> Label:
        return (0,) * len(self.moduli) if self.is_diagonal else 0

    def describe(self) -> str:
        if self.kind == "sl2":
            return "SL2"
        parts = ["Z" if n == 0 else f"Z/{n}" for n in self.moduli]
        return " x ".join(parts)

    # -- labels ------------------------------------------------------------

    def label(self, *coords) -> Label:
        """Build a canonical label, reducing residues.

        ``g.label(5)`` on ``Z/3`` is ``(2,)``; tuples are accepted as a single
        argument too.
        """
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if self.kind == "sl2":
            if len(coords) != 1 or not _is_int(coords[0]) or coords[0] < 0:
                raise LabelError(f"SL2 labels are integers n >= 0, got {coords!r}")
            return int(coords[0])
        if len(coords) != len(self.moduli) or not all(_is_int(c) for c in coords):
            raise LabelError(f"{self.describe()} labels have {len(self.moduli)} integer coordinates, got {coords!r}")
        return tuple(int(c) % n if n else int(c) for c, n in zip(coords, self.moduli))

    def validate(self, rho) -> Label:
        """Return ``rho`` unchanged if it is a canonical label, else raise."""
        if self.kind == "sl2":
            if _is_int(rho) and rho >= 0:
                return int(rho)
            raise LabelError(f"invalid SL2 label {rho!r}")
        if (
            isinstance(rho, tuple)
            and len(rho) == len(self.moduli)
            and all(_is_int(c) for c in rho)
            and all(n == 0 or 0 <= c < n for c, n in zip(rho, self.moduli))
        ):
            return tuple(int(c) for c in rho)
        raise LabelError(f"label {rho!r} is not a canonical label of {self.describe()}")

    def add(self, a: Label, b: Label) -> Label:
        if not self.is_diagonal:
            raise LabelError("characters only add for diagonalizable groups")
        return self.label(tuple(x + y for x, y in zip(a, b)))

    def irreps(self) -> list:
        """All irreps of a finite group, in canonical (lexicographic) order."""
        if not self.is_finite:
            raise LabelError(f"{self.describe()} has infinitely many irreps")
        return [tuple(c) for c in itertools.product(*(range(n) for n in self.moduli))]

    def sort_key(self, rho: Label):
        return (rho,) if self.kind == "sl2" else rho

    def dual(self, rho: Label) -> Label:
        rho = self.validate(rho)
        if self.kind == "sl2":
            return rho
        return self.label(tuple(-c for c in rho))

    def centered(self, rho: Label) -> tuple:
        """Coordinates with each residue moved into ``(-n/2, n/2]``."""
        if self.kind == "sl2":
            return (rho,)
        out = []
        for c, n in zip(rho, self.moduli):
            if n and c > n // 2:
                c -= n
            out.append(c)
        return tuple(out)

    def box(self, radius: int) -> list:
        """Labels whose centered coordinates all have absolute value <= radius."""
        if radius < 0:
            return []
        if self.kind == "sl2":
            return list(range(radius + 1))
        ranges = []
        for n in self.moduli:
            if n == 0:
                ranges.append(range(-radius, radius + 1))
            else:
                ranges.append(sorted({c % n for c in range(-radius, radius + 1)}))
        return sorted({self.label(c) for c in itertools.product(*ranges)})


def _is_int(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def irrep_dim(g: GroupSpec, rho: Label) -> int:
    rho = g.validate(rho)
    return rho + 1 if g.kind == "sl2" else 1


class RepDecomp(Mapping):
    """Finitely supported multiplicity map ``label -> n > 0``."""

    def __init__(self, mults=()):
        data = {}
        items = mults.items() if isinstance(mults, Mapping) else mults
        for rho, m in items:
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                data[rho] = data.get(rho, 0) + int(m)
        self._data = dict(sorted(data.items(), key=lambda kv: label_key(kv[0])))

    def __getitem__(self, rho):
        return self._data[rho]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __hash__(self):
        return hash(tuple(self._data.items()))

    def __repr__(self):
        return f"RepDecomp({self._data!r})"

    def dimension(self, g: GroupSpec) -> int:
        return sum(m * irrep_dim(g, rho) for rho, m in self._data.items())


def label_key(rho):
    return (rho,) if isinstance(rho, int) else rho


def tensor(g: GroupSpec, a: Label, b: Label) -> RepDecomp:
    a, b = g.validate(a), g.validate(b)
    if g.kind == "sl2":
        return RepDecomp({a + b - 2 * i: 1 for i in range(min(a, b) + 1)})
    return RepDecomp({g.add(a, b): 1})


def weights_of(g: GroupSpec, V: Mapping) -> list:
    """The weight multiset of a representation, as a flat list."""
    out = []
    for rho, m in V.items():
        rho = g.validate(rho)
        if g.kind == "sl2":
            out.extend(list(range(-rho, rho + 1, 2)) * m)
        else:
            out.extend([rho] * m)
    return out


def decompose_sym_power(
    g: GroupSpec, V: Mapping, d: int, degree_bound: int = DEFAULT_DEGREE_BOUND
) -> RepDecomp:
    """Isotypic decomposition of ``Sym^d(V*)``, the degree-d coordinate functions on V."""
    if d < 0:
        raise DegreeBoundError("degree must be non-negative")
    if d > degree_bound:
        raise DegreeBoundError(f"degree {d} exceeds the degree bound {degree_bound}")
    if g.kind == "sl2":
        # V_n is self-dual; recover irreps from the weight histogram
        lo, counts = kernels.sym_weight_counts(np.array(weights_of(g, V), dtype=np.int64), d)
        count = {lo + i: int(c) for i, c in enumerate(counts) if c}
        top = max(count) if count else -1
        return RepDecomp({n: count.get(n, 0) - count.get(n + 2, 0) for n in range(0, top + 1)})
    layer = Counter({g.trivial: 1})
    duals = [g.dual(w) for w in weights_of(g, V)]
    # multisets of size d: add one variable at a time, unbounded multiplicity
    table = [layer] + [Counter() for _ in range(d)]
    for w in duals:
        for k in range(1, d + 1):
            for rho, c in table[k - 1].items():
                table[k][g.add(rho, w)] += c
    return RepDecomp(table[d])


def sl2_weight_expansion(decomp: Mapping) -> Counter:
    """Weight multiset of an SL2 representation given by irreps."""
    out = Counter()
    for n, m in decomp.items():
        for w in range(-n, n + 1, 2):
            out[w] += m
    return out
