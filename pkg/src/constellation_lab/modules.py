"""Finite-dimensional equivariant modules over a polynomial ring.

The group acts diagonally on ``X = C^n``: variable ``x_i`` carries a
character ``w_i``, so multiplication by ``x_i`` maps the isotypic component
``F_rho`` to ``F_{rho + w_i}``. A module is stored as component sizes plus
one exact-rational matrix per (variable, source component). Matrices act on
column vectors: an arrow ``F_rho -> F_sigma`` has shape
``dim F_sigma x dim F_rho``.

Graded subspaces are stored per component as reduced row echelon bases of
row vectors, so equal subspaces compare equal.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from . import linalg as la
from .errors import ExplosionError, ModuleError, PresentationError
from .groups import GroupSpec, Label, label_key
from .hilbert import HilbertFunction

DEFAULT_SAMPLES = 64
COORDINATE_SEED_CAP = 4096


# --- actions -----------------------------------------------------------------


@dataclass(frozen=True)
class ActionSpec:
    """Diagonal action on ``C^n``: ``variables`` is a tuple of ``(name, weight)``."""

    group: GroupSpec
    variables: tuple

    def __post_init__(self):
        if not self.group.is_diagonal:
            raise ModuleError("module computations need a diagonalizable group (SL2 works at Hilbert-function level)")
        items = self.variables.items() if isinstance(self.variables, Mapping) else self.variables
        clean = []
        for name, w in items:
            if not isinstance(name, str) or not name.isidentifier():
                raise ModuleError(f"variable names must be identifiers, got {name!r}")
            clean.append((name, self.group.validate(w)))
        if not clean:
            raise ModuleError("an action needs at least one variable")
        if len({n for n, _ in clean}) != len(clean):
            raise ModuleError("duplicate variable name")
        object.__setattr__(self, "variables", tuple(clean))

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.variables)

    def weight(self, var: str) -> Label:
        for n, w in self.variables:
            if n == var:
                return w
        raise ModuleError(f"unknown variable {var!r}")

    def monomial_weight(self, exponents: Iterable[int]) -> Label:
        g = self.group
        total = g.trivial
        for e, (_, w) in zip(exponents, self.variables):
            total = g.label(tuple(t + e * c for t, c in zip(total, w)))
        return total

    def weight_matrix(self) -> np.ndarray:
        return np.array([list(w) for _, w in self.variables], dtype=np.int64)


# --- graded subspaces --------------------------------------------------------


@dataclass(frozen=True)
class GradedSubspace:
    """A subspace ``⊕ V_rho`` with each ``V_rho`` given by an rref row basis."""

    parts: tuple = ()

    @classmethod
    def of(cls, g: GroupSpec, spans: Mapping) -> "GradedSubspace":
        parts = []
        for rho, rows in spans.items():
            basis = la.span(la.matrix(rows))
            if basis:
                parts.append((rho, basis))
        parts.sort(key=lambda kv: g.sort_key(kv[0]))
        return cls(tuple(parts))

    @property
    def spans(self) -> dict:
        return dict(self.parts)

    def rows(self, rho: Label) -> tuple:
        return self.spans.get(rho, ())

    def dim(self, rho: Label) -> int:
        return len(self.rows(rho))

    def total(self) -> int:
        return sum(len(rows) for _, rows in self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def labels(self) -> list:
        return [rho for rho, _ in self.parts]

    def hilbert(self, g: GroupSpec) -> HilbertFunction:
        return HilbertFunction(g, {rho: len(rows) for rho, rows in self.parts})

    def __le__(self, other: "GradedSubspace") -> bool:
        return all(la.contains(other.rows(rho), rows) for rho, rows in self.parts)


# --- modules -----------------------------------------------------------------


def _lift(g: GroupSpec, mapping: Mapping) -> dict:
    out = {}
    for rho, n in mapping.items():
        rho = g.validate(rho)
        if int(n) != n or n < 0:
            raise ModuleError(f"component sizes are non-negative integers, got {rho}: {n!r}")
        if n:
            out[rho] = int(n)
    return out


@dataclass(frozen=True, eq=False)
class EquivariantModule:
    """Components ``F_rho`` with commuting multiplication maps.

    ``arrows`` maps ``(var, src)`` or ``(var, src, tgt)`` to a matrix; omitted
    arrows are zero. With ``validate=False`` the commutation relations are
    not enforced, which lets :func:`check_relations` report them.
    """

    action: ActionSpec
    dims: Mapping
    arrows: Mapping = field(default_factory=dict)
    validate: bool = True

    def __post_init__(self):
        g = self.action.group
        dims = _lift(g, self.dims)
        arrows = {}
        for key, mat in self.arrows.items():
            if len(key) not in (2, 3):
                raise ModuleError(f"arrow keys are (var, src) or (var, src, tgt), got {key!r}")
            var, src = key[0], g.validate(key[1])
            tgt = self.target(var, src)
            if len(key) == 3 and g.validate(key[2]) != tgt:
                raise ModuleError(
                    f"arrow {var}: {src} -> {key[2]} has the wrong weight; multiplication by {var} lands in {tgt}"
                )
            mat = la.matrix(mat)
            expected = (dims.get(tgt, 0), dims.get(src, 0))
            got = (len(mat), len(mat[0]) if mat else expected[1])
            if got != expected:
                raise ModuleError(
                    f"arrow {var}: {src} -> {tgt} has shape {got[0]}x{got[1]}, "
                    f"components need {expected[0]}x{expected[1]}"
                )
            if 0 in expected:
                continue
            if (var, src) in arrows:
                raise ModuleError(f"arrow {var} from {src} given twice")
            if not la.is_zero(mat):
                arrows[(var, src)] = mat
        object.__setattr__(self, "dims", dict(sorted(dims.items(), key=lambda kv: g.sort_key(kv[0]))))
        object.__setattr__(self, "arrows", dict(sorted(arrows.items(), key=lambda kv: (kv[0][0], g.sort_key(kv[0][1])))))
        if self.validate:
            bad = check_relations(self)
            if bad:
                raise ModuleError("arrows do not commute: " + "; ".join(bad[:3]))

    # identity is structural so modules can be deduplicated
    def _key(self):
        return (self.action, tuple(self.dims.items()), tuple(self.arrows.items()))

    def __eq__(self, other):
        return isinstance(other, EquivariantModule) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def group(self) -> GroupSpec:
        return self.action.group

    def target(self, var: str, src: Label) -> Label:
        return self.group.add(src, self.action.weight(var))

    def dim(self, rho: Label) -> int:
        return self.dims.get(rho, 0)

    def labels(self) -> list:
        return list(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def hilbert(self) -> HilbertFunction:
        return HilbertFunction(self.group, self.dims)

    @property
    def multiplicity_free(self) -> bool:
        return all(n <= 1 for n in self.dims.values())

    def arrow(self, var: str, src: Label) -> tuple:
        """Full matrix of ``var`` on ``F_src`` (zeros when not stored)."""
        tgt = self.target(var, src)
        if (var, src) in self.arrows:
            return self.arrows[(var, src)]
        return la.zeros(self.dim(tgt), self.dim(src))

    def apply(self, var: str, src: Label, vec) -> tuple:
        tgt = self.target(var, src)
        if not self.dim(tgt):
            return tgt, ()
        return tgt, la.matvec(self.arrow(var, src), vec)

    def apply_monomial(self, exponents: Iterable[int], src: Label, vec) -> tuple:
        """Apply ``prod x_i^{e_i}`` to a vector of ``F_src``."""
        exponents = tuple(exponents)
        end = self.group.add(src, self.action.monomial_weight(exponents))
        rho = src
        for (var, _), e in zip(self.action.variables, exponents):
            for _ in range(e):
                rho, vec = self.apply(var, rho, vec)
                if not vec:
                    return end, ()
        return rho, vec

    def basis(self) -> list:
        """Global basis as ``(label, index)`` pairs, in component order."""
        return [(rho, i) for rho, n in self.dims.items() for i in range(n)]

    def whole(self) -> GradedSubspace:
        return GradedSubspace.of(self.group, {rho: la.identity(n) for rho, n in self.dims.items()})

    def zero(self) -> GradedSubspace:
        return GradedSubspace()

    def __repr__(self):
        return f"EquivariantModule({self.group.describe()}, dims={self.dims}, arrows={len(self.arrows)})"


def check_relations(m: EquivariantModule) -> list:
    """Every violated commutation identity ``x_v x_w = x_w x_v``, as messages."""
    bad = []
    names = m.action.names
    for rho, n in m.dims.items():
        for a, b in itertools.combinations(names, 2):
            for i in range(n):
                e = la.unit(n, i)
                t1, ab = m.apply(a, rho, e)
                t1, ab = m.apply(b, t1, ab) if ab else (t1, ())
                t2, ba = m.apply(b, rho, e)
                t2, ba = m.apply(a, t2, ba) if ba else (t2, ())
                if not ab and not ba:
                    continue
                zero = la.vector([0] * m.dim(m.group.add(m.target(a, rho), m.action.weight(b))))
                if (ab or zero) != (ba or zero):
                    bad.append(f"{a}{b} != {b}{a} on basis vector {i} of component {rho}")
    return bad


# --- constructors -------------------------------------------------------------


def from_monomial_basis(action: ActionSpec, monomials: Iterable[tuple], validate: bool = True) -> EquivariantModule:
    """The module ``C[x]/I`` for a monomial ideal ``I`` given by its standard monomials.

    The standard monomials must form an order ideal (closed under division).
    Within a component they are ordered lexicographically.
    """
    mons = sorted({tuple(int(e) for e in m) for m in monomials})
    n = len(action.variables)
    if any(len(m) != n for m in mons):
        raise ModuleError(f"monomials need {n} exponents")
    mset = set(mons)
    for m in mons:
        for i in range(n):
            if m[i] and m[:i] + (m[i] - 1,) + m[i + 1 :] not in mset:
                raise ModuleError(f"standard monomials must be closed under division; {m} breaks this")
    comps: dict = {}
    for m in mons:
        comps.setdefault(action.monomial_weight(m), []).append(m)
    index = {m: (rho, k) for rho, ms in comps.items() for k, m in enumerate(ms)}
    arrows = {}
    for rho, ms in comps.items():
        for i, (var, w) in enumerate(action.variables):
            tgt = action.group.add(rho, w)
            rows = [[0] * len(ms) for _ in comps.get(tgt, [])]
            for k, m in enumerate(ms):
                up = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if up in index:
                    rows[index[up][1]][k] = 1
            if rows:
                arrows[(var, rho)] = rows
    return EquivariantModule(action, {rho: len(ms) for rho, ms in comps.items()}, arrows, validate=validate)


def free_orbit_module(action: ActionSpec, point: Iterable) -> EquivariantModule:
    """Coordinate ring of the orbit ``G·p`` for a finite diagonal group.

    Each character ``chi`` is represented by a monomial ``m_chi`` in the
    variables that do not vanish at ``p``; the arrow of ``x_i`` from ``chi``
    is the scalar ``p^(m_chi · x_i / m_{chi + w_i})``. Variables vanishing
    at ``p`` act by zero.
    """
    g = action.group
    if not g.is_finite:
        raise ModuleError("free orbits need a finite group")
    p = la.vector(point)
    if len(p) != len(action.variables):
        raise ModuleError(f"point needs {len(action.variables)} coordinates")
    live = [i for i, c in enumerate(p) if c != 0]
    # breadth-first search over characters reachable from the trivial one
    reps = {g.trivial: (0,) * len(p)}
    frontier = [g.trivial]
    while frontier:
        nxt = []
        for chi in frontier:
            for i in live:
                tgt = g.add(chi, action.variables[i][1])
                if tgt not in reps:
                    e = list(reps[chi])
                    e[i] += 1
                    reps[tgt] = tuple(e)
                    nxt.append(tgt)
        frontier = nxt
    if len(reps) != g.order:
        raise ModuleError("the orbit is not free: the weights of the non-vanishing coordinates do not generate the group")

    def value(exps) -> Fraction:
        out = Fraction(1)
        for c, e in zip(p, exps):
            out *= c**e
        return out

    arrows = {}
    for chi, e in reps.items():
        for i in live:
            var, w = action.variables[i]
            tgt = g.add(chi, w)
            up = list(e)
            up[i] += 1
            arrows[(var, chi)] = [[value(up) / value(reps[tgt])]]
    return EquivariantModule(action, {chi: 1 for chi in reps}, arrows)


def direct_sum(a: EquivariantModule, b: EquivariantModule) -> EquivariantModule:
    if a.action != b.action:
        raise ModuleError("direct sums need a common action")
    labels = set(a.dims) | set(b.dims)
    dims = {rho: a.dim(rho) + b.dim(rho) for rho in labels}
    arrows = {}
    for rho in labels:
        for var in a.action.names:
            tgt = a.target(var, rho)
            if not dims.get(tgt) or not dims[rho]:
                continue
            ma, mb = a.arrow(var, rho), b.arrow(var, rho)
            rows = []
            for r in range(a.dim(tgt)):
                rows.append(tuple(ma[r]) + (Fraction(0),) * b.dim(rho))
            for r in range(b.dim(tgt)):
                rows.append((Fraction(0),) * a.dim(rho) + tuple(mb[r]))
            arrows[(var, rho)] = rows
    return EquivariantModule(a.action, dims, arrows)


# --- closure and quotients -----------------------------------------------------


def submodule_generated(m: EquivariantModule, seed: Mapping) -> GradedSubspace:
    """Smallest arrow-closed graded subspace containing the seed vectors."""
    g = m.group
    spans = {}
    for rho, rows in seed.items():
        rho = g.validate(rho)
        rows = la.matrix(rows)
        if rows and len(rows[0]) != m.dim(rho):
            raise ModuleError(f"seed vectors for {rho} need {m.dim(rho)} coordinates")
        spans[rho] = la.span(rows) if rows else ()
    queue = [(rho, v) for rho, rows in spans.items() for v in rows]
    while queue:
        rho, v = queue.pop()
        for var in m.action.names:
            tgt, w = m.apply(var, rho, v)
            if not w or la.is_zero((w,)):
                continue
            current = spans.get(tgt, ())
            if la.in_span(w, current):
                continue
            spans[tgt] = la.span(current + (w,))
            queue.append((tgt, w))
    return GradedSubspace.of(g, spans)


def generated_in_dminus(m: EquivariantModule, dminus: Iterable[Label]) -> bool:
    """Whether the components indexed by ``dminus`` generate the whole module."""
    seed = {rho: la.identity(m.dim(rho)) for rho in dminus if m.dim(rho)}
    return submodule_generated(m, seed).total() == m.total_dim


def is_submodule(m: EquivariantModule, sub: GradedSubspace) -> bool:
    return submodule_generated(m, sub.spans) == sub


def quotient_module(m: EquivariantModule, sub: GradedSubspace) -> EquivariantModule:
    """``F / F'`` in the coordinates complementary to the pivots of ``F'``."""
    if not is_submodule(m, sub):
        raise ModuleError("quotient by a subspace that is not a submodule")
    keep = {}
    for rho, n in m.dims.items():
        _, pivots = la.rref(sub.rows(rho))
        keep[rho] = [i for i in range(n) if i not in pivots]

    def reduce(rho, v):
        rows = sub.rows(rho)
        _, pivots = la.rref(rows)
        v = list(v)
        for row, p in zip(rows, pivots):
            if v[p]:
                c = v[p]
                v = [x - c * y for x, y in zip(v, row)]
        return [v[i] for i in keep[rho]]

    arrows = {}
    for rho in m.dims:
        for var in m.action.names:
            tgt = m.target(var, rho)
            if not keep[rho] or not keep.get(tgt):
                continue
            cols = []
            for i in keep[rho]:
                _, w = m.apply(var, rho, la.unit(m.dim(rho), i))
                cols.append(reduce(tgt, w))
            arrows[(var, rho)] = la.transpose(tuple(tuple(c) for c in cols))
    return EquivariantModule(m.action, {rho: len(k) for rho, k in keep.items()}, arrows)


def submodule_as_module(m: EquivariantModule, sub: GradedSubspace) -> EquivariantModule:
    """``F'`` as a module in its own rref basis."""
    if not is_submodule(m, sub):
        raise ModuleError("not a submodule")
    arrows = {}
    for rho, rows in sub.parts:
        for var in m.action.names:
            tgt = m.target(var, rho)
            trows = sub.rows(tgt)
            if not trows:
                continue
            _, pivots = la.rref(trows)
            cols = []
            for v in rows:
                _, w = m.apply(var, rho, v)
                # coordinates in an rref basis are read off at the pivots
                cols.append([w[p] for p in pivots])
            arrows[(var, rho)] = la.transpose(tuple(tuple(c) for c in cols))
    return EquivariantModule(m.action, {rho: len(rows) for rho, rows in sub.parts}, arrows)


# --- enumeration --------------------------------------------------------------


@dataclass(frozen=True)
class SubmoduleFamily:
    """Enumerated submodules with an honesty flag.

    ``exact`` means the list is the complete submodule lattice (or its
    D_−-generated part); otherwise it is a sample of ``sample_size`` seeds.
    """

    submodules: tuple
    exact: bool
    sample_size: int

    def hilbert_functions(self, g: GroupSpec) -> tuple:
        seen = {s.hilbert(g) for s in self.submodules}
        return tuple(sorted(seen, key=HilbertFunction.sort_key))


def _successor_masks(m: EquivariantModule) -> tuple:
    labels = m.labels()
    pos = {rho: i for i, rho in enumerate(labels)}
    succ = np.zeros(len(labels), dtype=np.int64)
    for (var, src), mat in m.arrows.items():
        succ[pos[src]] |= np.int64(1) << pos[m.target(var, src)]
    return labels, succ


def _mask_to_subspace(m: EquivariantModule, labels: list, mask: int) -> GradedSubspace:
    return GradedSubspace.of(m.group, {rho: la.identity(1) for i, rho in enumerate(labels) if (mask >> i) & 1})


def enumerate_submodules(
    m: EquivariantModule,
    dminus_generated: bool = False,
    dminus: Iterable[Label] = (),
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> SubmoduleFamily:
    """Submodules of ``m``, optionally only those generated in ``dminus``.

    Multiplicity-free modules are handled exactly through arrow-closed
    subsets of the basis. Otherwise coordinate seeds and seeded random
    graded subspaces are closed up, and the family is marked as sampled.
    """
    dminus = set(dminus)
    if m.multiplicity_free:
        labels, succ = _successor_masks(m)
        if not dminus_generated:
            masks = kernels.closed_subsets(succ)
        else:
            idx = [i for i, rho in enumerate(labels) if rho in dminus]
            seeds = np.array(
                [sum(1 << i for i in combo) for r in range(len(idx) + 1) for combo in itertools.combinations(idx, r)],
                dtype=np.int64,
            )
            masks = np.unique(kernels.closure_masks(succ, seeds))
        subs = [_mask_to_subspace(m, labels, int(mask)) for mask in masks]
        return SubmoduleFamily(tuple(_canonical_order(m.group, subs)), True, len(subs))

    allowed = [rho for rho in m.dims if not dminus_generated or rho in dminus]
    basis = [(rho, i) for rho in allowed for i in range(m.dim(rho))]
    found = {GradedSubspace()}
    count = 0
    combos = itertools.chain.from_iterable(itertools.combinations(basis, r) for r in range(1, len(basis) + 1))
    for combo in itertools.islice(combos, COORDINATE_SEED_CAP):
        seed_vecs: dict = {}
        for rho, i in combo:
            seed_vecs.setdefault(rho, []).append(la.unit(m.dim(rho), i))
        found.add(submodule_generated(m, seed_vecs))
        count += 1
    rng = random.Random(seed)
    for _ in range(samples):
        seed_vecs = {}
        for rho in allowed:
            n = m.dim(rho)
            k = rng.randint(0, n)
            if k:
                seed_vecs[rho] = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(k)]
        found.add(submodule_generated(m, seed_vecs))
        count += 1
    return SubmoduleFamily(tuple(_canonical_order(m.group, found)), False, count)


def _canonical_order(g: GroupSpec, subs) -> list:
    return sorted(set(subs), key=lambda s: (s.hilbert(g).sort_key(), s.parts))


def enumerate_submodule_hilbert_functions(
    m: EquivariantModule,
    restrict_to_dminus_generated: bool = False,
    dminus: Iterable[Label] = (),
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> tuple:
    """``(sorted sub-Hilbert functions, exact flag)``."""
    fam = enumerate_submodules(m, restrict_to_dminus_generated, dminus, samples, seed)
    return fam.hilbert_functions(m.group), fam.exact


def brute_force_closed_subsets(m: EquivariantModule) -> set:
    """Arrow-closed basis subsets by direct search (test oracle, small modules)."""
    if not m.multiplicity_free:
        raise ModuleError("brute force only covers multiplicity-free modules")
    labels = m.labels()
    if len(labels) > 16:
        raise ExplosionError("too many components for brute force")
    out = set()
    for r in range(len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            chosen = set(combo)
            if all(
                m.target(var, src) in chosen
                for (var, src) in m.arrows
                if src in chosen
            ):
                out.add(frozenset(chosen))
    return out


# --- presentations and gauge -------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientPresentation:
    """A module with invertible frames ``phi_rho: A_rho -> F_rho`` on ``D_−``.

    ``frames[rho]`` is an ``h(rho) x h(rho)`` matrix whose columns are the
    images of the basis of ``A_rho``.
    """

    module: EquivariantModule
    dminus: frozenset
    frames: Mapping
    generated: bool = False

    def __post_init__(self):
        g = self.module.group
        dminus = frozenset(g.validate(r) for r in self.dminus)
        frames = {}
        for rho, mat in self.frames.items():
            rho = g.validate(rho)
            if rho not in dminus:
                raise PresentationError(f"frame given for {rho}, which is not in D_-")
            mat = la.matrix(mat)
            n = self.module.dim(rho)
            if la.shape(mat) != (n, n) or not la.is_invertible(mat):
                raise PresentationError(f"frame at {rho} must be an invertible {n}x{n} matrix")
            frames[rho] = mat
        for rho in dminus:
            if self.module.dim(rho) and rho not in frames:
                raise PresentationError(f"missing frame for {rho}")
        object.__setattr__(self, "dminus", dminus)
        object.__setattr__(self, "frames", dict(sorted(frames.items(), key=lambda kv: g.sort_key(kv[0]))))
        object.__setattr__(self, "generated", generated_in_dminus(self.module, dminus))

    @classmethod
    def standard(cls, module: EquivariantModule, dminus: Iterable[Label]) -> "QuotientPresentation":
        dminus = frozenset(dminus)
        return cls(module, dminus, {rho: la.identity(module.dim(rho)) for rho in dminus if module.dim(rho)})

    @property
    def group(self) -> GroupSpec:
        return self.module.group

    def a_dims(self) -> dict:
        return {rho: len(mat) for rho, mat in self.frames.items()}

    @property
    def dim_a(self) -> int:
        return sum(self.a_dims().values())

    def image(self, sub_a: GradedSubspace) -> dict:
        """``phi(A')`` as seed vectors per component."""
        out = {}
        for rho, rows in sub_a.parts:
            phi = self.frames[rho]
            out[rho] = [la.matvec(phi, r) for r in rows]
        return out

    def preimage(self, rho: Label, rows) -> tuple:
        if rho not in self.frames:
            return ()
        inv = la.inverse(self.frames[rho])
        return la.span([la.matvec(inv, r) for r in rows])

    def _key(self):
        return (self.module, self.dminus, tuple(self.frames.items()))

    def __eq__(self, other):
        return isinstance(other, QuotientPresentation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


@dataclass(frozen=True)
class GaugeElement:
    blocks: tuple

    def __post_init__(self):
        items = self.blocks.items() if isinstance(self.blocks, Mapping) else self.blocks
        clean = []
        for rho, mat in items:
            mat = la.matrix(mat)
            if not la.is_invertible(mat):
                raise PresentationError(f"gauge block at {rho} is not invertible")
            clean.append((rho, mat))
        object.__setattr__(self, "blocks", tuple(sorted(clean, key=lambda kv: label_key(kv[0]))))

    @property
    def block_map(self) -> dict:
        return dict(self.blocks)


def apply_gauge(p: QuotientPresentation, gamma: GaugeElement) -> QuotientPresentation:
    """Reframe ``phi_rho -> phi_rho · gamma_rho``; the module is untouched."""
    blocks = gamma.block_map
    if set(blocks) != set(p.frames):
        raise PresentationError("gauge blocks must match the framed components of D_-")
    frames = {}
    for rho, phi in p.frames.items():
        gb = blocks[rho]
        if la.shape(gb) != la.shape(phi):
            raise PresentationError(f"gauge block at {rho} has the wrong shape")
        frames[rho] = la.matmul(phi, gb)
    return QuotientPresentation(p.module, p.dminus, frames)


def random_invertible(n: int, rng: random.Random, spread: int = 3) -> tuple:
    while True:
        mat = la.matrix([[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)])
        if la.is_invertible(mat):
            return mat


def random_gauge(p: QuotientPresentation, rng: random.Random) -> GaugeElement:
    return GaugeElement({rho: random_invertible(len(phi), rng) for rho, phi in p.frames.items()})
