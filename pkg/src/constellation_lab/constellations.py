"""Monomial constellations: 0/1 arrow patterns on a basis with a given Hilbert function.

A pattern qualifies when its arrows commute and the basis can be given
``Z^n``-degrees with every non-zero arrow of ``x_i`` raising the degree by
``e_i``. The second condition keeps exactly the torus-fixed modules (it
rules out, e.g., the free orbit where ``x^3`` acts as 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ExplosionError, InputError, PresentationError
from .geometry import monomial_name
from .git import derive_parameters, git_verdict
from .hilbert import HilbertFunction, ThetaVector
from .modules import ActionSpec, EquivariantModule, QuotientPresentation, check_relations, generated_in_dminus
from .stability import StabilityVerdict, module_theta_verdict

DEFAULT_CAP = 1 << 16


@dataclass(frozen=True)
class ConstellationRecord:
    module: EquivariantModule
    theta: StabilityVerdict
    git: StabilityVerdict | None
    generated: bool
    basis_monomials: tuple | None


def _slots(action: ActionSpec, h: HilbertFunction) -> list:
    """``(var, src, tgt, rows, cols)`` for every arrow block with non-zero shape."""
    out = []
    for src in h.support():
        for var in action.names:
            tgt = action.group.add(src, action.weight(var))
            if h[tgt]:
                out.append((var, src, tgt, h[tgt], h[src]))
    return out


def _graded_degrees(m: EquivariantModule):
    """Relative ``Z^n`` degrees of the basis, or ``None`` if the arrows wrap around."""
    names = m.action.names
    n = len(names)
    edges: dict = {}
    for (var, src), mat in m.arrows.items():
        i = names.index(var)
        tgt = m.target(var, src)
        for r, row in enumerate(mat):
            for c, x in enumerate(row):
                if x:
                    step = tuple(int(k == i) for k in range(n))
                    edges.setdefault((src, c), []).append(((tgt, r), step))
                    edges.setdefault((tgt, r), []).append(((src, c), tuple(-s for s in step)))
    degree: dict = {}
    for start in m.basis():
        if start in degree:
            continue
        degree[start] = (0,) * n
        stack = [start]
        while stack:
            b = stack.pop()
            for nb, step in edges.get(b, []):
                want = tuple(x + s for x, s in zip(degree[b], step))
                if nb not in degree:
                    degree[nb] = want
                    stack.append(nb)
                elif degree[nb] != want:
                    return None
    return degree


def _canonical(m: EquivariantModule, slots: list) -> tuple:
    """Smallest arrow pattern over relabelings of the basis inside each component."""
    comps = [rho for rho in m.dims if m.dims[rho] > 1]
    if not comps:
        return tuple(m.arrow(v, s) for v, s, *_ in slots)
    best = None
    for perms in itertools.product(*(itertools.permutations(range(m.dims[c])) for c in comps)):
        pmap = dict(zip(comps, perms))

        def permuted(var, src, tgt):
            mat = m.arrow(var, src)
            pr = pmap.get(tgt, range(len(mat)))
            pc = pmap.get(src, range(len(mat[0]) if mat else 0))
            return tuple(tuple(mat[pr[r]][pc[c]] for c in range(len(pc))) for r in range(len(pr)))

        key = tuple(permuted(v, s, t) for v, s, t, *_ in slots)
        if best is None or key < best:
            best = key
    return best


def _cyclic_basis(m: EquivariantModule, degree: dict) -> tuple | None:
    """Exponent vectors of the basis when ``m`` is generated by one invariant vector."""
    rho0 = m.group.trivial
    if m.dim(rho0) != 1 or not generated_in_dminus(m, [rho0]):
        return None
    root = degree[(rho0, 0)]
    return tuple(sorted(tuple(a - b for a, b in zip(degree[v], root)) for v in m.basis()))


def monomial_patterns(action: ActionSpec, h: HilbertFunction, cap: int = DEFAULT_CAP) -> list:
    """All graded commuting 0/1 modules with Hilbert function ``h``, up to basis relabeling."""
    if not h.is_finite:
        raise InputError("monomial constellations need a finitely supported Hilbert function")
    if h.is_zero():
        return []
    slots = _slots(action, h)
    bits = sum(r * c for *_, r, c in slots)
    if 2**bits > cap:
        raise ExplosionError(f"{2 ** bits} arrow patterns exceed the cap {cap}")
    seen = set()
    out = []
    for pattern in itertools.product((0, 1), repeat=bits):
        arrows = {}
        pos = 0
        for var, src, tgt, r, c in slots:
            block = pattern[pos : pos + r * c]
            pos += r * c
            arrows[(var, src)] = [list(block[i * c : (i + 1) * c]) for i in range(r)]
        m = EquivariantModule(action, h.window, arrows, validate=False)
        if check_relations(m):
            continue
        degree = _graded_degrees(m)
        if degree is None:
            continue
        key = _canonical(m, slots)
        if key in seen:
            continue
        seen.add(key)
        out.append((EquivariantModule(action, h.window, arrows), degree))
    return out


def enumerate_monomial_constellations(
    action: ActionSpec, h: HilbertFunction, theta: ThetaVector, cap: int = DEFAULT_CAP
) -> list:
    """Classify every monomial constellation by theta- and GIT-stability."""
    patterns = monomial_patterns(action, h, cap)
    if not patterns:
        return []
    params = derive_parameters(theta, h)
    records = []
    for m, degree in patterns:
        tv = module_theta_verdict(theta, m)
        gen = generated_in_dminus(m, theta.dminus)
        gv = None
        if gen:
            try:
                gv = git_verdict(QuotientPresentation.standard(m, theta.dminus), params)
            except PresentationError:
                gv = None
        records.append(ConstellationRecord(m, tv, gv, gen, _cyclic_basis(m, degree)))
    return records


def staircases_with_hilbert(action: ActionSpec, h: HilbertFunction) -> list:
    """Monomial ideals ``I`` with ``C[x]/I`` having Hilbert function ``h``.

    Grows order ideals one outer corner at a time and keeps those whose
    character counts never exceed ``h``. Independent of the module code.
    """
    if not h.is_finite:
        raise InputError("needs a finitely supported Hilbert function")
    size = h.total()
    if size == 0:
        return []
    n = len(action.variables)
    target = {rho: v for rho, v in h.window.items() if v}

    def counts(ideal):
        c: dict = {}
        for mono in ideal:
            rho = action.monomial_weight(mono)
            c[rho] = c.get(rho, 0) + 1
        return c

    start = frozenset({(0,) * n})
    if counts(start).get(action.group.trivial, 0) > target.get(action.group.trivial, 0):
        return []
    level = {start}
    for _ in range(size - 1):
        nxt = set()
        for ideal in level:
            for mono in ideal:
                for i in range(n):
                    up = mono[:i] + (mono[i] + 1,) + mono[i + 1 :]
                    if up in ideal:
                        continue
                    # every divisor of the new monomial must already be present
                    if any(up[j] and up[:j] + (up[j] - 1,) + up[j + 1 :] not in ideal for j in range(n)):
                        continue
                    grown = ideal | {up}
                    c = counts(grown)
                    if all(c[rho] <= target.get(rho, 0) for rho in c):
                        nxt.add(grown)
        level = nxt
    return sorted((tuple(sorted(s)) for s in level if counts(s) == target))


def record_basis_names(action: ActionSpec, basis: tuple) -> list:
    return [monomial_name(action.names, e) for e in basis]

