"""Named example data and seeded random generators for self-tests and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import InputError
from .groups import GroupSpec
from .hilbert import ConstantTail, GeometricTail, HilbertFunction, ThetaVector, ZeroTail
from .modules import (
    ActionSpec,
    EquivariantModule,
    QuotientPresentation,
    check_relations,
    direct_sum,
    enumerate_submodules,
    free_orbit_module,
    from_monomial_basis,
    generated_in_dminus,
    quotient_module,
    random_invertible,
    submodule_as_module,
)

# --- named examples ---------------------------------------------------------------

Z2 = GroupSpec.cyclic(2)
Z3 = GroupSpec.cyclic(3)
TORUS = GroupSpec.torus(1)


def z2_action() -> ActionSpec:
    return ActionSpec(Z2, [("x", (1,)), ("y", (1,))])


def z3_action() -> ActionSpec:
    return ActionSpec(Z3, [("x", (2,)), ("y", (1,))])


def z3_theta() -> ThetaVector:
    return ThetaVector.from_values(Z3, [-2, -1, 3])


def z3_free_orbit(point=(1, 0)) -> EquivariantModule:
    return free_orbit_module(z3_action(), point)


def z3_nilpotent() -> EquivariantModule:
    """``C[x,y]/(y, x^3)``."""
    return from_monomial_basis(z3_action(), [(0, 0), (1, 0), (2, 0)])


def z2_fat_point() -> EquivariantModule:
    """``C[x,y]/(x,y)^2``: components of dimension 1 and 2."""
    return from_monomial_basis(z2_action(), [(0, 0), (1, 0), (0, 1)])


def torus_h() -> HilbertFunction:
    return HilbertFunction(TORUS, {(0,): 1}, ConstantTail({"+": 1, "-": 1}))


def torus_upper_half() -> HilbertFunction:
    """The indicator of ``n >= 1``."""
    return HilbertFunction(TORUS, {}, ConstantTail({"+": 1}))


def torus_symmetric_theta() -> ThetaVector:
    """``-2`` at 0 and ``2^-|n|`` elsewhere."""
    half = Fraction(1, 2)
    return ThetaVector(TORUS, {(0,): -2}, GeometricTail({"+": (half, 1), "-": (half, 1)}))


def torus_asymmetric_theta() -> ThetaVector:
    """``-3/2`` at 0, ``2^-n`` for ``n > 0`` and ``3^n`` for ``n < 0``."""
    return ThetaVector(
        TORUS, {(0,): Fraction(-3, 2)}, GeometricTail({"+": (Fraction(1, 2), 1), "-": (Fraction(1, 3), 1)})
    )


# --- random data ------------------------------------------------------------------

SCALARS = (0, 0, 1, 1, 1, 2, -1, Fraction(1, 2), Fraction(-3, 2))


def random_action(rng: random.Random) -> ActionSpec:
    g = rng.choice([GroupSpec.cyclic(2), GroupSpec.cyclic(3), GroupSpec.cyclic(4), GroupSpec.cyclic(5), GroupSpec.abelian(2, 2)])
    labels = g.irreps()
    nvars = rng.choice([1, 2, 2, 3])
    names = ["x", "y", "z"][:nvars]
    return ActionSpec(g, [(n, rng.choice(labels[1:])) for n in names])


def random_arrow_module(rng: random.Random, action: ActionSpec, tries: int = 400) -> EquivariantModule:
    """Multiplicity-free module with random scalar arrows, resampled until the arrows commute."""
    g = action.group
    labels = g.irreps()
    for _ in range(tries):
        support = [r for r in labels if rng.random() < 0.7] or [g.trivial]
        dims = {r: 1 for r in support}
        arrows = {}
        for src in support:
            for var in action.names:
                tgt = g.add(src, action.weight(var))
                if tgt in dims:
                    arrows[(var, src)] = [[la.frac(rng.choice(SCALARS))]]
        m = EquivariantModule(action, dims, arrows, validate=False)
        if not check_relations(m):
            return EquivariantModule(action, dims, arrows)
    return EquivariantModule(action, {g.trivial: 1}, {})


def random_point(rng: random.Random, n: int, zero_prob: float = 0.0) -> tuple:
    out = []
    for _ in range(n):
        if rng.random() < zero_prob:
            out.append(Fraction(0))
        else:
            out.append(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3])))
    return tuple(out)


def random_free_orbit(rng: random.Random, action: ActionSpec) -> EquivariantModule | None:
    for _ in range(8):
        try:
            return free_orbit_module(action, random_point(rng, len(action.variables), 0.3))
        except InputError:
            continue
    return None


def random_multiplicity_free(rng: random.Random, action: ActionSpec | None = None) -> EquivariantModule:
    """A multiplicity-free module from one of several recipes."""
    action = action or random_action(rng)
    recipe = rng.randrange(4)
    if recipe == 0:
        orbit = random_free_orbit(rng, action)
        if orbit is not None:
            return orbit
    if recipe == 1:
        orbit = random_free_orbit(rng, action)
        if orbit is not None:
            fam = enumerate_submodules(orbit)
            sub = rng.choice(fam.submodules)
            m = quotient_module(orbit, sub) if rng.random() < 0.5 else submodule_as_module(orbit, sub)
            if m.total_dim:
                return m
    if recipe == 2:
        a = random_arrow_module(rng, action)
        b = random_arrow_module(rng, action)
        free = {r: 1 for r in b.dims if r not in a.dims}
        if free:
            b = EquivariantModule(action, free, {k: v for k, v in b.arrows.items() if k[1] in free and b.target(*k) in free})
            return direct_sum(a, b)
    return random_arrow_module(rng, action)


def random_theta(rng: random.Random, h: HilbertFunction, zero_prob: float = 0.15) -> ThetaVector | None:
    """A theta on ``supp h`` with ``<theta, h> = 0`` and at least one sign of each kind."""
    g = h.group
    supp = h.support()
    if len(supp) < 2:
        return None
    for _ in range(16):
        values = {}
        for r in supp:
            roll = rng.random()
            if roll < zero_prob:
                values[r] = Fraction(0)
            elif roll < 0.5:
                values[r] = -Fraction(rng.randint(1, 4), rng.choice([1, 2]))
            else:
                values[r] = Fraction(rng.randint(1, 4), rng.choice([1, 3]))
        neg = [r for r in supp if values[r] < 0]
        pos = [r for r in supp if values[r] > 0]
        if not neg or not pos:
            continue
        p = sum(values[r] * h[r] for r in pos)
        n = -sum(values[r] * h[r] for r in neg)
        for r in neg:
            values[r] *= p / n
        return ThetaVector(g, values, ZeroTail())
    return None


def random_hilbert_scheme_theta(rng: random.Random, h: HilbertFunction) -> ThetaVector | None:
    """Negative exactly at the trivial label and positive on the rest of ``supp h``."""
    g = h.group
    rho0 = g.trivial
    others = [r for r in h.support() if r != rho0]
    if h[rho0] != 1 or not others:
        return None
    values = {r: Fraction(rng.randint(1, 5), rng.choice([1, 2])) for r in others}
    values[rho0] = -sum(values[r] * h[r] for r in others)
    return ThetaVector(g, values, ZeroTail())


def random_frames(rng: random.Random, m: EquivariantModule, dminus) -> dict:
    return {r: random_invertible(m.dim(r), rng) for r in dminus if m.dim(r)}


@dataclass(frozen=True)
class Instance:
    name: str
    module: EquivariantModule
    theta: ThetaVector


def named_instances() -> list:
    out = [
        Instance("z3-free-orbit", z3_free_orbit(), z3_theta()),
        Instance("z3-nilpotent", z3_nilpotent(), z3_theta()),
        Instance("z3-orbit-2-3/5", z3_free_orbit((2, Fraction(3, 5))), ThetaVector.from_values(Z3, [-2, 1, 1])),
        Instance("z2-ideal-x2-y", from_monomial_basis(z2_action(), [(0, 0), (1, 0)]), ThetaVector.from_values(Z2, [-1, 1])),
    ]
    split = direct_sum(
        EquivariantModule(z2_action(), {(0,): 1}, {}), EquivariantModule(z2_action(), {(1,): 1}, {})
    )
    out.append(Instance("z2-split", split, ThetaVector.from_values(Z2, [-1, 1])))
    return out


def random_instances(seed: int, count: int, max_dim: int = 12) -> list:
    """Multiplicity-free modules with a balanced random theta."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        m = random_multiplicity_free(rng)
        if m.total_dim > max_dim:
            continue
        theta = random_theta(rng, m.hilbert)
        if theta is None:
            continue
        out.append(Instance(f"random-{seed}-{len(out)}", m, theta))
    return out


def hilbert_scheme_instances(seed: int, count: int) -> list:
    """Multiplicity-free modules with a one-dimensional invariant part and matching theta."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        m = random_multiplicity_free(rng)
        theta = random_hilbert_scheme_theta(rng, m.hilbert)
        if theta is None:
            continue
        out.append(Instance(f"hilb-{seed}-{len(out)}", m, theta))
    return out


def multi_frame_presentations(seed: int, count: int) -> list:
    """``(presentation, theta)`` whose framed space has some component of dimension >= 2.

    Built from sums of free orbits, each generated by its invariant line.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        action = rng.choice([z3_action(), z2_action(), ActionSpec(GroupSpec.cyclic(4), [("x", (1,)), ("y", (3,))])])
        k = rng.choice([2, 2, 3])
        parts = []
        while len(parts) < k:
            orbit = random_free_orbit(rng, action)
            if orbit is not None:
                parts.append(orbit)
        m = parts[0]
        for extra in parts[1:]:
            m = direct_sum(m, extra)
        rho0 = action.group.trivial
        theta = random_hilbert_scheme_theta(rng, m.hilbert) if m.dim(rho0) == 1 else None
        if theta is None:
            others = [r for r in m.hilbert.support() if r != rho0]
            values = {r: Fraction(rng.randint(1, 4)) for r in others}
            values[rho0] = -sum(values[r] * m.dim(r) for r in others) / m.dim(rho0)
            theta = ThetaVector(action.group, values, ZeroTail())
        if not generated_in_dminus(m, theta.dminus):
            continue
        out.append((QuotientPresentation(m, theta.dminus, random_frames(rng, m, theta.dminus)), theta))
    return out
