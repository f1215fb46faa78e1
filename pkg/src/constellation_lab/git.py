"""GIT data attached to a framed module: parameters, Mumford weights, saturation.

A presentation frames each ``F_rho`` (``rho`` in ``D_-``) by a space ``A_rho``
of the same dimension. One-parameter subgroups of the gauge group are
gradings of ``A = ⊕ A_rho``; their weights are computed from the submodules
``F^{>=n}`` generated by the images of ``A^{>=n}``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg as la
from .errors import InputError, PairingError, PresentationError, WindowError, check
from .groups import GroupSpec, Label
from .hilbert import HilbertFunction, ThetaVector, outside_sum, pairing
from .modules import (
    COORDINATE_SEED_CAP,
    DEFAULT_SAMPLES,
    GradedSubspace,
    QuotientPresentation,
    submodule_generated,
)
from .stability import StabilityVerdict, classify

# --- parameters ----------------------------------------------------------------


@dataclass(frozen=True)
class GitParameters:
    """Weights ``kappa`` on the window ``D`` and the character ``chi`` on ``D_-``."""

    group: GroupSpec
    h: HilbertFunction
    window: tuple
    dminus: tuple
    kappa: Mapping
    chi: Mapping
    dim_a: int
    kappa_f: Fraction
    s_d: Fraction
    d: int

    @property
    def positive_part(self) -> tuple:
        """``D \\ D_-``."""
        return tuple(r for r in self.window if r not in set(self.dminus))

    @property
    def integer_scale(self) -> int:
        """Smallest positive integer making every ``kappa`` and ``chi`` integral."""
        dens = [Fraction(v).denominator for v in list(self.kappa.values()) + list(self.chi.values())]
        return math.lcm(*dens) if dens else 1

    def scaled(self, t) -> "GitParameters":
        """Joint positive rescaling of ``(kappa, chi)``; every weight scales by ``t``."""
        t = la.frac(t)
        if t <= 0:
            raise InputError("scaling factor must be positive")
        return replace(
            self,
            kappa={r: t * v for r, v in self.kappa.items()},
            chi={r: t * v for r, v in self.chi.items()},
            kappa_f=t * self.kappa_f,
        )

    def kappa_of(self, dims: Mapping) -> Fraction:
        return sum((self.kappa[r] * dims.get(r, 0) for r in self.window), Fraction(0))

    def chi_of(self, dims: Mapping) -> Fraction:
        return sum((self.chi[r] * dims.get(r, 0) for r in self.dminus), Fraction(0))


def default_window(theta: ThetaVector, h: HilbertFunction) -> list:
    """``D_-`` together with the positive labels of ``supp h`` (finite ``h`` only)."""
    if not h.is_finite:
        raise WindowError("an infinite Hilbert function needs an explicit window")
    part = theta.sign_partition()
    pos = [r for r in h.support() if part.in_dplus(theta.group, r)]
    return sorted(set(part.dminus) | set(pos), key=theta.group.sort_key)


def derive_parameters(
    theta: ThetaVector,
    h: HilbertFunction,
    window: Iterable[Label] | None = None,
    kappa_minus: Mapping | None = None,
) -> GitParameters:
    """Choose ``kappa`` and ``chi`` so that the finite-window function tracks ``theta``.

    On ``D \\ D_-``: ``kappa_s = theta_s + S_D / (d h(s))``; on ``D_-``
    ``kappa`` is free (default 1) and ``chi_r = theta_r - kappa_r + kappa(F)/dim A``.
    """
    g = theta.group
    total = pairing(theta, h)
    if total != 0:
        raise PairingError(total)
    part = theta.sign_partition()
    D = default_window(theta, h) if window is None else sorted({g.validate(r) for r in window}, key=g.sort_key)
    dminus = sorted(part.dminus, key=g.sort_key)
    if not part.dminus <= set(D):
        raise WindowError(f"window must contain D_- = {dminus}")
    outside = [r for r in D if r not in part.dminus and not part.in_dplus(g, r)]
    if outside:
        raise WindowError(f"window labels {outside} are not in D_- or D_+")
    pos = [r for r in D if r not in part.dminus]
    zero_h = [r for r in pos if h[r] == 0]
    if zero_h:
        raise WindowError(f"h vanishes on window labels {zero_h} outside D_-")
    d = len(pos)
    if d == 0:
        raise WindowError("window has no label outside D_- (d = 0)")
    dim_a = sum(h[r] for r in dminus)
    if dim_a == 0:
        raise WindowError("h vanishes on D_-, so A = 0")
    kappa_minus = dict(kappa_minus or {})
    unknown = set(kappa_minus) - part.dminus
    if unknown:
        raise WindowError(f"kappa overrides given outside D_-: {sorted(unknown, key=g.sort_key)}")

    s_d = outside_sum(theta, h, D)
    kappa = {}
    for r in dminus:
        k = la.frac(kappa_minus.get(r, 1))
        if k <= 0:
            raise WindowError(f"kappa must be positive, got {k} at {r}")
        kappa[r] = k
    for s in pos:
        kappa[s] = theta[s] + s_d / (d * h[s])
    kappa_f = sum((kappa[r] * h[r] for r in D), Fraction(0))
    chi = {r: theta[r] - kappa[r] + kappa_f / dim_a for r in dminus}

    params = GitParameters(g, h, tuple(D), tuple(dminus), kappa, chi, dim_a, kappa_f, s_d, d)
    check(all(v > 0 for v in kappa.values()), "kappa has a non-positive entry")
    check(params.chi_of({r: h[r] for r in dminus}) == 0, "chi is not admissible")
    check(all(c < kappa_f / dim_a for c in chi.values()), "chi_r >= kappa(F)/dim A")
    return params


def theta_tilde(params: GitParameters, h: HilbertFunction, h_prime: HilbertFunction) -> Fraction:
    """The finite-window stability function evaluated on a sub-Hilbert function."""
    if h != params.h:
        raise InputError("h differs from the Hilbert function the parameters were derived for")
    for r in params.window:
        if h_prime[r] > h[r]:
            raise InputError(f"h'({r}) = {h_prime[r]} exceeds h({r}) = {h[r]}")
    shift = params.kappa_f / params.dim_a
    total = sum(((params.kappa[r] + params.chi[r] - shift) * h_prime[r] for r in params.dminus), Fraction(0))
    total += sum((params.kappa[s] * h_prime[s] for s in params.positive_part), Fraction(0))
    return total


def theta_tilde_verdict(
    params: GitParameters, sub_hilberts: Iterable[HilbertFunction], exact: bool = True, sample_size: int | None = None
) -> StabilityVerdict:
    h = params.h
    subs = [hp for hp in set(sub_hilberts) if not hp.is_zero() and hp != h]
    labels = sorted(set().union(h.explicit_labels(), *(hp.explicit_labels() for hp in subs)), key=params.group.sort_key)
    scored = [(hp, theta_tilde(params, h, hp)) for hp in subs]
    return classify(scored, lambda hp: tuple(hp[r] for r in labels), exact, sample_size)


# --- Mumford weights -------------------------------------------------------------


def _require_ready(p: QuotientPresentation, params: GitParameters) -> None:
    if set(p.dminus) != set(params.dminus):
        raise PresentationError("presentation and parameters disagree on D_-")
    for r in params.window:
        if p.module.dim(r) != params.h[r]:
            raise PresentationError(f"module has dim {p.module.dim(r)} at {r}, parameters expect {params.h[r]}")
    if not p.generated:
        raise PresentationError("module is not generated in D_-, so it is not a quotient of the framed sheaf")


def generated_by(p: QuotientPresentation, sub_a: GradedSubspace) -> GradedSubspace:
    """The submodule generated by ``phi(A')``."""
    return submodule_generated(p.module, p.image(sub_a))


def _dims(sub: GradedSubspace) -> dict:
    return {r: len(rows) for r, rows in sub.parts}


def _as_subspace(p: QuotientPresentation, sub_a) -> GradedSubspace:
    if isinstance(sub_a, GradedSubspace):
        sub = sub_a
    else:
        sub = GradedSubspace.of(p.group, sub_a)
    dims = p.a_dims()
    for r, rows in sub.parts:
        if r not in dims or len(rows[0]) != dims[r]:
            raise InputError(f"A' has a component at {r} that does not fit A")
    return sub


def mu_one_step(p: QuotientPresentation, params: GitParameters, sub_a) -> Fraction:
    """``dim A (kappa(F') + chi(A')) - dim A' kappa(F)`` with ``F'`` generated by ``A'``."""
    _require_ready(p, params)
    sub_a = _as_subspace(p, sub_a)
    if sub_a.is_zero() or sub_a.total() == p.dim_a:
        raise InputError("A' must be a proper non-zero graded subspace")
    sub_f = generated_by(p, sub_a)
    return params.dim_a * (params.kappa_of(_dims(sub_f)) + params.chi_of(_dims(sub_a))) - sub_a.total() * params.kappa_f


@dataclass(frozen=True)
class Filtration:
    """A grading ``A_rho = ⊕_n A_rho^n``; ``pieces`` holds ``(rho, n, rows)``."""

    pieces: tuple

    @classmethod
    def of(cls, grading: Mapping) -> "Filtration":
        pieces = []
        for rho, parts in grading.items():
            for n, rows in parts:
                rows = la.matrix(rows)
                if rows:
                    pieces.append((rho, int(n), rows))
        return cls(tuple(pieces))

    def weights(self) -> list:
        return sorted({n for _, n, _ in self.pieces})

    def part(self, p: QuotientPresentation, test) -> GradedSubspace:
        spans: dict = {}
        for rho, n, rows in self.pieces:
            if test(n):
                spans[rho] = spans.get(rho, ()) + rows
        return GradedSubspace.of(p.group, spans)

    def validate(self, p: QuotientPresentation) -> None:
        dims = p.a_dims()
        for rho, n, rows in self.pieces:
            if rho not in dims or len(rows[0]) != dims[rho]:
                raise InputError(f"graded piece at {rho} does not fit A")
        for rho, n in dims.items():
            rows = [r for lab, _, rs in self.pieces if lab == rho for r in rs]
            if len(rows) != n or la.rank(rows) != n:
                raise InputError(f"the graded pieces at {rho} do not form a direct sum decomposition of A_{rho}")
        if len(self.weights()) < 2:
            raise InputError("a filtration needs at least two distinct weights")


def mu_filtration(p: QuotientPresentation, params: GitParameters, f: Filtration) -> tuple:
    """Weight of a grading, computed from the graded pieces and by telescoping.

    Returns ``(graded, telescoped)``; they agree whenever ``chi`` is admissible.
    """
    _require_ready(p, params)
    f.validate(p)
    weights = f.weights()
    lo, hi = weights[0], weights[-1]
    kappa_ge = {}
    chi_ge = {}
    for n in range(lo, hi + 2):
        a_ge = f.part(p, lambda w, n=n: w >= n)
        kappa_ge[n] = params.kappa_of(_dims(generated_by(p, a_ge)))
        chi_ge[n] = params.chi_of(_dims(a_ge))
    graded = Fraction(0)
    for n in range(lo, hi + 1):
        chi_n = params.chi_of(_dims(f.part(p, lambda w, n=n: w == n)))
        graded += n * (kappa_ge[n] - kappa_ge[n + 1] + chi_n)
    big_n = -lo
    telescoped = sum((kappa_ge[n] + chi_ge[n] for n in range(-big_n + 1, hi + 1)), Fraction(0)) - big_n * params.kappa_f
    check(graded == telescoped, f"graded weight {graded} != telescoped weight {telescoped}")
    return graded, telescoped


def one_step_filtration(p: QuotientPresentation, sub_a, complement: Mapping | None = None) -> Filtration:
    """Weights ``dim A - dim A'`` on ``A'`` and ``-dim A'`` on a complement."""
    sub_a = _as_subspace(p, sub_a)
    k, n = sub_a.total(), p.dim_a
    grading: dict = {}
    for rho, size in p.a_dims().items():
        rows = sub_a.rows(rho)
        comp = la.matrix(complement[rho]) if complement and rho in complement else la.coordinate_complement(rows, size)
        grading[rho] = [(n - k, rows), (-k, comp)]
    return Filtration.of(grading)


# --- saturation -----------------------------------------------------------------


def saturate(p: QuotientPresentation, sub_a) -> tuple:
    """``(A~', F')``: ``F'`` generated by ``phi(A')`` and ``A~'_rho = phi_rho^{-1}(F'_rho)``."""
    sub_a = _as_subspace(p, sub_a)
    sub_f = generated_by(p, sub_a)
    sat = GradedSubspace.of(p.group, {r: p.preimage(r, sub_f.rows(r)) for r in p.frames if sub_f.rows(r)})
    check(sub_a <= sat, "saturation does not contain A'")
    check(generated_by(p, sat) == sub_f, "saturation generates a different submodule")
    return sat, sub_f


# --- verdicts ---------------------------------------------------------------------


def graded_subspaces(p: QuotientPresentation, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> tuple:
    """Proper non-zero graded subspaces of ``A`` to test: ``(list, exact, count)``.

    Exhaustive when every ``A_rho`` has dimension <= 1; otherwise coordinate
    subspaces plus seeded random ones.
    """
    dims = p.a_dims()
    basis = [(r, i) for r, n in dims.items() for i in range(n)]
    exact = all(n <= 1 for n in dims.values())
    found = set()
    combos = itertools.chain.from_iterable(itertools.combinations(basis, k) for k in range(1, len(basis)))
    if not exact:
        combos = itertools.islice(combos, COORDINATE_SEED_CAP)
    count = 0
    for combo in combos:
        spans: dict = {}
        for r, i in combo:
            spans.setdefault(r, []).append(la.unit(dims[r], i))
        found.add(GradedSubspace.of(p.group, spans))
        count += 1
    if not exact:
        rng = random.Random(seed)
        for _ in range(samples):
            spans = {}
            for r, n in dims.items():
                k = rng.randint(0, n)
                if k:
                    spans[r] = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(k)]
            sub = GradedSubspace.of(p.group, spans)
            count += 1
            if not sub.is_zero() and sub.total() < p.dim_a:
                found.add(sub)
    ordered = sorted(found, key=lambda s: (_dim_vector(p, s), s.parts))
    return ordered, exact, count


def _dim_vector(p: QuotientPresentation, sub: GradedSubspace) -> tuple:
    return tuple(sub.dim(r) for r in p.frames)


def git_verdict(
    p: QuotientPresentation, params: GitParameters, samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> StabilityVerdict:
    """The one-step criterion: sign of ``mu(A')`` over proper non-zero graded ``A'``."""
    _require_ready(p, params)
    subs, exact, count = graded_subspaces(p, samples, seed)
    scored = [(s, mu_one_step(p, params, s)) for s in subs]
    return classify(scored, lambda s: (_dim_vector(p, s), s.parts), exact, count)
