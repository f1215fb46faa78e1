"""Invariant suites over the built-in corpus.

Each suite returns the number of cases it checked and raises
:class:`InternalCheckError` on the first violation. The test suite calls
the same functions with larger corpora.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from . import fixtures as fx
from . import kernels
from . import linalg as la
from .approximation import choose_window, error_between_windows, error_to_theta, majorant
from .constellations import enumerate_monomial_constellations, staircases_with_hilbert
from .errors import check
from .geometry import evaluate_generators, hilbert_chow_point, invariant_monomial_generators, satisfies_relations
from .git import (
    Filtration,
    derive_parameters,
    git_verdict,
    graded_subspaces,
    mu_filtration,
    mu_one_step,
    one_step_filtration,
    saturate,
    theta_tilde,
    theta_tilde_verdict,
)
from .groups import GroupSpec, decompose_sym_power, tensor
from .hilbert import HilbertFunction, ThetaVector, pairing, restrict_pairing
from .modules import (
    GradedSubspace,
    QuotientPresentation,
    apply_gauge,
    brute_force_closed_subsets,
    enumerate_submodules,
    generated_in_dminus,
    quotient_module,
    random_gauge,
    random_invertible,
    submodule_generated,
)
from .problem import ProblemFile, format_problem, parse_text
from .stability import STABLE, hilbert_scheme_mode_check, module_theta_verdict


def suite_groups(seed: int = 0, scale: int = 1) -> int:
    rng = random.Random(seed)
    cases = 0
    for _ in range(20 * scale):
        g = rng.choice([GroupSpec.cyclic(rng.randint(2, 7)), GroupSpec.abelian(2, 3), GroupSpec.torus(1), GroupSpec.sl2()])
        if g.kind == "sl2":
            a, b = rng.randint(0, 8), rng.randint(0, 8)
        elif g.is_finite:
            a, b = rng.choice(g.irreps()), rng.choice(g.irreps())
        else:
            a, b = (rng.randint(-5, 5),), (rng.randint(-5, 5),)
        ab, ba = tensor(g, a, b), tensor(g, b, a)
        check(ab == ba, f"tensor product not commutative for {a}, {b}")
        check(ab.dimension(g) == _dim(g, a) * _dim(g, b), f"tensor dimension not multiplicative for {a}, {b}")
        V = {a: rng.randint(1, 2), b: 1} if a != b else {a: 2}
        n = sum(m * _dim(g, r) for r, m in V.items())
        d = rng.randint(0, 4)
        dec = decompose_sym_power(g, V, d)
        check(dec.dimension(g) == math.comb(n + d - 1, d), f"Sym^{d} of {V} has the wrong dimension")
        cases += 1
    return cases


def _dim(g, rho) -> int:
    return rho + 1 if g.kind == "sl2" else 1


def suite_hilbert(seed: int = 0, scale: int = 1) -> int:
    rng = random.Random(seed)
    cases = 0
    for inst in fx.random_instances(seed, 10 * scale):
        h, theta = inst.module.hilbert, inst.theta
        check(pairing(theta, h) == 0, "random theta is not balanced")
        labels = h.support()
        h1 = HilbertFunction(h.group, {r: rng.randint(0, 3) for r in labels})
        h2 = HilbertFunction(h.group, {r: rng.randint(0, 3) for r in labels})
        check(pairing(theta, h1 + h2) == pairing(theta, h1) + pairing(theta, h2), "pairing is not additive")
        D = set(theta.dminus) | {r for r in labels if rng.random() < 0.5}
        inside, outside = restrict_pairing(theta, h1, D)
        check(inside + outside == pairing(theta, h1), "window split does not add up")
        cases += 1
    for theta in (fx.torus_symmetric_theta(), fx.torus_asymmetric_theta()):
        check(pairing(theta, fx.torus_h()) == 0, "torus fixture is not balanced")
        for n in range(0, 5):
            D = [(k,) for k in range(-n, n + 1)]
            inside, outside = restrict_pairing(theta, fx.torus_h(), D)
            check(inside + outside == 0, "torus window split does not add up")
            cases += 1
    return cases


def suite_modules(seed: int = 0, scale: int = 1) -> int:
    rng = random.Random(seed)
    cases = 0
    for inst in fx.random_instances(seed, 15 * scale):
        m = inst.module
        fam = enumerate_submodules(m)
        found = {frozenset(s.labels()) for s in fam.submodules}
        check(fam.exact, "multiplicity-free enumeration should be exact")
        check(found == brute_force_closed_subsets(m), "closed subsets disagree with the brute-force search")
        labels = m.labels()
        small = {r: la.identity(1) for r in labels if rng.random() < 0.3}
        big = {**small, **{r: la.identity(1) for r in labels if rng.random() < 0.3}}
        c1 = submodule_generated(m, small)
        check(submodule_generated(m, c1.spans) == c1, "closure is not idempotent")
        check(c1 <= submodule_generated(m, big), "closure is not monotone")
        q = quotient_module(m, c1)
        check(c1.hilbert(m.group) + q.hilbert == m.hilbert, "sub and quotient dimensions do not add up")
        cases += 1
    cases += _kernel_agreement(rng, 10 * scale)
    return cases


def _kernel_agreement(rng: random.Random, count: int) -> int:
    if not kernels.HAVE_NUMBA:
        return 0
    for _ in range(count):
        n = rng.randint(1, 9)
        succ = np.array([sum(1 << j for j in range(n) if rng.random() < 0.3) for _ in range(n)], dtype=np.int64)
        a = np.sort(kernels._closed_subsets_jit(succ))
        b = np.sort(kernels._closed_subsets_numpy(succ))
        check(np.array_equal(a, b), "jit and numpy closed subsets differ")
        seeds = np.array([rng.randrange(1 << n) for _ in range(5)], dtype=np.int64)
        check(
            np.array_equal(kernels._closure_masks_jit(succ, seeds), kernels._closure_masks_numpy(succ, seeds)),
            "jit and numpy closures differ",
        )
    return count


def suite_stability(seed: int = 0, scale: int = 1) -> int:
    cases = 0
    for inst in fx.named_instances() + fx.random_instances(seed, 20 * scale):
        full = module_theta_verdict(inst.theta, inst.module)
        restricted = module_theta_verdict(inst.theta, inst.module, dminus_only=True)
        check(full.status == restricted.status, f"{inst.name}: restricted verdict {restricted.status} != {full.status}")
        if full.exact and full.is_stable:
            check(generated_in_dminus(inst.module, inst.theta.dminus), f"{inst.name}: stable but not generated in D_-")
        cases += 1
    for inst in fx.hilbert_scheme_instances(seed + 1, 15 * scale):
        out = hilbert_scheme_mode_check(inst.theta, inst.module.hilbert, inst.module)
        check(out["agree"] is True, f"{inst.name}: stability and cyclicity disagree")
        cases += 1
    return cases


def _presentations(seed: int, count: int) -> list:
    """Generated instances as ``(presentation, theta, params)``, some with random frames."""
    rng = random.Random(seed)
    out = []
    for inst in fx.named_instances() + fx.random_instances(seed, count):
        m, theta = inst.module, inst.theta
        if not generated_in_dminus(m, theta.dminus):
            continue
        params = derive_parameters(theta, m.hilbert)
        frames = fx.random_frames(rng, m, theta.dminus)
        out.append((QuotientPresentation(m, theta.dminus, frames), theta, params))
    for p, theta in fx.multi_frame_presentations(seed, max(2, count // 5)):
        out.append((p, theta, derive_parameters(theta, p.module.hilbert)))
    return out


def suite_parameters(seed: int = 0, scale: int = 1) -> int:
    """Admissibility, and theta~ = theta for finitely supported theta."""
    cases = 0
    for p, theta, params in _presentations(seed, 20 * scale):
        h = p.module.hilbert
        check(theta_tilde(params, h, h) == 0 == pairing(theta, h), "theta~(F) or theta(F) is not 0")
        check(sum(params.chi[r] * h[r] for r in params.dminus) == 0, "chi is not admissible")
        if p.module.multiplicity_free:
            subs = enumerate_submodules(p.module).hilbert_functions(p.group)
        else:
            graded, _, _ = graded_subspaces(p, samples=8, seed=seed)
            subs = {saturate(p, s)[1].hilbert(p.group) for s in graded}
        for hp in subs:
            check(theta_tilde(params, h, hp) == pairing(theta, hp), f"theta~ != theta at {hp}")
        cases += 1
    return cases


def random_filtration(p: QuotientPresentation, rng: random.Random) -> Filtration:
    """Random weights on a random basis of each ``A_rho``, with at least two weights."""
    while True:
        grading = {}
        weights = []
        for rho, n in p.a_dims().items():
            basis = random_invertible(n, rng)
            parts = []
            for row in basis:
                w = rng.randint(-3, 3)
                weights.append(w)
                parts.append((w, [row]))
            grading[rho] = parts
        if len(set(weights)) >= 2:
            return Filtration.of(grading)


def random_proper_subspace(p: QuotientPresentation, rng: random.Random) -> GradedSubspace:
    while True:
        spans = {}
        for rho, n in p.a_dims().items():
            k = rng.randint(0, n)
            if k:
                spans[rho] = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(k)]
        sub = GradedSubspace.of(p.group, spans)
        if not sub.is_zero() and sub.total() < p.dim_a:
            return sub


def suite_mu(seed: int = 0, scale: int = 1, minimum: int = 0) -> int:
    """Graded and telescoped weights agree; one-step filtrations give ``mu_one_step``."""
    rng = random.Random(seed)
    cases = 0
    pool = [item for item in _presentations(seed, 20 * scale) if item[0].dim_a >= 2]
    target = max(minimum, len(pool))
    while cases < target:
        p, _, params = pool[cases % len(pool)]
        graded, telescoped = mu_filtration(p, params, random_filtration(p, rng))
        check(graded == telescoped, "graded and telescoped weights differ")
        sub = random_proper_subspace(p, rng)
        one, _ = mu_filtration(p, params, one_step_filtration(p, sub))
        check(one == mu_one_step(p, params, sub), "one-step filtration weight differs from mu(A')")
        cases += 1
    return cases


def suite_saturation(seed: int = 0, scale: int = 1) -> int:
    """``dim A * theta~(F') = mu(saturation of A')``, saturation is idempotent, weights scale."""
    rng = random.Random(seed)
    cases = 0
    for p, _, params in _presentations(seed, 20 * scale):
        h = p.module.hilbert
        subs, _, _ = graded_subspaces(p, samples=8, seed=seed)
        for sub in subs:
            sat, sub_f = saturate(p, sub)
            check(saturate(p, sat)[0] == sat, "saturation is not idempotent")
            if sat.total() == p.dim_a:
                continue
            lhs = params.dim_a * theta_tilde(params, h, sub_f.hilbert(p.group))
            check(lhs == mu_one_step(p, params, sat), f"dim A theta~(F') = {lhs} != mu of the saturation")
            t = Fraction(rng.randint(1, 5), rng.randint(1, 3))
            check(mu_one_step(p, params.scaled(t), sub) == t * mu_one_step(p, params, sub), "mu does not scale")
            cases += 1
    return cases


def suite_git_vs_theta(seed: int = 0, scale: int = 1) -> int:
    """GIT verdict = theta~ verdict; theta-stable implies GIT-stable for the chosen window."""
    cases = 0
    for inst in fx.named_instances() + fx.random_instances(seed, 20 * scale):
        m, theta = inst.module, inst.theta
        if not generated_in_dminus(m, theta.dminus):
            continue
        params = derive_parameters(theta, m.hilbert)
        p = QuotientPresentation.standard(m, theta.dminus)
        gv = git_verdict(p, params)
        fam = enumerate_submodules(m)
        tv = theta_tilde_verdict(params, fam.hilbert_functions(m.group), fam.exact, fam.sample_size)
        if all(theta[r] != 0 for r in m.hilbert.support()):
            check(gv.status == tv.status, f"{inst.name}: GIT {gv.status} but theta~ {tv.status}")
        else:
            # a submodule inside D_0 has theta~ = 0 but is invisible to graded subspaces of A
            check(gv.is_semistable == tv.is_semistable, f"{inst.name}: GIT {gv.status} but theta~ {tv.status}")
        full = module_theta_verdict(theta, m)
        if full.is_stable:
            cands = [hp for hp in fam.hilbert_functions(m.group) if not hp.is_zero() and hp != m.hilbert]
            choice = choose_window(theta, m.hilbert, cands)
            gv2 = git_verdict(p, derive_parameters(theta, m.hilbert, choice.window))
            check(gv2.is_stable, f"{inst.name}: theta-stable but not GIT-stable on the chosen window")
        cases += 1
    return cases


def _inverse_image(p: QuotientPresentation, sub: GradedSubspace, gamma) -> GradedSubspace:
    """``gamma^-1 A'``, which the reframed presentation sends where ``p`` sends ``A'``."""
    blocks = gamma.block_map
    return GradedSubspace.of(p.group, {r: [la.matvec(la.inverse(blocks[r]), v) for v in rows] for r, rows in sub.parts})


def suite_gauge(seed: int = 0, scale: int = 1, gauges: int = 20) -> int:
    """Verdicts, weights, theta values and the invariant point do not see the frame."""
    rng = random.Random(seed)
    cases = 0
    for p, theta, params in _presentations(seed, 5 * scale):
        base = git_verdict(p, params, samples=8, seed=seed)
        probes = [random_proper_subspace(p, rng) for _ in range(3)] if p.dim_a >= 2 else []
        mus = [mu_one_step(p, params, s) for s in probes]
        thetas = [pairing(theta, saturate(p, s)[1].hilbert(p.group)) for s in probes]
        eta = _eta(p.module)
        for _ in range(gauges):
            gamma = random_gauge(p, rng)
            q = apply_gauge(p, gamma)
            v = git_verdict(q, params, samples=8, seed=seed)
            if base.exact:
                check((v.status, v.value) == (base.status, base.value), "GIT verdict changed under a gauge")
            for s, mu, th in zip(probes, mus, thetas):
                moved = _inverse_image(p, s, gamma)
                check(mu_one_step(q, params, moved) == mu, "mu changed under a gauge")
                check(pairing(theta, saturate(q, moved)[1].hilbert(p.group)) == th, "theta value changed")
            check(_eta(q.module) == eta, "invariant point changed under a gauge")
            cases += 1
    return cases


def _eta(m):
    if m.dim(m.group.trivial) != 1:
        return None
    return hilbert_chow_point(m, invariant_monomial_generators(m.action)).values


def suite_approximation(seed: int = 0, scale: int = 1) -> int:
    cases = 0
    asym, sym, h, hp = fx.torus_asymmetric_theta(), fx.torus_symmetric_theta(), fx.torus_h(), fx.torus_upper_half()

    def box(n):
        return [(k,) for k in range(-n, n + 1)]

    check(error_to_theta(asym, h, hp, box(2)) == Fraction(7, 72), "asymmetric error at [-2,2] is not 7/72")
    for n in range(1, 9 + 3 * scale):
        err = error_to_theta(asym, h, hp, box(n))
        check(err == Fraction(1, 2 ** (n + 1)) - Fraction(1, 4 * 3**n), f"asymmetric error at N={n} off the closed form")
        check(abs(err) <= majorant(asym, h, box(n)), "error exceeds the majorant")
        check(error_to_theta(sym, h, hp, box(n)) == 0, f"symmetric error at N={n} is not 0")
        error_between_windows(asym, h, hp, box(n), box(n + 1))
        error_between_windows(sym, h, hp, box(n), box(n + 1))
        cases += 1
    check(error_to_theta(asym, h, hp, box(9)) < Fraction(1, 1000), "error at N=9 is not below 1/1000")
    return cases


def suite_geometry(seed: int = 0, scale: int = 1, points: int = 50) -> int:
    rng = random.Random(seed)
    action = fx.z3_action()
    gens = invariant_monomial_generators(action)
    cases = 0
    for _ in range(points * scale):
        pt = fx.random_point(rng, 2, 0.2)
        if not any(pt):
            continue
        eta = hilbert_chow_point(fx.free_orbit_module(action, pt), gens)
        check(eta.values == evaluate_generators(gens, pt), f"invariant point of the orbit through {pt} is wrong")
        check(satisfies_relations(eta), "invariant point violates a binomial relation")
        cases += 1
    check(hilbert_chow_point(fx.z3_nilpotent(), gens).values == (0, 0, 0), "nilpotent module is not at the origin")
    check(hilbert_chow_point(fx.z3_free_orbit((1, 0)), gens).values == (1, 0, 0), "orbit through (1,0) is not (1,0,0)")
    return cases + 2


def suite_constellations(seed: int = 0, scale: int = 1) -> int:
    cases = 0
    cases_spec = [
        (fx.z2_action(), HilbertFunction.from_values(fx.Z2, [1, 1]), ThetaVector.from_values(fx.Z2, [-1, 1]), 2),
        (fx.z3_action(), HilbertFunction.from_values(fx.Z3, [1, 1, 1]), ThetaVector.from_values(fx.Z3, [-2, 1, 1]), 3),
    ]
    for action, h, theta, expected in cases_spec:
        records = enumerate_monomial_constellations(action, h, theta)
        stable = sorted(r.basis_monomials for r in records if r.theta.status == STABLE)
        oracle = staircases_with_hilbert(action, h)
        check(len(stable) == expected == len(oracle), f"found {len(stable)} stable constellations, expected {expected}")
        check(stable == sorted(oracle), "stable bases differ from the monomial-ideal oracle")
        cases += 1
    return cases


def suite_problems(seed: int = 0, scale: int = 1) -> int:
    cases = 0
    items = [
        ProblemFile(group=fx.Z3, action=fx.z3_action(), theta=fx.z3_theta(), module=fx.z3_free_orbit(), kappa_minus={(0,): Fraction(1), (1,): Fraction(1)}),
        ProblemFile(group=fx.Z3, action=fx.z3_action(), theta=fx.z3_theta(), module=fx.z3_nilpotent(), window=((0,), (1,), (2,))),
        ProblemFile(
            group=fx.TORUS,
            theta=fx.torus_asymmetric_theta(),
            hilbert=fx.torus_h(),
            hprime=fx.torus_upper_half(),
            candidates=[fx.torus_upper_half()],
            task={"windows": (1, 9), "bound": Fraction(1, 1000)},
        ),
    ]
    for inst in fx.random_instances(seed, 5 * scale):
        items.append(ProblemFile(group=inst.module.group, action=inst.module.action, theta=inst.theta, module=inst.module, task={"seed": seed}))
    for p in items:
        check(parse_text(format_problem(p)) == p, "problem file does not survive a print/parse round trip")
        cases += 1
    return cases


SUITES = {
    "groups": suite_groups,
    "hilbert": suite_hilbert,
    "modules": suite_modules,
    "stability": suite_stability,
    "parameters": suite_parameters,
    "mu": suite_mu,
    "saturation": suite_saturation,
    "git_vs_theta": suite_git_vs_theta,
    "gauge": suite_gauge,
    "approximation": suite_approximation,
    "geometry": suite_geometry,
    "constellations": suite_constellations,
    "problems": suite_problems,
}


def run_all(seed: int = 0, scale: int = 1) -> dict:
    """Run every suite; the first violation propagates as :class:`InternalCheckError`."""
    return {"suites": {name: {"cases": fn(seed, scale)} for name, fn in SUITES.items()}, "violations": 0}
