"""The twelve acceptance criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py``.

Criteria 8 and 9 are stated for every multiplicity-free instance, and they
fail for strict stability when a submodule lives entirely in ``D_0``
(labels of ``supp h`` with ``theta = 0``). Their lines report the literal
outcome. The tests themselves assert the analysis: every mismatch is of
that kind, semistability always agrees, and without such labels the
statements hold.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from constellation_lab import fixtures as fx
from constellation_lab import selftest
from constellation_lab.approximation import choose_window, derive_parameters, error_between_windows, error_to_theta
from constellation_lab.constellations import enumerate_monomial_constellations
from constellation_lab.git import git_verdict, mu_one_step, theta_tilde, theta_tilde_verdict
from constellation_lab.groups import GroupSpec
from constellation_lab.hilbert import HilbertFunction, ThetaVector, pairing
from constellation_lab.modules import (
    ActionSpec,
    EquivariantModule,
    GradedSubspace,
    QuotientPresentation,
    enumerate_submodules,
    generated_in_dminus,
)
from constellation_lab.stability import STABLE, UNSTABLE, hilbert_scheme_mode_check, module_theta_verdict, theta_verdict

import oracles

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover
    ACCEPTANCE_LINES = {}

TITLES = {
    1: "monomial constellation counts (Z/2: 2, Z/3: 3)",
    2: "worked Z/3 parameters and weights",
    3: "graded/telescoped/one-step weights, >= 200 instances",
    4: "dim A * theta~ = mu of the saturation",
    5: "admissible parameters, theta~ = theta for finite theta",
    6: "error formulas, 7/72 and symmetric 0",
    7: "asymmetric error closed form, below 1/1000 at N = 9",
    8: "stable => generated; D_- restricted verdict = full verdict",
    9: "GIT verdict = theta~ verdict; theta-stable => GIT-stable",
    10: "gauge invariance, 20 gauges per fixture",
    11: "invariant point of orbits and named modules",
    12: "theta-stable <=> cyclic from the invariant line",
}


def report(n: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES[n] = line
    print(line)


def box(n):
    return [(k,) for k in range(-n, n + 1)]


def zero_label_instance() -> fx.Instance:
    """Z/5: chi_4 maps to chi_1 by x and to chi_3 by y, theta vanishes at chi_3."""
    g = GroupSpec.cyclic(5)
    m = EquivariantModule(
        ActionSpec(g, [("x", (2,)), ("y", (4,))]),
        {(1,): 1, (3,): 1, (4,): 1},
        {("x", (4,)): [[-1]], ("y", (4,)): [[1]]},
    )
    return fx.Instance("z5-zero-label", m, ThetaVector(g, {(1,): 1, (3,): 0, (4,): -1}))


def corpus() -> list:
    out = fx.named_instances() + [zero_label_instance()]
    for seed in range(5):
        out += fx.random_instances(seed, 40)
    return out


def has_zero_label(inst) -> bool:
    return any(inst.theta[r] == 0 for r in inst.module.hilbert.support())


# --- 1 ---------------------------------------------------------------------------


def test_criterion_01_monomial_constellations():
    cases = [
        (fx.z2_action(), [1, 1], [-1, 1], 2, (1, 1), 2),
        (fx.z3_action(), [1, 1, 1], [-2, 1, 1], 3, (2, 1), 3),
    ]
    ok = True
    for action, h, theta, n, weights, expected in cases:
        g = action.group
        records = enumerate_monomial_constellations(
            action, HilbertFunction.from_values(g, h), ThetaVector.from_values(g, theta)
        )
        stable = sorted(r.basis_monomials for r in records if r.theta.status == STABLE)
        oracle = [tuple(s) for s in oracles.monomial_ideals(list(weights), n, tuple(h))]
        ok &= len(stable) == expected and stable == oracle
    report(1, ok)
    assert ok


# --- 2 ---------------------------------------------------------------------------


def test_criterion_02_worked_example():
    g = fx.Z3
    theta = fx.z3_theta()
    h = HilbertFunction.from_values(g, [1, 1, 1])
    params = derive_parameters(theta, h, g.irreps(), {(0,): 1, (1,): 1})
    a0 = GradedSubspace.of(g, {(0,): [[1]]})
    a1 = GradedSubspace.of(g, {(1,): [[1]]})
    orbit = QuotientPresentation.standard(fx.z3_free_orbit(), theta.dminus)
    nil = QuotientPresentation.standard(fx.z3_nilpotent(), theta.dminus)
    nil_verdict = module_theta_verdict(theta, fx.z3_nilpotent())
    checks = [
        params.chi == {(0,): Fraction(-1, 2), (1,): Fraction(1, 2)},
        params.kappa_f == 5,
        params.dim_a == 2,
        mu_one_step(orbit, params, a0) == 4,
        mu_one_step(orbit, params, a1) == 6,
        git_verdict(orbit, params).status == STABLE,
        module_theta_verdict(theta, fx.z3_free_orbit()).status == STABLE,
        mu_one_step(nil, params, a1) == -2,
        git_verdict(nil, params).status == UNSTABLE,
        nil_verdict.status == UNSTABLE,
        nil_verdict.witness == HilbertFunction.from_values(g, [0, 1, 0]),
        nil_verdict.value == -1,
    ]
    report(2, all(checks))
    assert all(checks)


# --- 3, 4, 5 ---------------------------------------------------------------------


def test_criterion_03_weight_identities():
    n = selftest.suite_mu(0, 1, minimum=200)
    report(3, n >= 200, f"{n} instances")
    assert n >= 200


def test_criterion_04_saturation_identity():
    n = sum(selftest.suite_saturation(seed, 3) for seed in range(6))
    report(4, n > 0, f"{n} saturated subspaces")
    assert n > 0


def test_criterion_05_admissible_parameters():
    n = sum(selftest.suite_parameters(seed, 1) for seed in range(3))
    h = fx.torus_h()
    ok = True
    for theta in (fx.torus_asymmetric_theta(), fx.torus_symmetric_theta()):
        for radius in range(1, 8):
            params = derive_parameters(theta, h, box(radius))
            ok &= pairing(theta, h) == 0 == theta_tilde(params, h, h)
            ok &= sum(params.chi[r] * h[r] for r in params.dminus) == 0
            n += 1
    report(5, ok and n > 0, f"{n} parameter sets")
    assert ok


# --- 6, 7 ------------------------------------------------------------------------


def test_criterion_06_error_formulas():
    asym, sym, h, hp = fx.torus_asymmetric_theta(), fx.torus_symmetric_theta(), fx.torus_h(), fx.torus_upper_half()
    # both functions raise if the closed formula and the direct difference disagree
    for n in range(1, 12):
        for theta in (asym, sym):
            error_to_theta(theta, h, hp, box(n))
            error_between_windows(theta, h, hp, box(n), box(n + 1))
    ok = error_to_theta(asym, h, hp, box(2)) == Fraction(7, 72)
    ok &= all(error_to_theta(sym, h, hp, box(n)) == 0 for n in range(1, 21))
    report(6, ok)
    assert ok


def test_criterion_07_limit():
    asym, h, hp = fx.torus_asymmetric_theta(), fx.torus_h(), fx.torus_upper_half()
    errors = {n: error_to_theta(asym, h, hp, box(n)) for n in range(1, 10)}
    ok = all(errors[n] == Fraction(1, 2 ** (n + 1)) - Fraction(1, 4 * 3**n) for n in range(1, 9))
    ok &= errors[9] < Fraction(1, 1000)
    report(7, ok, f"error at N=8 is {float(errors[8]):.6f}, at N=9 {float(errors[9]):.6f}")
    assert ok


# --- 8, 9 ------------------------------------------------------------------------


def test_criterion_08_dminus_sufficiency():
    mismatches, stable_not_generated, corrected_off, semi_off = [], [], [], []
    total = 0
    for inst in corpus():
        m, theta = inst.module, inst.theta
        full = module_theta_verdict(theta, m)
        fam = enumerate_submodules(m, True, theta.dminus)
        literal = theta_verdict(theta, m.hilbert, fam.hilbert_functions(m.group), fam.exact, fam.sample_size)
        corrected = module_theta_verdict(theta, m, dminus_only=True)
        total += 1
        if full.exact and full.is_stable and not generated_in_dminus(m, theta.dminus):
            stable_not_generated.append(inst.name)
        if literal.status != full.status:
            mismatches.append(inst)
        if corrected.status != full.status:
            corrected_off.append(inst.name)
        if literal.is_semistable != full.is_semistable:
            semi_off.append(inst.name)
    ok = not mismatches and not stable_not_generated
    report(
        8,
        ok,
        f"{total} instances, {len(mismatches)} strict-stability mismatches, all with a submodule inside D_0; "
        f"semistable verdicts and the D_- plus D_0 check agree everywhere",
    )
    assert not stable_not_generated
    assert not corrected_off and not semi_off
    assert all(has_zero_label(inst) for inst in mismatches)
    assert "z5-zero-label" in {inst.name for inst in mismatches}


def test_criterion_09_git_equivalence():
    mismatches, semi_off, theta_implies_git_off = [], [], []
    total = 0
    for inst in corpus():
        m, theta = inst.module, inst.theta
        if not generated_in_dminus(m, theta.dminus):
            continue
        total += 1
        params = derive_parameters(theta, m.hilbert)
        p = QuotientPresentation.standard(m, theta.dminus)
        gv = git_verdict(p, params)
        fam = enumerate_submodules(m)
        tv = theta_tilde_verdict(params, fam.hilbert_functions(m.group), fam.exact, fam.sample_size)
        if gv.status != tv.status:
            mismatches.append(inst)
        if gv.is_semistable != tv.is_semistable:
            semi_off.append(inst.name)
        if module_theta_verdict(theta, m).is_stable:
            cands = [hp for hp in fam.hilbert_functions(m.group) if not hp.is_zero() and hp != m.hilbert]
            window = choose_window(theta, m.hilbert, cands).window
            if not git_verdict(p, derive_parameters(theta, m.hilbert, window)).is_stable:
                theta_implies_git_off.append(inst.name)
    ok = not mismatches and not theta_implies_git_off
    report(
        9,
        ok,
        f"{total} instances, {len(mismatches)} GIT-stable but theta~-strictly-semistable, all with a submodule "
        f"inside D_0; semistable verdicts agree and theta-stable => GIT-stable holds everywhere",
    )
    assert not theta_implies_git_off and not semi_off
    assert all(has_zero_label(inst) for inst in mismatches)
    assert "z5-zero-label" in {inst.name for inst in mismatches}


# --- 10, 11, 12 ------------------------------------------------------------------


def test_criterion_10_gauge_invariance():
    n = selftest.suite_gauge(0, 1, gauges=20)
    report(10, n > 0, f"{n} gauged presentations")
    assert n > 0


def test_criterion_11_invariant_points():
    n = selftest.suite_geometry(0, 1, points=50)
    report(11, n >= 50, f"{n} checks")
    assert n >= 50


def test_criterion_12_hilbert_scheme_mode():
    total = agree = 0
    for seed in range(5):
        for inst in fx.hilbert_scheme_instances(seed, 30):
            out = hilbert_scheme_mode_check(inst.theta, inst.module.hilbert, inst.module)
            total += 1
            agree += out["agree"] is True
    ok = total > 0 and agree == total
    report(12, ok, f"{agree}/{total} instances")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
