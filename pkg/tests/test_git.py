import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from constellation_lab import fixtures as fx
from constellation_lab import selftest
from constellation_lab.errors import InputError, PresentationError, WindowError
from constellation_lab.git import (
    Filtration,
    derive_parameters,
    git_verdict,
    mu_filtration,
    mu_one_step,
    saturate,
    theta_tilde,
)
from constellation_lab.hilbert import HilbertFunction, ThetaVector
from constellation_lab.modules import EquivariantModule, GaugeElement, GradedSubspace, QuotientPresentation, apply_gauge, random_gauge
from constellation_lab.stability import STABLE, UNSTABLE
from oracles import geometric_tail
from strategies import seeds

Z3 = fx.Z3
F = Fraction
A0 = (0,)
A1 = (1,)


def z3_params(**kw):
    return derive_parameters(fx.z3_theta(), HilbertFunction.from_values(Z3, [1, 1, 1]), Z3.irreps(), {A0: 1, A1: 1}, **kw)


def present(m):
    return QuotientPresentation.standard(m, [A0, A1])


def only(label):
    return GradedSubspace.of(Z3, {label: [[1]]})


def test_z3_parameters():
    p = z3_params()
    assert p.s_d == 0 and p.d == 1
    assert p.kappa == {A0: 1, A1: 1, (2,): 3}
    assert p.kappa_f == 5 and p.dim_a == 2
    assert p.chi == {A0: F(-1, 2), A1: F(1, 2)}
    assert p.chi[A0] + p.chi[A1] == 0


def test_z2_parameters():
    theta = ThetaVector.from_values(fx.Z2, [-1, 1])
    p = derive_parameters(theta, HilbertFunction.from_values(fx.Z2, [1, 1]), fx.Z2.irreps(), {A0: 1})
    assert p.kappa == {A0: 1, A1: 1} and p.kappa_f == 2 and p.dim_a == 1 and p.chi == {A0: 0}


def test_torus_parameters():
    D = [(k,) for k in range(-2, 3)]
    theta = fx.torus_asymmetric_theta()
    p = derive_parameters(theta, fx.torus_h(), D, {(0,): 1})
    s_d = geometric_tail(F(1, 2), 3) + geometric_tail(F(1, 3), 3)
    assert p.s_d == s_d == F(11, 36) and p.d == 4
    for r in D:
        if r != (0,):
            assert p.kappa[r] == theta[r] + F(11, 144)


def test_parameter_errors():
    h = HilbertFunction.from_values(Z3, [1, 1, 1])
    with pytest.raises(WindowError):
        derive_parameters(fx.z3_theta(), h, [A0, A1])
    with pytest.raises(WindowError):
        derive_parameters(fx.z3_theta(), h, [(2,)])
    with pytest.raises(WindowError):
        derive_parameters(fx.z3_theta(), h, None, {A0: 0})


def test_mu_examples():
    p = z3_params()
    assert mu_one_step(present(fx.z3_free_orbit()), p, only(A0)) == 4
    assert mu_one_step(present(fx.z3_free_orbit()), p, only(A1)) == 6
    assert mu_one_step(present(fx.z3_nilpotent()), p, only(A1)) == -2


def test_filtration_example():
    p = z3_params()
    pres = present(fx.z3_free_orbit())
    f = Filtration.of({A0: [(1, [[1]])], A1: [(-1, [[1]])]})
    assert mu_filtration(pres, p, f) == (4, 4) == (mu_one_step(pres, p, only(A0)),) * 2
    with pytest.raises(InputError):
        mu_filtration(pres, p, Filtration.of({A0: [(2, [[1]])], A1: [(2, [[1]])]}))


def test_theta_tilde_examples():
    p = z3_params()
    h = p.h
    assert theta_tilde(p, h, HilbertFunction.from_values(Z3, [0, 1, 0])) == -1
    assert theta_tilde(p, h, h) == 0
    assert theta_tilde(p, h, HilbertFunction.zero(Z3)) == 0


def test_saturation_examples():
    pres = present(fx.z3_nilpotent())
    sat, sub_f = saturate(pres, only(A0))
    assert sub_f.total() == 3 and sat.total() == 2
    sat, sub_f = saturate(pres, only(A1))
    assert sub_f.hilbert(Z3) == HilbertFunction.from_values(Z3, [0, 1, 0]) and sat == only(A1)
    sat, sub_f = saturate(pres, GradedSubspace())
    assert sat.is_zero() and sub_f.is_zero()


def test_git_verdicts():
    p = z3_params()
    v = git_verdict(present(fx.z3_free_orbit()), p)
    assert v.status == STABLE and v.exact
    v = git_verdict(present(fx.z3_nilpotent()), p)
    assert v.status == UNSTABLE and v.witness == only(A1) and v.value == -2


def test_modules_not_generated_in_dminus_are_refused():
    split = EquivariantModule(fx.z3_action(), {A0: 1, A1: 1, (2,): 1}, {})
    with pytest.raises(PresentationError):
        git_verdict(present(split), z3_params())


def test_gauge_by_doubling_keeps_verdicts():
    p = z3_params()
    for m in (fx.z3_free_orbit(), fx.z3_nilpotent()):
        base = present(m)
        moved = apply_gauge(base, GaugeElement({A0: [[2]], A1: [[1]]}))
        assert git_verdict(moved, p).status == git_verdict(base, p).status


@settings(max_examples=20)
@given(seeds)
def test_mu_identities(seed):
    assert selftest.suite_mu(seed, 1, minimum=10) >= 10


@settings(max_examples=10)
@given(seeds)
def test_saturation_formula(seed):
    selftest.suite_saturation(seed, 1)


@settings(max_examples=10)
@given(seeds)
def test_admissibility_and_finite_support(seed):
    selftest.suite_parameters(seed, 1)


@settings(max_examples=10)
@given(seeds)
def test_git_matches_theta_tilde(seed):
    selftest.suite_git_vs_theta(seed, 1)


@settings(max_examples=15)
@given(seeds)
def test_mu_is_unchanged_by_reframing(seed):
    rng = random.Random(seed)
    for p, _, params in selftest._presentations(seed, 4):
        if p.dim_a < 2:
            continue
        sub = selftest.random_proper_subspace(p, rng)
        gamma = random_gauge(p, rng)
        q = apply_gauge(p, gamma)
        assert mu_one_step(q, params, selftest._inverse_image(p, sub, gamma)) == mu_one_step(p, params, sub)


@settings(max_examples=15)
@given(seeds)
def test_scaling_parameters_scales_every_weight(seed):
    rng = random.Random(seed)
    for p, _, params in selftest._presentations(seed, 3):
        if p.dim_a < 2:
            continue
        t = F(rng.randint(1, 9), rng.randint(1, 9))
        f = selftest.random_filtration(p, rng)
        g, _ = mu_filtration(p, params, f)
        assert mu_filtration(p, params.scaled(t), f)[0] == t * g
        scaled = params.scaled(params.integer_scale)
        assert all(v.denominator == 1 for v in list(scaled.kappa.values()) + list(scaled.chi.values()))


def test_submodule_inside_zero_labels_separates_git_from_theta_tilde():
    # Z/5: chi_4 maps to chi_1 by x and to chi_3 by y, and theta vanishes at chi_3
    from constellation_lab.groups import GroupSpec
    from constellation_lab.modules import ActionSpec, enumerate_submodules
    from constellation_lab.git import theta_tilde_verdict
    from constellation_lab.stability import STRICTLY_SEMISTABLE

    g = GroupSpec.cyclic(5)
    m = EquivariantModule(ActionSpec(g, [("x", (2,)), ("y", (4,))]), {(1,): 1, (3,): 1, (4,): 1}, {("x", (4,)): [[-1]], ("y", (4,)): [[1]]})
    theta = ThetaVector(g, {(1,): 1, (3,): 0, (4,): -1})
    params = derive_parameters(theta, m.hilbert)
    fam = enumerate_submodules(m)
    tv = theta_tilde_verdict(params, fam.hilbert_functions(g))
    gv = git_verdict(QuotientPresentation.standard(m, theta.dminus), params)
    assert gv.status == STABLE
    assert tv.status == STRICTLY_SEMISTABLE and tv.witness == HilbertFunction(g, {(3,): 1})
    assert gv.is_semistable and tv.is_semistable
