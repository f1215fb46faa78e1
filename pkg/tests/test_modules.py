import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constellation_lab import fixtures as fx
from constellation_lab import linalg as la
from constellation_lab.errors import ModuleError, PresentationError
from constellation_lab.hilbert import HilbertFunction
from constellation_lab.modules import (
    ActionSpec,
    EquivariantModule,
    GaugeElement,
    QuotientPresentation,
    apply_gauge,
    brute_force_closed_subsets,
    check_relations,
    direct_sum,
    enumerate_submodule_hilbert_functions,
    enumerate_submodules,
    generated_in_dminus,
    quotient_module,
    submodule_as_module,
    submodule_generated,
)
from oracles import closed_subsets
from strategies import seeds

Z3 = fx.Z3


def hf(*values):
    return HilbertFunction.from_values(Z3, values)


def test_nilpotent_module_is_valid():
    m = fx.z3_nilpotent()
    assert m.hilbert == hf(1, 1, 1)
    assert m.arrow("x", (0,)) == ((1,),) and m.arrow("x", (2,)) == ((1,),)
    assert m.arrow("x", (1,)) == ((0,),)  # x^3 = 0
    assert not check_relations(m)


def test_ill_typed_arrow_is_rejected():
    action = fx.z3_action()
    with pytest.raises(ModuleError, match="weight"):
        # y raises the weight by 1, so y.1 cannot land in the component of x (weight 2)
        EquivariantModule(action, {(0,): 1, (1,): 1, (2,): 1}, {("y", (0,), (2,)): [[1]]})
    with pytest.raises(ModuleError, match="1x1"):
        EquivariantModule(action, {(0,): 1, (2,): 1}, {("x", (0,)): [[1, 0]]})


def test_commuting_scalars_are_accepted_and_others_not():
    action = fx.z2_action()
    ok = EquivariantModule(action, {(0,): 1, (1,): 1}, {("x", (0,)): [[2]], ("y", (0,)): [[3]], ("x", (1,)): [[1]], ("y", (1,)): [[Fraction(3, 2)]]})
    assert not check_relations(ok)
    with pytest.raises(ModuleError):
        EquivariantModule(action, {(0,): 1, (1,): 1}, {("x", (0,)): [[1]], ("y", (1,)): [[1]]})


def test_closure_examples():
    m = fx.z3_nilpotent()
    # basis: 1 in chi_0, x in chi_2, x^2 in chi_1
    assert submodule_generated(m, {(1,): [[1]]}).hilbert(Z3) == hf(0, 1, 0)
    assert submodule_generated(m, {(0,): [[1]]}).hilbert(Z3) == hf(1, 1, 1)
    assert submodule_generated(m, {(2,): [[1]]}).hilbert(Z3) == hf(0, 1, 1)


def test_enumeration_examples():
    subs, exact = enumerate_submodule_hilbert_functions(fx.z3_nilpotent(), True, [(0,), (1,)])
    assert exact and set(subs) == {hf(0, 0, 0), hf(0, 1, 0), hf(1, 1, 1)}
    subs, exact = enumerate_submodule_hilbert_functions(fx.z3_free_orbit())
    assert exact and set(subs) == {hf(0, 0, 0), hf(1, 1, 1)}
    fam = enumerate_submodules(fx.z2_fat_point(), samples=4)
    assert not fam.exact


def test_generated_in_dminus_examples():
    assert generated_in_dminus(fx.z3_nilpotent(), [(0,), (1,)])
    split = EquivariantModule(fx.z3_action(), {(0,): 1, (2,): 1}, {})
    assert not generated_in_dminus(split, [(0,)])


def test_gauge_examples():
    p = QuotientPresentation.standard(fx.z3_free_orbit(), [(0,), (1,)])
    identity = GaugeElement({(0,): [[1]], (1,): [[1]]})
    assert apply_gauge(p, identity) == p
    doubled = apply_gauge(p, GaugeElement({(0,): [[2]], (1,): [[1]]}))
    assert doubled.frames[(0,)] == ((2,),)
    with pytest.raises(PresentationError):
        QuotientPresentation(fx.z3_free_orbit(), [(0,)], {(0,): [[0]]})


def test_free_orbit_needs_generating_weights():
    action = ActionSpec(fx.Z3, [("x", (0,)), ("y", (1,))])
    with pytest.raises(ModuleError):
        fx.free_orbit_module(action, (1, 0))


@settings(max_examples=40)
@given(seeds)
def test_enumeration_matches_brute_force(seed):
    m = fx.random_multiplicity_free(random.Random(seed))
    labels = m.labels()
    edges = [(src, m.target(var, src)) for (var, src) in m.arrows]
    expected = closed_subsets(labels, edges)
    assert {frozenset(s.labels()) for s in enumerate_submodules(m).submodules} == expected
    assert brute_force_closed_subsets(m) == expected


@settings(max_examples=40)
@given(seeds, st.data())
def test_closure_idempotent_and_monotone(seed, data):
    m = fx.random_multiplicity_free(random.Random(seed))
    labels = m.labels()
    small = data.draw(st.sets(st.sampled_from(labels)))
    big = small | data.draw(st.sets(st.sampled_from(labels)))
    cs = submodule_generated(m, {r: la.identity(1) for r in small})
    cb = submodule_generated(m, {r: la.identity(1) for r in big})
    assert submodule_generated(m, cs.spans) == cs
    assert cs <= cb


@settings(max_examples=40)
@given(seeds)
def test_sub_and_quotient_dimensions_add_up(seed):
    rng = random.Random(seed)
    m = fx.random_multiplicity_free(rng)
    sub = rng.choice(enumerate_submodules(m).submodules)
    q = quotient_module(m, sub)
    s = submodule_as_module(m, sub)
    assert s.hilbert + q.hilbert == m.hilbert
    assert not check_relations(q) and not check_relations(s)


@settings(max_examples=25)
@given(seeds)
def test_sampled_enumeration_is_deterministic_and_closed(seed):
    rng = random.Random(seed)
    m = direct_sum(fx.z3_free_orbit(fx.random_point(rng, 2)), fx.z3_free_orbit(fx.random_point(rng, 2)))
    a = enumerate_submodules(m, samples=6, seed=seed)
    b = enumerate_submodules(m, samples=6, seed=seed)
    assert a == b and not a.exact
    for sub in a.submodules:
        assert submodule_generated(m, sub.spans) == sub
