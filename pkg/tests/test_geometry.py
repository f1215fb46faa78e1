import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from constellation_lab import fixtures as fx
from constellation_lab.errors import DegreeBoundError, InputError
from constellation_lab.geometry import (
    default_degree_bound,
    evaluate_generators,
    hilbert_chow_point,
    invariant_monomial_generators,
    monomial_name,
    satisfies_relations,
)
from constellation_lab.groups import GroupSpec
from constellation_lab.modules import ActionSpec, EquivariantModule, from_monomial_basis

import oracles

TORUS_ACTION = ActionSpec(fx.TORUS, [("x", (1,)), ("y", (-1,))])


@pytest.mark.parametrize(
    "action, expected",
    [
        (fx.z3_action(), {(3, 0), (1, 1), (0, 3)}),
        (fx.z2_action(), {(2, 0), (1, 1), (0, 2)}),
        (TORUS_ACTION, {(1, 1)}),
    ],
)
def test_invariant_generators_match_oracle(action, expected):
    gens = invariant_monomial_generators(action)
    assert set(gens.exponents) == expected
    weights = [w for _, w in action.variables]
    assert set(gens.exponents) == oracles.hilbert_basis(weights, list(action.group.moduli), gens.degree_bound)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cyclic_generators_against_oracle(n):
    action = ActionSpec(GroupSpec.cyclic(n), [("x", (1,)), ("y", (n - 1,)), ("z", (2 % n,))])
    gens = invariant_monomial_generators(action)
    assert set(gens.exponents) == oracles.hilbert_basis([(1,), (n - 1,), (2 % n,)], [n], gens.degree_bound)


def test_too_small_degree_bound_is_reported():
    with pytest.raises(DegreeBoundError):
        invariant_monomial_generators(fx.z3_action(), 2)
    with pytest.raises(DegreeBoundError):
        invariant_monomial_generators(fx.z3_action(), 0)


def test_default_bound_includes_torus_spread():
    action = ActionSpec(fx.TORUS, [("x", (2,)), ("y", (-3,))])
    assert default_degree_bound(action) == 2 * 3
    assert set(invariant_monomial_generators(action).exponents) == {(3, 2)}


def test_monomial_names():
    assert monomial_name(("x", "y"), (3, 0)) == "x^3"
    assert monomial_name(("x", "y"), (1, 1)) == "x*y"
    assert monomial_name(("x", "y"), (0, 0)) == "1"


def test_named_invariant_points():
    gens = invariant_monomial_generators(fx.z3_action())
    assert hilbert_chow_point(fx.z3_nilpotent(), gens).values == (0, 0, 0)
    assert hilbert_chow_point(fx.z3_free_orbit((1, 0)), gens).values == (1, 0, 0)
    assert gens.labels() == ["x^3", "x*y", "y^3"]


@given(st.integers(0, 10**6))
def test_free_orbit_point_is_generator_evaluation(seed):
    rng = random.Random(seed)
    action = rng.choice([fx.z3_action(), fx.z2_action()])
    pt = fx.random_point(rng, 2, 0.2)
    if not any(pt):
        return
    gens = invariant_monomial_generators(action)
    eta = hilbert_chow_point(fx.free_orbit_module(action, pt), gens)
    assert eta.values == evaluate_generators(gens, pt)
    assert satisfies_relations(eta)


def test_needs_one_dimensional_invariant_part():
    gens = invariant_monomial_generators(fx.z2_action())
    two = EquivariantModule(fx.z2_action(), {(0,): 2}, {})
    with pytest.raises(InputError):
        hilbert_chow_point(two, gens)


def test_generators_of_other_action_rejected():
    gens = invariant_monomial_generators(fx.z2_action())
    with pytest.raises(InputError):
        hilbert_chow_point(fx.z3_nilpotent(), gens)


def test_fat_point_sits_at_origin():
    gens = invariant_monomial_generators(fx.z2_action())
    assert hilbert_chow_point(fx.z2_fat_point(), gens).values == (0, 0, 0)
    m = from_monomial_basis(fx.z2_action(), [(0, 0), (1, 0)])
    assert hilbert_chow_point(m, gens).values == (0, 0, 0)
