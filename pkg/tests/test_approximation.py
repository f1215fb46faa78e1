from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from constellation_lab import fixtures as fx
from constellation_lab.approximation import (
    canonical_window,
    check_window_sequence,
    choose_window,
    error_between_windows,
    error_to_theta,
    majorant,
    theta_tilde_at,
    verify_limit,
)
from constellation_lab.errors import InputError, WindowError
from constellation_lab.hilbert import ConstantTail, HilbertFunction, pairing

import oracles

ASYM, SYM = fx.torus_asymmetric_theta(), fx.torus_symmetric_theta()
H, HP = fx.torus_h(), fx.torus_upper_half()


def box(n):
    return [(k,) for k in range(-n, n + 1)]


def test_asymmetric_error_at_radius_two():
    assert error_to_theta(ASYM, H, HP, box(2)) == Fraction(7, 72)


@pytest.mark.parametrize("n", range(1, 13))
def test_asymmetric_error_matches_closed_form_and_oracle(n):
    err = error_to_theta(ASYM, H, HP, box(n))
    assert err == Fraction(1, 2 ** (n + 1)) - Fraction(1, 4 * 3**n)
    assert err == oracles.asymmetric_error(n)


def test_error_crosses_one_thousandth_between_eight_and_nine():
    assert error_to_theta(ASYM, H, HP, box(8)) > Fraction(1, 1000)
    assert error_to_theta(ASYM, H, HP, box(9)) < Fraction(1, 1000)


@pytest.mark.parametrize("n", range(1, 10))
def test_symmetric_error_vanishes(n):
    assert error_to_theta(SYM, H, HP, box(n)) == 0


@given(st.integers(1, 7), st.integers(1, 4))
def test_window_differences_telescope(n, k):
    step = error_between_windows(ASYM, H, HP, box(n), box(n + k))
    assert step == error_to_theta(ASYM, H, HP, box(n)) - error_to_theta(ASYM, H, HP, box(n + k))


@given(st.integers(1, 10))
def test_error_is_bounded_by_majorant(n):
    assert abs(error_to_theta(ASYM, H, HP, box(n))) <= majorant(ASYM, H, box(n))


def test_theta_tilde_tends_to_theta():
    target = pairing(ASYM, HP)
    gaps = [abs(target - theta_tilde_at(ASYM, H, HP, box(n))) for n in range(1, 12)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_verify_limit_report():
    rep = verify_limit(ASYM, H, HP, [box(n) for n in range(1, 10)], Fraction(1, 1000))
    assert rep.passed and rep.majorant_monotone
    assert rep.rows[-1].error == oracles.asymmetric_error(9)
    short = verify_limit(ASYM, H, HP, [box(n) for n in range(1, 9)], Fraction(1, 1000))
    assert not short.passed


def test_window_sequence_must_grow_and_contain_dminus():
    with pytest.raises(WindowError):
        check_window_sequence(ASYM, [box(2), box(1)])
    with pytest.raises(WindowError):
        check_window_sequence(ASYM, [[(1,)]])
    with pytest.raises(WindowError):
        check_window_sequence(ASYM, [])


def test_error_between_windows_needs_nested_windows():
    with pytest.raises(WindowError):
        error_between_windows(ASYM, H, HP, box(3), box(2))


def test_sub_function_must_be_dominated():
    big = HilbertFunction(fx.TORUS, {(0,): 2}, ConstantTail({"+": 1}))
    with pytest.raises(InputError):
        error_to_theta(ASYM, H, big, box(2))


def test_canonical_window_skips_zero_h_labels():
    h = HilbertFunction(fx.TORUS, {(0,): 1, (1,): 1, (2,): 0, (-1,): 1})
    theta = fx.torus_symmetric_theta()
    assert (2,) not in canonical_window(theta, h, 3)
    assert (0,) in canonical_window(theta, h, 0)


def test_choose_window_certifies_candidates():
    choice = choose_window(ASYM, H, [HP])
    assert choice.window == tuple(box(1))
    assert choice.majorant == Fraction(2, 3)
    assert choice.certificate[0][2] == Fraction(5, 6)
    assert choice.majorant < choice.threshold == pairing(ASYM, HP)
    # every larger window keeps the candidate positive
    for n in range(1, 8):
        assert theta_tilde_at(ASYM, H, HP, box(n)) > 0


def test_choose_window_rejects_non_positive_candidate():
    lower = HilbertFunction(fx.TORUS, {(0,): 1}, ConstantTail({"-": 1}))
    with pytest.raises(InputError):
        choose_window(ASYM, H, [lower])
