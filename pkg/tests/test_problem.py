from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from constellation_lab import fixtures as fx
from constellation_lab.errors import InputError, ProblemSyntaxError
from constellation_lab.problem import (
    ProblemFile,
    format_problem,
    parse_label,
    parse_matrix,
    parse_problem,
    parse_rational,
    parse_text,
)
from strategies import seeds

PROBLEMS = sorted((Path(__file__).parent.parent / "problems").glob("*.clab"))


@pytest.mark.parametrize("path", PROBLEMS, ids=lambda p: p.stem)
def test_shipped_problems_round_trip(path):
    p = parse_problem(path)
    assert parse_text(format_problem(p)) == p


@given(seeds)
def test_random_problem_round_trip(seed):
    for inst in fx.random_instances(seed, 2):
        p = ProblemFile(group=inst.module.group, action=inst.module.action, theta=inst.theta, module=inst.module)
        text = format_problem(p)
        assert parse_text(text) == p
        assert format_problem(parse_text(text)) == text


def test_one_line_entries_and_label_spellings():
    p = parse_text("[group]\nkind = cyclic 3\ntheta χ_0 = -2/1\ntheta chi_1 = 1\ntheta 2 = 1\n")
    assert p.theta[(0,)] == -2 and p.theta[(1,)] == 1 and p.theta[(2,)] == 1


def test_labels_rationals_matrices():
    g = fx.Z3
    assert parse_label(g, "χ_2") == parse_label(g, "2") == (2,)
    assert parse_label(g, "5") == (2,)
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_matrix("[[1, 1/2], [0, -1]]") == ((1, Fraction(1, 2)), (0, -1))
    with pytest.raises(InputError):
        parse_rational("1/0")
    with pytest.raises(InputError):
        parse_rational("0.5")


def test_missing_group_is_diagnosed():
    with pytest.raises(ProblemSyntaxError) as err:
        parse_text("[theta]\n0 = 1\n")
    assert any("group" in d.message for d in err.value.diagnostics)


def test_unknown_section_reports_line_and_column():
    with pytest.raises(ProblemSyntaxError) as err:
        parse_text("[group]\nkind = cyclic 2\n\n[bogus]\n")
    d = err.value.diagnostics[0]
    assert d.line == 4 and d.column >= 1


def test_duplicate_section_is_diagnosed():
    with pytest.raises(ProblemSyntaxError):
        parse_text("[group]\nkind = cyclic 2\n[theta]\n0 = 1\n[theta]\n1 = 1\n")


def test_bad_value_points_at_section():
    with pytest.raises(ProblemSyntaxError) as err:
        parse_text("[group]\nkind = cyclic 2\n[theta]\n0 = abc\n")
    assert "[theta]" in str(err.value)


def test_module_needs_action():
    with pytest.raises(ProblemSyntaxError):
        parse_text("[group]\nkind = cyclic 2\n[module]\ndim 0 = 1\n")


def test_free_orbit_and_monomial_modules():
    text = "[group]\nkind = cyclic 3\n[action]\nx = 2\ny = 1\n[module]\nmonomials = (0,0), (1,0), (2,0)\n"
    assert parse_text(text).module == fx.z3_nilpotent()
    text = text.replace("monomials = (0,0), (1,0), (2,0)", "free_orbit = 1, 0")
    assert parse_text(text).module == fx.z3_free_orbit()


def test_unreadable_file(tmp_path):
    with pytest.raises(InputError):
        parse_problem(tmp_path / "missing.clab")
