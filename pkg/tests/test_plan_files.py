import pytest

from rcplan.filetypes import plan, sexp
from rcplan.moves import ParseError, parse_moves


def test_planner_output():
    text = "(l)\n(UREV)\n(f2)\n; cost = 3 (unit cost)\n"
    assert plan.parse_plan(text) == parse_moves("L Urev F2")


def test_unknown_action():
    with pytest.raises(plan.UnknownAction, match="line 2"):
        plan.parse_plan("(l)\n(m)\n")


def test_malformed_line():
    with pytest.raises(ParseError) as error:
        plan.parse_plan("(l)\nr\n")
    assert error.value.line == 2


def test_plan_directory(tmp_path):
    plan.save(parse_moves("R U"), tmp_path / "p1.plan")
    (tmp_path / "p2").mkdir()
    plan.save(parse_moves("Frev"), tmp_path / "p2" / "sas_plan")
    assert plan.load_directory(tmp_path) == {
        "p1": parse_moves("R U"),
        "p2": parse_moves("Frev"),
    }


def test_unbalanced_expressions():
    with pytest.raises(ParseError) as error:
        sexp.parse("(define\n(domain x)")
    assert error.value.line == 1
    with pytest.raises(ParseError):
        sexp.parse("(a))")


def test_comments_are_ignored():
    assert sexp.parse("(a ; (b\n c)") == [["a", "c"]]
