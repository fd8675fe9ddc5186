import pytest
from hypothesis import given

from conftest import move_sequences
from rcplan.cube import SOLVED, apply_move, apply_plan
from rcplan.moves import ActionSet, format_moves, parse_move, parse_moves
from rcplan.oracle import (
    OptimalitySummary,
    Verdict,
    bfs_optimal,
    classify_lengths,
    classify_optimality,
    metric_convert,
    optimal_length,
    plan_length,
    validate_plan,
)
from rcplan.search import SearchLimits

F2 = apply_move(SOLVED, parse_move("F2"))


def test_bfs_distances():
    assert bfs_optimal(SOLVED, ActionSet.QUARTER_12) == 0
    assert bfs_optimal(apply_move(SOLVED, parse_move("L")), ActionSet.QUARTER_12) == 1
    assert bfs_optimal(F2, ActionSet.FULL_18) == 1
    assert bfs_optimal(F2, ActionSet.QUARTER_12) == 2


def test_bfs_depth_limits():
    state = apply_plan(SOLVED, parse_moves("F U R B D"))
    assert bfs_optimal(state, ActionSet.QUARTER_12, max_depth=2) is None
    with pytest.raises(ValueError):
        bfs_optimal(state, ActionSet.QUARTER_12, max_depth=8)


def test_half_turn_optimal_lengths(manual_pdbs, manual_pdbs_full):
    assert optimal_length(F2, ActionSet.FULL_18, pdbs=manual_pdbs_full) == 1
    assert optimal_length(F2, ActionSet.QUARTER_12, pdbs=manual_pdbs) == 2


@pytest.mark.parametrize(
    "scramble", ["L U", "R Frev D B", "U L F R B D", "Brev Lrev D F U2 R"]
)
def test_oracles_agree(manual_pdbs, scramble):
    moves = parse_moves(scramble)
    state = apply_plan(SOLVED, metric_convert(moves, ActionSet.QUARTER_12))
    assert optimal_length(state, ActionSet.QUARTER_12) == bfs_optimal(
        state, ActionSet.QUARTER_12
    )


def test_oracle_budget(manual_pdbs):
    state = apply_plan(SOLVED, parse_moves("F U R B D L F U R"))
    budget = SearchLimits(max_expansions=1)
    assert optimal_length(state, ActionSet.QUARTER_12, budget) is None


def test_validate_plan():
    one = apply_move(SOLVED, parse_move("L"))
    assert validate_plan(SOLVED, [], ActionSet.QUARTER_12) is Verdict.VALID
    assert validate_plan(one, parse_moves("Lrev"), ActionSet.QUARTER_12).valid
    assert (
        validate_plan(one, parse_moves("L"), ActionSet.QUARTER_12)
        is Verdict.NOT_SOLVED_AT_END
    )
    assert (
        validate_plan(F2, parse_moves("F2"), ActionSet.QUARTER_12)
        is Verdict.MOVE_NOT_IN_ACTION_SET
    )


@pytest.mark.parametrize(
    "plan, target, expected",
    [
        ("F F", ActionSet.FULL_18, "F2"),
        ("F2", ActionSet.QUARTER_12, "F F"),
        ("L Lrev", ActionSet.FULL_18, ""),
        ("U R R Rrev Urev", ActionSet.FULL_18, "U R Urev"),
        ("U F F F F D", ActionSet.FULL_18, "U D"),
    ],
)
def test_metric_convert(plan, target, expected):
    assert format_moves(metric_convert(parse_moves(plan), target)) == expected


@given(move_sequences)
def test_metric_convert_keeps_effect(moves):
    for target in ActionSet:
        converted = metric_convert(moves, target)
        assert apply_plan(SOLVED, converted) == apply_plan(SOLVED, moves)
        assert all(move in target for move in converted)


def test_plan_length():
    assert plan_length(parse_moves("F2 U"), ActionSet.QUARTER_12) == 3
    assert plan_length(parse_moves("F2 U"), ActionSet.FULL_18) == 2


def test_two_quarter_turns_are_not_optimal_in_face_turns(manual_pdbs_full):
    summary = classify_optimality(
        [("f2", F2, parse_moves("F F"))], ActionSet.FULL_18, known={}
    )
    (report,) = summary.reports
    assert (report.plan_length, report.optimal_length) == (2, 1)
    assert report.is_optimal is False
    assert summary.percentage == 0


def test_classification_counts():
    known = {"a": 3, "b": 4}
    summary = classify_lengths(
        [("a", None, 3), ("b", None, 6), ("c", None, None)],
        ActionSet.QUARTER_12,
        known=known,
    )
    assert (summary.optimal, summary.classified, summary.unknown) == (1, 2, 0)
    assert summary.percentage == 50
    assert summary.percentage_of_all == pytest.approx(100 / 3)
    assert summary.describe().startswith("1/2 optimal (50%)")


def test_unknown_optimum_is_its_own_class(manual_pdbs):
    state = apply_plan(SOLVED, parse_moves("F U R B D L F U R"))
    summary = classify_lengths(
        [("deep", state, 9)],
        ActionSet.QUARTER_12,
        SearchLimits(max_expansions=1),
    )
    assert (summary.unknown, summary.classified) == (1, 0)
    assert summary.reports[0].is_optimal is None


def test_plan_shorter_than_optimal():
    with pytest.raises(ValueError):
        classify_lengths([("a", None, 2)], ActionSet.QUARTER_12, known={"a": 3})


def test_empty_results():
    summary = OptimalitySummary(())
    assert summary.percentage is None
    assert "N/A" in summary.describe()
