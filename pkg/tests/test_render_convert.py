import pytest
from hypothesis import given

from conftest import move_sequences
from rcplan.convert import (
    REPRESENTATIONS,
    convert,
    read_state,
    representation_footprint,
    write_state,
)
from rcplan.cube import SOLVED, apply_move, apply_plan
from rcplan.moves import ActionSet, parse_move, parse_moves
from rcplan.render import InvalidPlan, render_state, render_trace


def test_trace_frames():
    state = apply_plan(SOLVED, parse_moves("R U"))
    frames = render_trace(state, parse_moves("Urev Rrev"), ActionSet.QUARTER_12)
    assert len(frames) == 3
    assert frames[0].startswith("start\n")
    assert frames[1].startswith("1: Urev\n")
    assert frames[-1].endswith(render_state(SOLVED))


def test_trace_of_a_bad_plan():
    state = apply_move(SOLVED, parse_move("R"))
    with pytest.raises(InvalidPlan):
        render_trace(state, parse_moves("R"), ActionSet.QUARTER_12)


def test_net_after_a_front_turn():
    lines = render_state(apply_move(SOLVED, parse_move("F"))).splitlines()
    # Up's bottom row takes Left's colour
    assert lines[2] == " " * 8 + "B B B"
    assert len(lines) == 9


@given(move_sequences)
def test_conversions_keep_the_state(moves):
    state = apply_plan(SOLVED, moves)
    for source in REPRESENTATIONS:
        text = write_state(source, state)
        for target in REPRESENTATIONS:
            again = convert(text, source, target)
            assert read_state(target, again) == state


def test_unknown_representation():
    with pytest.raises(ValueError):
        write_state("colours", SOLVED)
    with pytest.raises(ValueError):
        read_state("colours", "")


def test_pddl_problem_name():
    assert "(problem scrambled)" in write_state("pddl", SOLVED, name="scrambled")


def test_footprint():
    footprint = representation_footprint()
    assert set(footprint) == set(REPRESENTATIONS)
    assert footprint["pddl"] == 270
