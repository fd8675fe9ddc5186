import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import move_sequences
from rcplan.cube import SOLVED, CubeState, apply_move, apply_plan
from rcplan.dataset import generate_dataset
from rcplan.filetypes import pddl, sexp
from rcplan.moves import MOVES, ActionSet, ParseError, parse_move, parse_moves

L_CORNER_CLAUSE = "(when (cube1 ?x ?y ?z) (and (cube2 ?y ?x ?z)))"


@pytest.mark.parametrize("action_set", list(ActionSet))
def test_domain(action_set):
    text = pddl.emit_domain(action_set)
    assert text.count("(:action ") == action_set.value
    assert "(:requirements :adl)" in text
    assert "(edge13 ?x ?z)" in text
    sexp.parse_one(text)


def test_l_action_matches_the_published_clause():
    model = pddl.domain_model(ActionSet.QUARTER_12)
    text = sexp.normalise(pddl.format_action(model.action("L")))
    assert L_CORNER_CLAUSE in text
    assert text.startswith("(:action L :parameters () :effect (and (forall")


def test_l_action_cycles():
    action = pddl.domain_model(ActionSet.QUARTER_12).action("L")
    assert [(e.source, e.target) for e in action.corner_effects] == [
        ("cube1", "cube2"),
        ("cube3", "cube1"),
        ("cube4", "cube3"),
        ("cube2", "cube4"),
    ]
    assert [(e.source, e.target) for e in action.edge_effects] == [
        ("edge13", "edge12"),
        ("edge34", "edge13"),
        ("edge24", "edge34"),
        ("edge12", "edge24"),
    ]


def test_l_on_solved_swaps_colours():
    action = pddl.domain_model(ActionSet.QUARTER_12).action("L")
    after = pddl.symbolic_apply(action, pddl.SOLVED_SYMBOLIC)
    x, y, z = pddl.SOLVED_SYMBOLIC["cube1"]
    assert after["cube2"] == (y, x, z)


@given(move_sequences, st.sampled_from(MOVES))
def test_actions_match_moves(moves, move):
    state = apply_plan(SOLVED, moves)
    action = pddl.domain_model(ActionSet.FULL_18).action(move.name)
    assert pddl.symbolic_apply(
        action, pddl.encode_symbolic(state)
    ) == pddl.encode_symbolic(apply_move(state, move))


def test_solved_encoding():
    assert pddl.encode_symbolic(SOLVED) == pddl.SOLVED_SYMBOLIC
    assert pddl.SOLVED_SYMBOLIC["edge12"] == ("red", "blue")


@pytest.mark.parametrize("action_set", list(ActionSet))
def test_domain_reads_back(action_set):
    model = pddl.read_domain(pddl.emit_domain(action_set))
    assert model == pddl.domain_model(action_set)


def test_domain_with_wrong_clause():
    text = pddl.emit_domain(ActionSet.QUARTER_12).replace(
        "(cube2 ?y ?x ?z)", "(cube2 ?y ?y ?z)", 1
    )
    with pytest.raises(ParseError):
        pddl.read_domain(text)


@given(move_sequences)
def test_problem_reads_back(moves):
    state = apply_plan(SOLVED, moves)
    name, read = pddl.read_problem(pddl.emit_problem(state, "p01"))
    assert (name, read) == ("p01", state)


def test_problem_of_unsolvable_state():
    twisted = CubeState(
        SOLVED.corner_perm, (1,) + (0,) * 7, SOLVED.edge_perm, SOLVED.edge_ori
    )
    with pytest.raises(pddl.UnsolvableState):
        pddl.emit_problem(twisted, "bad")


def test_problem_missing_atom():
    text = pddl.emit_problem(SOLVED, "p").replace("(cube1 yellow red blue)", "", 1)
    assert text != pddl.emit_problem(SOLVED, "p")
    with pytest.raises(pddl.InconsistentInit):
        pddl.read_problem(text)


def test_problem_with_impossible_colours():
    state = apply_move(SOLVED, parse_move("F"))
    text = pddl.emit_problem(state, "p")
    head, rest = text.split("(:init")
    init, goal = rest.split("(:goal")
    broken = head + "(:init" + init.replace("white", "purple", 1) + "(:goal" + goal
    with pytest.raises(pddl.InconsistentInit):
        pddl.read_problem(broken)


def test_problem_with_other_goal():
    text = pddl.emit_problem(SOLVED, "p")
    init, goal = text.split("(:goal")
    goal = goal.replace("(cube1 ", "(cube2 ", 1)
    with pytest.raises(pddl.UnsupportedGoal):
        pddl.read_problem(init + "(:goal" + goal)


def test_export_dataset(tmp_path):
    dataset = generate_dataset(ActionSet.QUARTER_12, 1, depths=[3], per_depth=2)
    written = pddl.export_dataset(dataset, tmp_path, ActionSet.QUARTER_12)
    assert [path.name for path in written] == [
        "domain-m1.pddl",
        "d1-n03-0.pddl",
        "d1-n03-1.pddl",
    ]
    for instance, path in zip(dataset, written[1:]):
        assert pddl.parse_problem(path.read_text()) == instance.state


def test_scramble_as_problem():
    state = apply_plan(SOLVED, parse_moves("L"))
    text = pddl.emit_problem(state, "one-move")
    assert "(:domain rubiks-cube)" in text
    assert "(:objects white red green yellow orange blue)" in text


def init_atoms(text):
    (init,) = [s for s in sexp.parse_one(text) if s and s[0] == ":init"]
    return {tuple(atom) for atom in init[1:]}


@pytest.mark.parametrize("name", ["L", "Frev", "U2"])
def test_one_turn_changes_eight_atoms(name):
    solved = init_atoms(pddl.emit_problem(SOLVED, "solved"))
    turned = init_atoms(pddl.emit_problem(apply_move(SOLVED, parse_move(name)), "t"))
    assert len(turned) == len(solved) == 20
    assert len(turned - solved) == 8


@given(move_sequences)
def test_problem_text_reads_back_identically(moves):
    text = pddl.emit_problem(apply_plan(SOLVED, moves), "d7-n03-1")
    name, state = pddl.read_problem(text)
    assert pddl.emit_problem(state, name) == text
