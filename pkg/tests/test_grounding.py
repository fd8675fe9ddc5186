import math

import pytest
from hypothesis import given, settings

from conftest import move_sequences
from rcplan.cube import SOLVED, apply_move, apply_plan
from rcplan.grounding import (
    ATOM_COUNT,
    NO_EFFECT,
    build_rpg,
    encode_atoms,
    ground,
    h_ff,
)
from rcplan.moves import ActionSet, parse_move


@pytest.fixture(scope="module")
def task():
    return ground(ActionSet.QUARTER_12)


def test_atom_universe(task):
    assert ATOM_COUNT == 8 * 6**3 + 12 * 6**2 == 2160
    assert len(task.atoms) == ATOM_COUNT
    assert task.effects.shape == (12, ATOM_COUNT)
    assert len(task.goal_atoms) == 20


def test_quarter_action_effects(task):
    for action in range(len(task.action_names)):
        effects = task.ground_effects(action)
        assert len(effects) == 4 * 6**3 + 4 * 6**2
        assert all(add != NO_EFFECT for _, add in effects)


@given(move_sequences)
@settings(max_examples=20)
def test_ground_actions_match_moves(moves):
    task = ground(ActionSet.FULL_18)
    state = apply_plan(SOLVED, moves)
    atoms = encode_atoms(state)
    assert len(atoms) == 20
    for a, name in enumerate(task.action_names):
        assert task.apply(atoms, a) == encode_atoms(apply_move(state, parse_move(name)))


def test_ff_of_solved(task):
    assert h_ff(task, SOLVED) == 0


@pytest.mark.parametrize("name", ["L", "Frev", "U"])
def test_ff_of_one_quarter_turn(task, name):
    state = apply_move(SOLVED, parse_move(name))
    assert h_ff(task, state) == 1


def test_relaxed_graph_stops_at_goal(task):
    state = apply_move(SOLVED, parse_move("L"))
    rpg = build_rpg(task, encode_atoms(state))
    assert rpg.goal_reached
    assert rpg.layer_count == 2
    assert set(rpg.fact_layer(0)) == set(encode_atoms(state))
    assert all(rpg.first_layer[goal] in (0, 1) for goal in task.goal_array)


@given(move_sequences)
@settings(max_examples=10)
def test_ff_is_finite_on_real_states(moves):
    value = h_ff(ground(ActionSet.QUARTER_12), apply_plan(SOLVED, moves))
    assert value != math.inf
    assert (value == 0) == (apply_plan(SOLVED, moves) == SOLVED)
