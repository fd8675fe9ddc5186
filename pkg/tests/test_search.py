from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import move_sequences
from rcplan.cube import SOLVED, apply_move, apply_plan
from rcplan.dataset import generate_dataset
from rcplan.heuristics import (
    HeuristicConfig,
    HeuristicKind,
    h_blind,
    h_goal_count,
    make_heuristic,
)
from rcplan.moves import ActionSet, parse_move, parse_moves
from rcplan.oracle import bfs_optimal, validate_plan
from rcplan.search import SearchLimits, Status, astar, idastar, pruned


@lru_cache(maxsize=None)
def heuristic(name, action_set=ActionSet.QUARTER_12):
    return make_heuristic(HeuristicConfig.from_name(name, action_set))


def test_heuristic_names():
    config = HeuristicConfig.from_name("pdb-sys2", ActionSet.FULL_18)
    assert (config.kind, config.max_size, config.label) == (
        HeuristicKind.PDB_SYSTEMATIC,
        2,
        "pdb-sys2",
    )
    assert HeuristicConfig.from_name("pdb-sys", ActionSet.FULL_18).max_size == 3
    with pytest.raises(ValueError):
        HeuristicConfig.from_name("lm-cut", ActionSet.FULL_18)


def test_simple_heuristics():
    one = apply_move(SOLVED, parse_move("R"))
    assert (h_blind(SOLVED), h_blind(one)) == (0, 1)
    assert (h_goal_count(SOLVED), h_goal_count(one)) == (0, 8)
    assert heuristic("blind").admissible
    assert not heuristic("gc").admissible
    assert not heuristic("ff").admissible


def test_solved_start_takes_no_expansions():
    for search in (astar, idastar):
        result = search(SOLVED, heuristic("blind"), ActionSet.QUARTER_12)
        assert result.status is Status.SOLVED
        assert result.plan == ()
        assert result.expansions == 0


@pytest.mark.parametrize("scramble", ["L", "R U", "F Drev B"])
def test_blind_astar_is_optimal(scramble):
    state = apply_plan(SOLVED, parse_moves(scramble))
    result = astar(state, heuristic("blind"), ActionSet.QUARTER_12)
    assert result.solved
    assert len(result.plan) == bfs_optimal(state, ActionSet.QUARTER_12)
    assert validate_plan(state, result.plan, ActionSet.QUARTER_12).valid


def test_systematic_pdbs_are_admissible():
    h = heuristic("pdb-sys1")
    dataset = generate_dataset(ActionSet.QUARTER_12, 3, depths=range(1, 6), per_depth=2)
    for instance in dataset:
        assert h(instance.state) <= bfs_optimal(instance.state, ActionSet.QUARTER_12)


@pytest.fixture(scope="module")
def shallow():
    return generate_dataset(ActionSet.QUARTER_12, 11, depths=range(1, 7), per_depth=2)


@pytest.mark.parametrize("search", [astar, idastar])
def test_manual_pdb_searches_are_optimal(manual_pdbs, shallow, search):
    h = heuristic("pdb-man")
    for instance in shallow:
        result = search(instance.state, h, ActionSet.QUARTER_12)
        assert result.solved
        assert len(result.plan) == bfs_optimal(instance.state, ActionSet.QUARTER_12)
        assert validate_plan(instance.state, result.plan, ActionSet.QUARTER_12).valid


@pytest.mark.parametrize("name", ["gc", "ff"])
def test_inadmissible_heuristics_find_valid_plans(shallow, name):
    h = heuristic(name)
    for instance in shallow.instances[:8]:
        result = astar(instance.state, h, ActionSet.QUARTER_12)
        assert result.solved
        assert validate_plan(instance.state, result.plan, ActionSet.QUARTER_12).valid


def test_full_turn_search(manual_pdbs_full):
    state = apply_plan(SOLVED, parse_moves("F2 U2 Lrev"))
    result = astar(state, heuristic("pdb-man", ActionSet.FULL_18), ActionSet.FULL_18)
    assert len(result.plan) == 3


def test_expansion_limit():
    state = apply_plan(SOLVED, parse_moves("F U R B"))
    limits = SearchLimits(max_expansions=1)
    for search in (astar, idastar):
        result = search(state, heuristic("blind"), ActionSet.QUARTER_12, limits)
        assert result.status is Status.TIMEOUT
        assert result.plan == ()


def test_node_limit():
    state = apply_plan(SOLVED, parse_moves("F U R B"))
    limits = SearchLimits(max_stored_nodes=10)
    result = astar(state, heuristic("blind"), ActionSet.QUARTER_12, limits)
    assert result.status is Status.MEMOUT
    assert result.peak_stored > 10


def test_limits_must_be_positive():
    with pytest.raises(ValueError):
        SearchLimits(wall_time=0)
    with pytest.raises(ValueError):
        SearchLimits(max_expansions=0)


@pytest.mark.parametrize(
    "move, last, before_last, action_set, expected",
    [
        ("F", None, None, ActionSet.QUARTER_12, False),
        ("F", "F", None, ActionSet.QUARTER_12, False),
        ("F", "F", "F", ActionSet.QUARTER_12, True),
        ("Frev", "F", None, ActionSet.QUARTER_12, True),
        ("F2", "F", None, ActionSet.FULL_18, True),
        ("F", "B", None, ActionSet.QUARTER_12, True),
        ("B", "F", None, ActionSet.QUARTER_12, False),
        ("U", "F", "F", ActionSet.FULL_18, False),
    ],
)
def test_pruning(move, last, before_last, action_set, expected):
    def parse(name):
        return None if name is None else parse_move(name)

    assert pruned(parse(move), parse(last), parse(before_last), action_set) == expected


def sequences(action_set, max_size):
    return st.lists(st.sampled_from(action_set.moves), max_size=max_size)


@given(sequences(ActionSet.QUARTER_12, 6))
@settings(max_examples=15)
def test_quarter_turn_searches_match_bfs(manual_pdbs, moves):
    state = apply_plan(SOLVED, moves)
    h = heuristic("pdb-man")
    expected = bfs_optimal(state, ActionSet.QUARTER_12)
    assert len(astar(state, h, ActionSet.QUARTER_12).plan) == expected
    assert len(idastar(state, h, ActionSet.QUARTER_12).plan) == expected
    if len(moves) <= 3:
        blind = astar(state, heuristic("blind"), ActionSet.QUARTER_12)
        assert len(blind.plan) == expected


@given(sequences(ActionSet.FULL_18, 5))
@settings(max_examples=15)
def test_face_turn_searches_match_bfs(manual_pdbs_full, moves):
    state = apply_plan(SOLVED, moves)
    h = heuristic("pdb-man", ActionSet.FULL_18)
    expected = bfs_optimal(state, ActionSet.FULL_18)
    for search in (astar, idastar):
        result = search(state, h, ActionSet.FULL_18)
        assert result.solved
        assert len(result.plan) == expected
        assert validate_plan(state, result.plan, ActionSet.FULL_18).valid
    if len(moves) <= 2:
        blind = astar(state, heuristic("blind", ActionSet.FULL_18), ActionSet.FULL_18)
        assert len(blind.plan) == expected


@pytest.mark.parametrize("action_set", list(ActionSet))
@given(moves=move_sequences)
@settings(max_examples=30)
def test_manual_pdb_max_is_consistent(manual_pdbs, manual_pdbs_full, action_set, moves):
    h = heuristic("pdb-man", action_set)
    state = apply_plan(SOLVED, moves)
    value = h(state)
    for move in action_set.moves:
        assert abs(h(apply_move(state, move)) - value) <= 1


@given(sequences(ActionSet.QUARTER_12, 7))
@settings(max_examples=15)
def test_manual_pdb_max_is_admissible(manual_pdbs, moves):
    state = apply_plan(SOLVED, moves)
    assert heuristic("pdb-man")(state) <= bfs_optimal(state, ActionSet.QUARTER_12)
