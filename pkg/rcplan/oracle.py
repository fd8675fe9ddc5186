"""
Ground truth: exact distances, plan validation and optimality checks.

Plan lengths are measured in a metric. In the quarter-turn metric
(QUARTER_12) a half turn counts as two moves; in the face-turn metric
(FULL_18) every turn counts as one.
"""
import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from rcplan import number_formats, settings
from rcplan.cube import SOLVED, CubeState, apply_move, apply_plan
from rcplan.moves import ActionSet, Move, Turn
from rcplan.pdb import load_collection, manual_patterns
from rcplan.search import SearchLimits, idastar

log = logging.getLogger(__name__)


def _neighbours(states, action_set: ActionSet):
    for state in states:
        for move in action_set.moves:
            yield apply_move(state, move)


def bfs_optimal(
    state: CubeState, action_set: ActionSet, max_depth: Optional[int] = None
) -> Optional[int]:
    """
    Get the exact distance to solved, or None if it exceeds max_depth.

    Breadth-first search runs from both the state and the solved cube,
    each step growing the smaller frontier by one whole layer. The
    first layer to touch the other side gives the distance.
    """
    cap = settings.current().bfs_depth_cap(action_set)
    max_depth = cap if max_depth is None else max_depth
    if max_depth > cap:
        raise ValueError(f"max_depth {max_depth} is above the cap of {cap}")
    if state.is_solved():
        return 0
    sides = [
        {"seen": {state: 0}, "frontier": [state], "depth": 0},
        {"seen": {SOLVED: 0}, "frontier": [SOLVED], "depth": 0},
    ]
    while sides[0]["depth"] + sides[1]["depth"] < max_depth:
        grow, other = sorted(sides, key=lambda side: len(side["frontier"]))
        depth = grow["depth"] + 1
        layer = []
        best = None
        for child in _neighbours(grow["frontier"], action_set):
            if child in grow["seen"]:
                continue
            grow["seen"][child] = depth
            layer.append(child)
            if child in other["seen"]:
                total = depth + other["seen"][child]
                best = total if best is None else min(best, total)
        grow["frontier"] = layer
        grow["depth"] = depth
        if best is not None:
            return best if best <= max_depth else None
        if not layer:
            return None
    return None


def states_by_depth(action_set: ActionSet, depth: int) -> list:
    """
    Count the distinct states at each distance from solved.

    >>> states_by_depth(ActionSet.QUARTER_12, 2)
    [1, 12, 114]
    """
    seen = {SOLVED}
    frontier = [SOLVED]
    counts = [1]
    for _ in range(depth):
        layer = []
        for child in _neighbours(frontier, action_set):
            if child not in seen:
                seen.add(child)
                layer.append(child)
        counts.append(len(layer))
        frontier = layer
    return counts


@lru_cache(maxsize=None)
def manual_collection(action_set: ActionSet):
    return load_collection(manual_patterns(), action_set)


def optimal_length(
    state: CubeState, action_set: ActionSet, budget: SearchLimits = None, pdbs=None
) -> Optional[int]:
    """
    Find the optimal plan length with IDA* and the manual pattern databases.

    Gives None if the budget runs out first.
    """
    pdbs = manual_collection(action_set) if pdbs is None else pdbs
    result = idastar(state, pdbs, action_set, budget)
    if not result.solved:
        return None
    return len(result.plan)


class Verdict(enum.Enum):
    VALID = "VALID"
    MOVE_NOT_IN_ACTION_SET = "MOVE_NOT_IN_ACTION_SET"
    NOT_SOLVED_AT_END = "NOT_SOLVED_AT_END"

    @property
    def valid(self) -> bool:
        return self is Verdict.VALID


def validate_plan(state: CubeState, plan, action_set: ActionSet) -> Verdict:
    """
    Check that a plan uses allowed moves and solves the cube.

    >>> from rcplan.moves import parse_moves
    >>> validate_plan(SOLVED, parse_moves("F2 F2"), ActionSet.QUARTER_12)
    <Verdict.MOVE_NOT_IN_ACTION_SET: 'MOVE_NOT_IN_ACTION_SET'>
    """
    if any(move not in action_set for move in plan):
        return Verdict.MOVE_NOT_IN_ACTION_SET
    if not apply_plan(state, plan).is_solved():
        return Verdict.NOT_SOLVED_AT_END
    return Verdict.VALID


def _merge_pass(plan) -> list:
    merged = []
    for move in plan:
        if merged and merged[-1].face == move.face:
            quarters = (merged.pop().turn.quarters + move.turn.quarters) % 4
            if quarters:
                merged.append(Move(move.face, Turn.from_quarters(quarters)))
        else:
            merged.append(move)
    return merged


def metric_convert(plan, target: ActionSet) -> tuple:
    """
    Rewrite a plan for another action set without changing its effect.

    For FULL_18, adjacent turns of one face are merged (cancelling if
    they undo each other) until none are left. For QUARTER_12, each
    half turn becomes two clockwise quarter turns.

    >>> from rcplan.moves import format_moves, parse_moves
    >>> format_moves(metric_convert(parse_moves("F F"), ActionSet.FULL_18))
    'F2'
    >>> format_moves(metric_convert(parse_moves("F2"), ActionSet.QUARTER_12))
    'F F'
    """
    plan = list(plan)
    if target is ActionSet.QUARTER_12:
        converted = []
        for move in plan:
            if move.is_quarter:
                converted.append(move)
            else:
                converted.extend([Move(move.face, Turn.CW90)] * 2)
        return tuple(converted)
    while True:
        merged = _merge_pass(plan)
        if merged == plan:
            return tuple(merged)
        plan = merged


def plan_length(plan, metric: ActionSet) -> int:
    """
    Measure a plan, a half turn counting twice in the quarter-turn metric.

    >>> from rcplan.moves import parse_moves
    >>> plan_length(parse_moves("F2 U"), ActionSet.QUARTER_12)
    3
    """
    if metric is ActionSet.FULL_18:
        return len(plan)
    return sum(1 if move.is_quarter else 2 for move in plan)


@dataclass(frozen=True)
class OptimalityReport:
    instance_id: str
    # None when no plan was found
    plan_length: Optional[int]
    # None when the oracle ran out of budget
    optimal_length: Optional[int]
    metric: ActionSet

    @property
    def is_optimal(self) -> Optional[bool]:
        if self.plan_length is None:
            return False
        if self.optimal_length is None:
            return None
        return self.plan_length == self.optimal_length

    @property
    def save_data(self):
        return {
            "instance": self.instance_id,
            "plan_len": self.plan_length,
            "optimal_len": self.optimal_length,
            "is_optimal": self.is_optimal,
            "metric": self.metric.name,
        }


@dataclass(frozen=True)
class OptimalitySummary:
    """
    Optimality counts over a set of plans.

    percentage uses the plans classified as optimal or not;
    percentage_of_all counts every instance, unsolved ones as not
    optimal.
    """

    reports: tuple

    @property
    def solved(self) -> list:
        return [r for r in self.reports if r.plan_length is not None]

    @property
    def optimal(self) -> int:
        return sum(1 for r in self.reports if r.is_optimal)

    @property
    def classified(self) -> int:
        return sum(1 for r in self.solved if r.is_optimal is not None)

    @property
    def unknown(self) -> int:
        return sum(1 for r in self.solved if r.is_optimal is None)

    @property
    def percentage(self) -> Optional[float]:
        return number_formats.ratio_percentage(self.optimal, self.classified)

    @property
    def percentage_of_all(self) -> Optional[float]:
        return number_formats.ratio_percentage(self.optimal, len(self.reports))

    def describe(self) -> str:
        return (
            f"{self.optimal}/{self.classified} optimal"
            f" ({number_formats.percentage(self.percentage)}),"
            f" {self.unknown} unknown,"
            f" {number_formats.percentage(self.percentage_of_all)} of all"
        )


def classify_optimality(
    results, action_set: ActionSet, budget: SearchLimits = None, known=None
) -> OptimalitySummary:
    """
    Compare each plan with the optimal length in a metric.

    results holds (instance id, start state, plan or None) triples.
    known maps instance ids to optimal lengths found earlier, which
    saves calling the oracle again, and is updated with new ones.
    """
    lengths = (
        (instance_id, state, None if plan is None else plan_length(plan, action_set))
        for instance_id, state, plan in results
    )
    return classify_lengths(
        lengths,
        action_set,
        budget,
        known,
    )


def classify_lengths(
    results, action_set: ActionSet, budget: SearchLimits = None, known=None
) -> OptimalitySummary:
    """Classify (instance id, start state, plan length or None) triples."""
    known = {} if known is None else known
    reports = []
    for instance_id, state, length in results:
        optimal = known.get(instance_id)
        if optimal is None and length is not None:
            optimal = optimal_length(state, action_set, budget)
            if optimal is not None:
                known[instance_id] = optimal
        if optimal is not None and length is not None and length < optimal:
            raise ValueError(
                f"{instance_id}: plan of {length} beats the optimal {optimal}"
            )
        reports.append(OptimalityReport(instance_id, length, optimal, action_set))
    summary = OptimalitySummary(tuple(reports))
    log.info("optimality in %s: %s", action_set.name, summary.describe())
    return summary
