"""
A* and IDA* over the move engine.

Successors are generated in the fixed move order U, Urev, U2, D, ...
restricted to the action set. A* breaks ties on f by lower g, then by
generation order, and tests for the goal when a node is popped, so a
solved start takes no expansions.
"""
import enum
import heapq
import itertools
import logging
import math
import time
from dataclasses import dataclass
from typing import Optional

from rcplan import settings
from rcplan.cube import CubeState, apply_move
from rcplan.geometry import FACES, OPPOSITE
from rcplan.moves import ActionSet, format_moves

log = logging.getLogger(__name__)

# Expansions between clock checks
CHECK_INTERVAL = 1024
# Rough bytes per stored A* node (state, g, h, parent link and heap entry)
NODE_BYTES = 600


class Status(enum.Enum):
    SOLVED = "SOLVED"
    TIMEOUT = "TIMEOUT"
    MEMOUT = "MEMOUT"
    EXHAUSTED = "EXHAUSTED"


@dataclass(frozen=True)
class SearchLimits:
    """
    Budgets for one search.

    Memory is bounded by the number of stored nodes, roughly
    NODE_BYTES each for A*.
    """

    wall_time: float = 60.0
    max_stored_nodes: int = 10_000_000
    max_expansions: Optional[int] = None

    def __post_init__(self):
        if self.wall_time <= 0 or self.max_stored_nodes <= 0:
            raise ValueError("search limits must be positive")
        if self.max_expansions is not None and self.max_expansions <= 0:
            raise ValueError("search limits must be positive")

    @classmethod
    def desk(cls, current=None):
        current = settings.current() if current is None else current
        return cls(current.time_limit, current.max_stored_nodes)

    @classmethod
    def long(cls, current=None):
        current = settings.current() if current is None else current
        return cls(current.long_time_limit, current.long_max_stored_nodes)


@dataclass(frozen=True)
class PlanResult:
    status: Status
    plan: tuple
    expansions: int
    generated: int
    peak_stored: int
    wall_time: float
    heuristic_initial: float

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED

    @property
    def save_data(self):
        return {
            "status": self.status.value,
            "plan": [move.name for move in self.plan],
            "expansions": self.expansions,
            "generated": self.generated,
            "peak_stored": self.peak_stored,
            "wall_time": self.wall_time,
            "heuristic_initial": self.heuristic_initial,
        }


def _plan(parents: dict, state: CubeState) -> tuple:
    plan = []
    while True:
        previous, move = parents[state]
        if previous is None:
            return tuple(reversed(plan))
        plan.append(move)
        state = previous


def astar(
    state: CubeState,
    heuristic,
    action_set: ActionSet,
    limits: SearchLimits = None,
) -> PlanResult:
    """
    Search for a plan, optimal if the heuristic is admissible and consistent.

    A node is reopened when a cheaper path to it turns up.
    """
    limits = SearchLimits() if limits is None else limits
    moves = action_set.moves
    check_monotone = __debug__ and getattr(heuristic, "consistent", False)
    started = time.perf_counter()
    counter = itertools.count()
    h_start = heuristic(state)
    g_values = {state: 0}
    h_values = {state: h_start}
    parents = {state: (None, None)}
    open_list = [(h_start, 0, next(counter), state)]
    expansions = generated = 0
    last_f = -math.inf

    def result(status, plan=()):
        outcome = PlanResult(
            status=status,
            plan=plan,
            expansions=expansions,
            generated=generated,
            peak_stored=len(g_values),
            wall_time=time.perf_counter() - started,
            heuristic_initial=h_start,
        )
        log.debug(
            "A* %s after %d expansions, %d generated, plan %s",
            status.name,
            expansions,
            generated,
            format_moves(plan),
        )
        return outcome

    log.debug("A* from h=%s with %s", h_start, getattr(heuristic, "label", heuristic))
    while open_list:
        f, g, _, current = heapq.heappop(open_list)
        if g > g_values[current]:
            continue
        if check_monotone:
            assert f >= last_f, "f decreased under a consistent heuristic"
            last_f = f
        if current.is_solved():
            return result(Status.SOLVED, _plan(parents, current))
        if limits.max_expansions is not None and expansions >= limits.max_expansions:
            return result(Status.TIMEOUT)
        if (
            expansions % CHECK_INTERVAL == 0
            and time.perf_counter() - started > limits.wall_time
        ):
            return result(Status.TIMEOUT)
        expansions += 1
        for move in moves:
            child = apply_move(current, move)
            generated += 1
            child_g = g + 1
            if child_g >= g_values.get(child, math.inf):
                continue
            g_values[child] = child_g
            parents[child] = (current, move)
            if child not in h_values:
                h_values[child] = heuristic(child)
            heapq.heappush(
                open_list, (child_g + h_values[child], child_g, next(counter), child)
            )
        if len(g_values) > limits.max_stored_nodes:
            return result(Status.MEMOUT)
    return result(Status.EXHAUSTED)


def pruned(move, last, before_last, action_set: ActionSet) -> bool:
    """
    Whether a move can be skipped after the last two in IDA*.

    Every move sequence has an equally short one that is never
    skipped: turns of one face are merged, and turns of opposite faces
    (which commute) are put in U, L, F before D, R, B order.
    """
    if last is None:
        return False
    if last.face == OPPOSITE[move.face] and FACES.index(move.face) < FACES.index(
        last.face
    ):
        return True
    if action_set is ActionSet.FULL_18:
        return move.face == last.face
    if move == last.inverse:
        return True
    return move == last and move == before_last


class _OutOfBudget(Exception):
    pass


def idastar(
    state: CubeState,
    heuristic,
    action_set: ActionSet,
    limits: SearchLimits = None,
) -> PlanResult:
    """
    Iterative deepening A*, storing only the current path.

    With an admissible heuristic the first plan found is optimal.
    """
    limits = SearchLimits() if limits is None else limits
    moves = action_set.moves
    started = time.perf_counter()
    h_start = heuristic(state)
    path = []
    counts = {"expansions": 0, "generated": 0, "peak": 1}
    found = object()

    def search(node, g, bound, last, before_last):
        f = g + heuristic(node)
        if f > bound:
            return f
        if node.is_solved():
            return found
        if (
            limits.max_expansions is not None
            and counts["expansions"] >= limits.max_expansions
        ):
            raise _OutOfBudget
        if (
            counts["expansions"] % CHECK_INTERVAL == 0
            and time.perf_counter() - started > limits.wall_time
        ):
            raise _OutOfBudget
        counts["expansions"] += 1
        smallest = math.inf
        for move in moves:
            if pruned(move, last, before_last, action_set):
                continue
            counts["generated"] += 1
            path.append(move)
            counts["peak"] = max(counts["peak"], len(path) + 1)
            t = search(apply_move(node, move), g + 1, bound, move, last)
            if t is found:
                return found
            path.pop()
            smallest = min(smallest, t)
        return smallest

    def result(status, plan=()):
        log.debug(
            "IDA* %s after %d expansions, plan %s",
            status.name,
            counts["expansions"],
            format_moves(plan),
        )
        return PlanResult(
            status=status,
            plan=plan,
            expansions=counts["expansions"],
            generated=counts["generated"],
            peak_stored=counts["peak"],
            wall_time=time.perf_counter() - started,
            heuristic_initial=h_start,
        )

    bound = h_start
    while True:
        log.debug("IDA* bound %s", bound)
        try:
            t = search(state, 0, bound, None, None)
        except _OutOfBudget:
            return result(Status.TIMEOUT)
        if t is found:
            return result(Status.SOLVED, tuple(path))
        if t == math.inf:
            return result(Status.EXHAUSTED)
        bound = t


SEARCHES = {"astar": astar, "idastar": idastar}
