"""
Seeded scramble generation.

Scrambles are drawn with numpy's Philox4x64-10, a counter-based
generator whose output is fixed by its seed on every platform. Each
move takes one raw 64-bit draw r and picks candidates[r % len], where
candidates are the action set's moves (in the fixed move order) whose
face differs from the previous move's.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rcplan import RcPlanError
from rcplan.cube import SOLVED, CubeState, apply_plan, check_solvability
from rcplan.moves import ActionSet, ParseError, parse_move

log = logging.getLogger(__name__)

MIN_DEPTH = 1
MAX_DEPTH = 20


class InvalidDepth(RcPlanError):
    pass


class ActionSetMismatch(RcPlanError):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    id: str
    scramble: tuple
    depth_n: int
    action_set: ActionSet
    state: CubeState
    seed: int

    @property
    def save_data(self):
        return {
            "id": self.id,
            "depth_n": self.depth_n,
            "scramble": [move.name for move in self.scramble],
            "state": self.state.save_data,
            "seed": self.seed,
        }

    @classmethod
    def from_data(cls, data, action_set: ActionSet):
        scramble = tuple(parse_move(name) for name in data["scramble"])
        return cls(
            id=data["id"],
            scramble=scramble,
            depth_n=data["depth_n"],
            action_set=action_set,
            state=CubeState.from_data(data["state"]),
            seed=data["seed"],
        )


def make_rng(seed: int) -> np.random.Philox:
    return np.random.Philox(np.random.SeedSequence(seed))


def derived_seed(master_seed: int, *key: int) -> int:
    """
    Derive a 64-bit seed from a master seed and a key of integers.

    >>> derived_seed(42, 1, 0, 0) == derived_seed(42, 1, 0, 0)
    True
    >>> derived_seed(42, 1, 0, 0) == derived_seed(42, 1, 0, 1)
    False
    """
    sequence = np.random.SeedSequence(master_seed, spawn_key=key)
    return int(sequence.generate_state(1, np.uint64)[0])


def check_depth(n: int, allow_any_depth=False):
    if n < 0 or not (allow_any_depth or MIN_DEPTH <= n <= MAX_DEPTH):
        raise InvalidDepth(f"scramble depth must be {MIN_DEPTH}..{MAX_DEPTH}, not {n}")


def random_scramble(n: int, action_set: ActionSet, seed: int) -> tuple:
    """Draw n moves, no two consecutive ones turning the same face."""
    rng = make_rng(seed)
    moves = action_set.moves
    scramble = []
    for _ in range(n):
        last_face = scramble[-1].face if scramble else None
        candidates = [move for move in moves if move.face != last_face]
        scramble.append(candidates[int(rng.random_raw()) % len(candidates)])
    return tuple(scramble)


def generate_instance(
    n: int,
    action_set: ActionSet,
    seed: int,
    instance_id: Optional[str] = None,
    allow_any_depth=False,
) -> ProblemInstance:
    """
    Scramble the solved cube with n seeded moves.

    The result depends only on n, the action set and the seed.
    """
    check_depth(n, allow_any_depth)
    scramble = random_scramble(n, action_set, seed)
    state = apply_plan(SOLVED, scramble)
    assert check_solvability(state)
    return ProblemInstance(
        id=instance_id or f"{action_set.dataset}-n{n:02d}-s{seed}",
        scramble=scramble,
        depth_n=n,
        action_set=action_set,
        state=state,
        seed=seed,
    )


def import_scramble(
    text: str, action_set: ActionSet, instance_id="imported", line=None
) -> ProblemInstance:
    """
    Make an instance from a scramble written in move notation.

    Consecutive moves of one face break the generator's rule, but
    imported data is kept as given, with a warning.
    """
    scramble = []
    for token in text.split():
        try:
            move = parse_move(token)
        except ParseError as e:
            raise ParseError(f"unknown move {token!r}", token=token, line=line) from e
        if move not in action_set:
            raise ActionSetMismatch(
                f"{move.name} is not one of the {action_set.name} moves"
            )
        scramble.append(move)
    for first, second in zip(scramble, scramble[1:]):
        if first.face == second.face:
            log.warning(
                "%s: consecutive moves %s %s turn the same face",
                instance_id,
                first.name,
                second.name,
            )
    scramble = tuple(scramble)
    return ProblemInstance(
        id=instance_id,
        scramble=scramble,
        depth_n=len(scramble),
        action_set=action_set,
        state=apply_plan(SOLVED, scramble),
        seed=0,
    )

