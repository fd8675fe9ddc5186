"""
The cubie-level cube state and the move engine.

A CubeState says which cubie occupies each slot and how it is twisted.
corner_ori[i] is the index, in slot i's facelet order, of the facelet
showing the cubie's Up/Down colour, so it counts clockwise twists.
edge_ori[i] is 1 when the edge's reference colour (Up/Down, or
Front/Back for middle-layer edges) is not on the slot's reference
facelet.
"""
from dataclasses import dataclass

from rcplan import RcPlanError, geometry
from rcplan.moves import MOVES

CORNER_COUNT = 8
EDGE_COUNT = 12


class InvalidFactored(RcPlanError):
    pass


@dataclass(frozen=True)
class CubeState:
    corner_perm: tuple
    corner_ori: tuple
    edge_perm: tuple
    edge_ori: tuple

    def is_solved(self) -> bool:
        return self == SOLVED

    @property
    def save_data(self):
        return {
            "corner_perm": list(self.corner_perm),
            "corner_ori": list(self.corner_ori),
            "edge_perm": list(self.edge_perm),
            "edge_ori": list(self.edge_ori),
        }

    @classmethod
    def from_data(cls, data):
        return cls(**{key: tuple(value) for key, value in data.items()})


SOLVED = CubeState(
    tuple(range(CORNER_COUNT)),
    (0,) * CORNER_COUNT,
    tuple(range(EDGE_COUNT)),
    (0,) * EDGE_COUNT,
)


def multiply(first: CubeState, second: CubeState) -> CubeState:
    """
    Compose two states: apply the permutation of second after first.

    Slot i of the result holds what first had in slot second.perm[i],
    twisted further by second.ori[i].
    """
    return CubeState(
        tuple(first.corner_perm[j] for j in second.corner_perm),
        tuple(
            (first.corner_ori[j] + twist) % 3
            for j, twist in zip(second.corner_perm, second.corner_ori)
        ),
        tuple(first.edge_perm[j] for j in second.edge_perm),
        tuple(
            (first.edge_ori[j] + flip) % 2
            for j, flip in zip(second.edge_perm, second.edge_ori)
        ),
    )


def _quarter_part(face, positions, facelets):
    """Get (perm, ori) of a clockwise quarter turn for one cubie type."""
    perm = list(range(len(positions)))
    ori = [0] * len(positions)
    normal = geometry.NORMALS[face]
    for source, where in enumerate(positions):
        if geometry.dot(where, normal) != 1:
            continue
        target = positions.index(geometry.turn(where, face))
        reference = geometry.turn(geometry.NORMALS[facelets[source][0]], face)
        perm[target] = source
        ori[target] = facelets[target].index(geometry.FACE_OF_NORMAL[reference])
    return tuple(perm), tuple(ori)


def quarter_turn(face: str) -> CubeState:
    """Get the state a clockwise quarter turn of a face makes from solved."""
    corners = _quarter_part(face, geometry.CORNER_POSITIONS, geometry.CORNER_FACELETS)
    edges = _quarter_part(face, geometry.EDGE_POSITIONS, geometry.EDGE_FACELETS)
    return CubeState(*corners, *edges)


def _move_state(move) -> CubeState:
    quarter = quarter_turn(move.face)
    result = quarter
    for _ in range(move.turn.quarters - 1):
        result = multiply(result, quarter)
    return result


# Indexed by Move.index
MOVE_STATES = tuple(_move_state(move) for move in MOVES)


def apply_move(state: CubeState, move) -> CubeState:
    return multiply(state, MOVE_STATES[move.index])


def apply_plan(state: CubeState, plan) -> CubeState:
    for move in plan:
        state = apply_move(state, move)
    return state


def is_permutation(values, size) -> bool:
    return len(values) == size and set(values) == set(range(size))


def permutation_parity(values) -> int:
    """
    Get 0 for an even permutation and 1 for an odd one.

    >>> permutation_parity((1, 0, 2))
    1
    """
    parity = 0
    for i, value in enumerate(values):
        parity += sum(1 for later in values[i + 1 :] if later < value)
    return parity % 2


def check_solvability(state: CubeState) -> bool:
    """
    Determine if a state can be reached from solved by face turns.

    >>> check_solvability(SOLVED)
    True
    >>> check_solvability(CubeState(SOLVED.corner_perm, (1,) + (0,) * 7,
    ...                             SOLVED.edge_perm, SOLVED.edge_ori))
    False
    """
    if not (
        is_permutation(state.corner_perm, CORNER_COUNT)
        and is_permutation(state.edge_perm, EDGE_COUNT)
    ):
        return False
    if any(o not in range(3) for o in state.corner_ori) or any(
        o not in range(2) for o in state.edge_ori
    ):
        return False
    return (
        sum(state.corner_ori) % 3 == 0
        and sum(state.edge_ori) % 2 == 0
        and permutation_parity(state.corner_perm)
        == permutation_parity(state.edge_perm)
    )


@dataclass(frozen=True)
class FactoredState:
    """
    The state as 20 variables, one per cubie slot.

    Each entry is (occupant, orientation); the 8 corners come first.
    """

    cubies: tuple

    @property
    def save_data(self):
        return [list(entry) for entry in self.cubies]


def to_factored(state: CubeState) -> FactoredState:
    return FactoredState(
        tuple(zip(state.corner_perm, state.corner_ori))
        + tuple(zip(state.edge_perm, state.edge_ori))
    )


def from_factored(factored: FactoredState) -> CubeState:
    cubies = [tuple(entry) for entry in factored.cubies]
    if len(cubies) != CORNER_COUNT + EDGE_COUNT:
        raise InvalidFactored(f"expected 20 variables, got {len(cubies)}")
    corners = cubies[:CORNER_COUNT]
    edges = cubies[CORNER_COUNT:]
    for part, size, modulus in ((corners, CORNER_COUNT, 3), (edges, EDGE_COUNT, 2)):
        occupants = [occupant for occupant, _ in part]
        if not is_permutation(occupants, size):
            raise InvalidFactored(f"occupants {occupants} are not a permutation")
        if any(ori not in range(modulus) for _, ori in part):
            raise InvalidFactored(f"orientation out of range 0..{modulus - 1}")
    return CubeState(
        tuple(o for o, _ in corners),
        tuple(t for _, t in corners),
        tuple(o for o, _ in edges),
        tuple(f for _, f in edges),
    )


def cubie_locations(state: CubeState) -> tuple:
    """
    Find where each cubie is.

    Returns (corners, edges) lists coding each cubie's location as
    slot * 3 + twist for corners and slot * 2 + flip for edges.
    """
    corners = [0] * CORNER_COUNT
    for slot, (cubie, twist) in enumerate(zip(state.corner_perm, state.corner_ori)):
        corners[cubie] = slot * 3 + twist
    edges = [0] * EDGE_COUNT
    for slot, (cubie, flip) in enumerate(zip(state.edge_perm, state.edge_ori)):
        edges[cubie] = slot * 2 + flip
    return corners, edges


def misplaced_cubies(state: CubeState) -> int:
    """Count cubies not in their home slot with zero orientation."""
    return sum(
        1
        for slot, (cubie, twist) in enumerate(zip(state.corner_perm, state.corner_ori))
        if cubie != slot or twist
    ) + sum(
        1
        for slot, (cubie, flip) in enumerate(zip(state.edge_perm, state.edge_ori))
        if cubie != slot or flip
    )


def turned_face_slots(face: str) -> tuple:
    """Get the corner and edge slot indices on a face."""
    normal = geometry.NORMALS[face]
    return (
        tuple(
            i
            for i, where in enumerate(geometry.CORNER_POSITIONS)
            if geometry.dot(where, normal) == 1
        ),
        tuple(
            i
            for i, where in enumerate(geometry.EDGE_POSITIONS)
            if geometry.dot(where, normal) == 1
        ),
    )

