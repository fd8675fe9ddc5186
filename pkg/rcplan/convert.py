"""Convert cube states between the text forms of each representation."""
import math

from rcplan import serialise
from rcplan.cube import (
    CORNER_COUNT,
    EDGE_COUNT,
    CubeState,
    FactoredState,
    from_factored,
    to_factored,
)
from rcplan.filetypes.pddl import emit_problem, parse_problem
from rcplan.grounding import ATOM_COUNT
from rcplan.stickers import FACELET_COUNT, StickerArray, from_stickers, to_stickers

REPRESENTATIONS = ("sticker", "factored", "cubie", "pddl")


def read_state(kind: str, text: str) -> CubeState:
    if kind == "sticker":
        return from_stickers(StickerArray.from_string(text))
    if kind == "factored":
        return from_factored(FactoredState(tuple(serialise.loads(text))))
    if kind == "cubie":
        return CubeState.from_data(serialise.loads(text))
    if kind == "pddl":
        return parse_problem(text)
    raise ValueError(f"Unknown representation: {kind}")


def write_state(kind: str, state: CubeState, name="converted") -> str:
    if kind == "sticker":
        return str(to_stickers(state)) + "\n"
    if kind == "factored":
        return serialise.dumps(to_factored(state).save_data) + "\n"
    if kind == "cubie":
        return serialise.dumps(state.save_data) + "\n"
    if kind == "pddl":
        return emit_problem(state, name)
    raise ValueError(f"Unknown representation: {kind}")


def convert(text: str, source: str, target: str, name="converted") -> str:
    return write_state(target, read_state(source, text), name)


def representation_footprint() -> dict:
    """
    Get the bytes needed to store one state in each representation.

    The factored form takes a byte each for occupant and orientation,
    and the PDDL form is one bit per ground atom.

    >>> representation_footprint()
    {'sticker': 54, 'factored': 40, 'cubie': 40, 'pddl': 270}
    """
    return {
        "sticker": FACELET_COUNT,
        "factored": 2 * (CORNER_COUNT + EDGE_COUNT),
        "cubie": 2 * (CORNER_COUNT + EDGE_COUNT),
        "pddl": math.ceil(ATOM_COUNT / 8),
    }
