"""Convert between cube states and 54-facelet colour arrays."""
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from rcplan import RcPlanError, geometry
from rcplan.cube import CubeState

FACELET_COUNT = 54

CENTRES = {
    geometry.facelet_index(geometry.NORMALS[face], face): colour
    for face, colour in geometry.FACE_COLOURS.items()
}


class InvalidArray(RcPlanError):
    pass


@dataclass(frozen=True)
class StickerArray:
    """
    The colours of all 54 facelets, as single-letter codes.

    Codes are W, R, G, Y, O and B (white, red, green, yellow, orange
    and blue).
    """

    facelets: tuple

    def __str__(self):
        return "".join(self.facelets)

    @classmethod
    def from_string(cls, text: str):
        return cls(tuple(text.replace(" ", "").replace("\n", "").upper()))


def _home_colours(facelets):
    return tuple(
        tuple(geometry.FACE_COLOURS[face] for face in faces) for faces in facelets
    )


HOME_CORNER_COLOURS = _home_colours(geometry.CORNER_FACELETS)
HOME_EDGE_COLOURS = _home_colours(geometry.EDGE_FACELETS)
CORNER_BY_COLOURS = {colours: i for i, colours in enumerate(HOME_CORNER_COLOURS)}
EDGE_BY_COLOURS = {colours: i for i, colours in enumerate(HOME_EDGE_COLOURS)}

CORNER_INDICES = tuple(
    tuple(geometry.facelet_index(where, face) for face in faces)
    for where, faces in zip(geometry.CORNER_POSITIONS, geometry.CORNER_FACELETS)
)
EDGE_INDICES = tuple(
    tuple(geometry.facelet_index(where, face) for face in faces)
    for where, faces in zip(geometry.EDGE_POSITIONS, geometry.EDGE_FACELETS)
)


def check_layout(layout: Optional[Sequence[int]]):
    if layout is not None and sorted(layout) != list(range(FACELET_COUNT)):
        raise ValueError("layout must be a permutation of 0..53")


def to_stickers(state: CubeState, layout=None) -> StickerArray:
    """
    Paint a cube state onto the 54 facelets.

    layout, if given, maps each index of the external array to our
    index, for arrays using another facelet order.
    """
    check_layout(layout)
    colours = [None] * FACELET_COUNT
    for index, colour in CENTRES.items():
        colours[index] = colour
    for slot, (cubie, twist) in enumerate(zip(state.corner_perm, state.corner_ori)):
        home = HOME_CORNER_COLOURS[cubie]
        for k in range(3):
            colours[CORNER_INDICES[slot][(twist + k) % 3]] = home[k]
    for slot, (cubie, flip) in enumerate(zip(state.edge_perm, state.edge_ori)):
        home = HOME_EDGE_COLOURS[cubie]
        for k in range(2):
            colours[EDGE_INDICES[slot][(flip + k) % 2]] = home[k]
    if layout is not None:
        colours = [colours[ours] for ours in layout]
    return StickerArray(tuple(colours))


def _read_corner(colours, slot):
    found = tuple(colours[i] for i in CORNER_INDICES[slot])
    axis_colours = [i for i, colour in enumerate(found) if colour in "RO"]
    if len(axis_colours) != 1:
        raise InvalidArray(f"corner {geometry.CORNER_NAMES[slot]} shows {found}")
    twist = axis_colours[0]
    ordered = tuple(found[(twist + k) % 3] for k in range(3))
    try:
        return CORNER_BY_COLOURS[ordered], twist
    except KeyError as e:
        raise InvalidArray(
            f"no corner has colours {found} in that order"
            f" (at {geometry.CORNER_NAMES[slot]})"
        ) from e


def _read_edge(colours, slot):
    found = tuple(colours[i] for i in EDGE_INDICES[slot])
    for flip in (0, 1):
        ordered = (found[flip], found[1 - flip])
        if ordered in EDGE_BY_COLOURS:
            return EDGE_BY_COLOURS[ordered], flip
    raise InvalidArray(f"no edge has colours {found} (at {geometry.EDGE_NAMES[slot]})")


def from_stickers(array: StickerArray, layout=None) -> CubeState:
    """Recover the cube state shown by a facelet array."""
    check_layout(layout)
    external = list(array.facelets)
    if len(external) != FACELET_COUNT:
        raise InvalidArray(f"expected 54 facelets, got {len(external)}")
    colours = [None] * FACELET_COUNT
    if layout is None:
        colours = external
    else:
        for index, ours in enumerate(layout):
            colours[ours] = external[index]

    unknown = set(colours) - set(geometry.COLOURS)
    if unknown:
        raise InvalidArray(f"unknown colour codes {sorted(map(str, unknown))}")
    counts = Counter(colours)
    wrong = {colour: n for colour, n in counts.items() if n != 9}
    if wrong:
        raise InvalidArray(f"each colour must appear 9 times, got {wrong}")
    for index, colour in CENTRES.items():
        if colours[index] != colour:
            raise InvalidArray(
                f"centre facelet {index} is {colours[index]}, expected {colour}"
            )

    corners = [_read_corner(colours, slot) for slot in range(8)]
    edges = [_read_edge(colours, slot) for slot in range(12)]
    if len({cubie for cubie, _ in corners}) != 8:
        raise InvalidArray("a corner cubie appears twice")
    if len({cubie for cubie, _ in edges}) != 12:
        raise InvalidArray("an edge cubie appears twice")
    return CubeState(
        tuple(cubie for cubie, _ in corners),
        tuple(twist for _, twist in corners),
        tuple(cubie for cubie, _ in edges),
        tuple(flip for _, flip in edges),
    )
