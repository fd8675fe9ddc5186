"""
Cube geometry: cubelet positions, facelet normals and face turns.

Coordinates are (x, y, z) with x towards Right, y towards Up and z
towards Front, which is a right-handed frame. A cubelet slot is a
position vector with entries in {-1, 0, 1}; a facelet is a slot
together with the face it points out of.

Slot numbering follows the cubeP / edgePQ names. Corners 1-4 sit on
the Left face and 5-8 on the Right face, laid out so that a clockwise
L turn cycles cube1 -> cube2 -> cube4 -> cube3. An edge is named after
the two corners it joins.
"""

FACES = "UDLRFB"

NORMALS = {
    "U": (0, 1, 0),
    "D": (0, -1, 0),
    "L": (-1, 0, 0),
    "R": (1, 0, 0),
    "F": (0, 0, 1),
    "B": (0, 0, -1),
}
FACE_OF_NORMAL = {normal: face for face, normal in NORMALS.items()}
OPPOSITE = {"U": "D", "D": "U", "L": "R", "R": "L", "F": "B", "B": "F"}

# Colours of the centre facelets
FACE_COLOURS = {"F": "W", "U": "R", "R": "G", "B": "Y", "D": "O", "L": "B"}
COLOURS = "WRGYOB"
COLOUR_NAMES = {
    "W": "white",
    "R": "red",
    "G": "green",
    "Y": "yellow",
    "O": "orange",
    "B": "blue",
}

# The axis a face lies on, named as in the PDDL parameters
AXES = "xyz"
FACE_AXIS = {"F": "x", "B": "x", "U": "y", "D": "y", "L": "z", "R": "z"}

CORNER_SLOTS = ("ULB", "ULF", "DLB", "DLF", "URB", "URF", "DRB", "DRF")
CORNER_NAMES = tuple(f"cube{i}" for i in range(1, 9))
EDGE_SLOTS = ("UL", "BL", "FL", "DL", "UR", "BR", "FR", "DR", "UB", "UF", "DB", "DF")
EDGE_NAMES = (
    "edge12",
    "edge13",
    "edge24",
    "edge34",
    "edge56",
    "edge57",
    "edge68",
    "edge78",
    "edge15",
    "edge26",
    "edge37",
    "edge48",
)

# Unfolded net order of the 54-facelet array
NET_ORDER = "ULFRBD"


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot(a, b):
    return sum(p * q for p, q in zip(a, b))


def position(faces: str) -> tuple:
    """
    Get the position vector of the slot touching the given faces.

    >>> position("ULB")
    (-1, 1, -1)
    >>> position("F")
    (0, 0, 1)
    """
    return tuple(sum(NORMALS[face][axis] for face in faces) for axis in range(3))


def turn(vector, face: str, quarters=1) -> tuple:
    """
    Rotate a vector clockwise about a face's normal.

    Clockwise is as seen looking at the face from outside the cube.

    >>> turn((-1, 1, -1), "L")
    (-1, 1, 1)
    >>> turn((0, 1, 0), "L", 4)
    (0, 1, 0)
    """
    normal = NORMALS[face]
    for _ in range(quarters % 4):
        across = cross(normal, vector)
        along = dot(normal, vector)
        vector = tuple(n * along - c for n, c in zip(normal, across))
    return vector


def corner_facelets(slot_faces: str) -> tuple:
    """
    Order a corner's faces for orientation counting.

    The Up/Down face comes first, followed by the others going
    clockwise round the corner.

    >>> corner_facelets("URF")
    ('U', 'R', 'F')
    >>> corner_facelets("ULF")
    ('U', 'F', 'L')
    """
    first = next(face for face in slot_faces if face in "UD")
    others = [face for face in slot_faces if face != first]
    where = position(slot_faces)
    for second in others:
        if dot(cross(NORMALS[first], NORMALS[second]), where) < 0:
            third = next(face for face in others if face != second)
            return (first, second, third)
    raise ValueError(f"{slot_faces} is not a corner")


def edge_facelets(slot_faces: str) -> tuple:
    """
    Order an edge's faces: Up/Down first, otherwise Front/Back first.

    >>> edge_facelets("BL")
    ('B', 'L')
    >>> edge_facelets("FR")
    ('F', 'R')
    """
    for preferred in ("UD", "FB"):
        for face in slot_faces:
            if face in preferred:
                return (face,) + tuple(f for f in slot_faces if f != face)
    raise ValueError(f"{slot_faces} is not an edge")


CORNER_POSITIONS = tuple(position(slot) for slot in CORNER_SLOTS)
EDGE_POSITIONS = tuple(position(slot) for slot in EDGE_SLOTS)
CORNER_FACELETS = tuple(corner_facelets(slot) for slot in CORNER_SLOTS)
EDGE_FACELETS = tuple(edge_facelets(slot) for slot in EDGE_SLOTS)


def facelet_index(where, face: str) -> int:
    """
    Get the index of a facelet in the 54-element array.

    Faces are serialised in the order U, L, F, R, B, D, each row by row
    as seen on the standard unfolded net.

    >>> facelet_index((0, 1, 0), "U")
    4
    >>> facelet_index(position("ULB"), "U")
    0
    >>> facelet_index(position("DRF"), "D")
    47
    """
    x, y, z = where
    row, column = {
        "U": (z + 1, x + 1),
        "L": (1 - y, z + 1),
        "F": (1 - y, x + 1),
        "R": (1 - y, 1 - z),
        "B": (1 - y, 1 - x),
        "D": (1 - z, x + 1),
    }[face]
    return NET_ORDER.index(face) * 9 + row * 3 + column


def axis_faces(slot_faces: str) -> tuple:
    """
    Get a slot's faces sorted by axis, the order of PDDL parameters.

    >>> axis_faces("ULB")
    ('B', 'U', 'L')
    >>> axis_faces("UL")
    ('U', 'L')
    """
    return tuple(sorted(slot_faces, key=lambda face: AXES.index(FACE_AXIS[face])))
