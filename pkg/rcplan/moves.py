"""Face turns, their notation and the two action sets."""
from dataclasses import dataclass
from enum import Enum

from rcplan import RcPlanError
from rcplan.geometry import FACES


class ParseError(RcPlanError):
    """Text could not be read. Carries the offending token or line."""

    def __init__(self, message, token=None, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.token = token
        self.line = line


class Turn(Enum):
    """A turn of a face, with its notation suffix as the value."""

    CW90 = ""
    CCW90 = "rev"
    HALF = "2"

    @property
    def quarters(self) -> int:
        """The number of clockwise quarter turns this is equivalent to."""
        return {Turn.CW90: 1, Turn.HALF: 2, Turn.CCW90: 3}[self]

    @classmethod
    def from_quarters(cls, quarters: int):
        return {1: cls.CW90, 2: cls.HALF, 3: cls.CCW90}[quarters % 4]


@dataclass(frozen=True)
class Move:
    face: str
    turn: Turn

    @property
    def name(self) -> str:
        """
        The move's notation.

        >>> Move("F", Turn.HALF).name
        'F2'
        """
        return self.face + self.turn.value

    @property
    def index(self) -> int:
        """Position in the fixed move order U, Urev, U2, D, ..., B2."""
        return FACES.index(self.face) * 3 + list(Turn).index(self.turn)

    @property
    def inverse(self):
        """
        The move undoing this one.

        >>> parse_move("L").inverse.name
        'Lrev'
        """
        return Move(self.face, Turn.from_quarters(-self.turn.quarters))

    @property
    def is_quarter(self) -> bool:
        return self.turn is not Turn.HALF

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"{self.__class__.__qualname__}({self.name!r})"


MOVES = tuple(Move(face, turn) for face in FACES for turn in Turn)
BY_NAME = {move.name: move for move in MOVES}
# Lower-cased, as PDDL planners print action names
BY_LOWER_NAME = {move.name.casefold(): move for move in MOVES}


class ActionSet(Enum):
    """
    The move regimes: 12 quarter turns or all 18 face turns.

    QUARTER_12 is model m1 and dataset d1; FULL_18 is m2 and d2.
    """

    QUARTER_12 = 12
    FULL_18 = 18

    @property
    def moves(self) -> tuple:
        if self is ActionSet.QUARTER_12:
            return tuple(move for move in MOVES if move.is_quarter)
        return MOVES

    @property
    def model(self) -> str:
        return {ActionSet.QUARTER_12: "m1", ActionSet.FULL_18: "m2"}[self]

    @property
    def dataset(self) -> str:
        return {ActionSet.QUARTER_12: "d1", ActionSet.FULL_18: "d2"}[self]

    def __contains__(self, move):
        return move.is_quarter or self is ActionSet.FULL_18

    @classmethod
    def from_name(cls, name):
        """
        Get an action set from a count, model name or dataset name.

        >>> ActionSet.from_name("m2")
        <ActionSet.FULL_18: 18>
        >>> ActionSet.from_name(12)
        <ActionSet.QUARTER_12: 12>
        """
        if isinstance(name, cls):
            return name
        key = str(name).casefold()
        for action_set in cls:
            if key in {
                str(action_set.value),
                action_set.model,
                action_set.dataset,
                action_set.name.casefold(),
            }:
                return action_set
        raise ValueError(f"Unknown action set: {name}")


def parse_move(token: str) -> Move:
    """
    Read a move in the U, Urev, U2 notation.

    A trailing apostrophe is accepted for anticlockwise turns.

    >>> parse_move("Frev")
    Move('Frev')
    >>> parse_move("R'")
    Move('Rrev')
    """
    name = token[:-1] + "rev" if token.endswith("'") else token
    try:
        return BY_NAME[name]
    except KeyError as e:
        raise ParseError(f"unknown move {token!r}", token=token) from e


def parse_moves(text: str) -> list:
    """Read a whitespace-separated sequence of moves."""
    return [parse_move(token) for token in text.split()]


def format_moves(moves) -> str:
    return " ".join(move.name for move in moves)


def inverse_sequence(moves) -> list:
    """
    Get the sequence undoing a sequence of moves.

    >>> format_moves(inverse_sequence(parse_moves("F U2 Rrev")))
    'R U2 Frev'
    """
    return [move.inverse for move in reversed(moves)]
