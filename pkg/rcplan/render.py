"""Print cube states as unfolded nets, and step through plans."""
from rcplan import RcPlanError
from rcplan.cube import CubeState, apply_move
from rcplan.geometry import NET_ORDER
from rcplan.moves import ActionSet
from rcplan.oracle import validate_plan
from rcplan.stickers import to_stickers


class InvalidPlan(RcPlanError):
    pass


def _face_rows(facelets, face: str) -> list:
    start = NET_ORDER.index(face) * 9
    block = facelets[start : start + 9]
    return [" ".join(block[row * 3 : row * 3 + 3]) for row in range(3)]


def render_state(state: CubeState) -> str:
    """
    Draw the net with Up on top, then Left, Front, Right and Back, then Down.

    >>> from rcplan.cube import SOLVED
    >>> print(render_state(SOLVED))
            R R R
            R R R
            R R R
    B B B   W W W   G G G   Y Y Y
    B B B   W W W   G G G   Y Y Y
    B B B   W W W   G G G   Y Y Y
            O O O
            O O O
            O O O
    """
    facelets = to_stickers(state).facelets
    pad = " " * 8
    lines = [pad + row for row in _face_rows(facelets, "U")]
    middle = [_face_rows(facelets, face) for face in "LFRB"]
    lines.extend("   ".join(rows) for rows in zip(*middle))
    lines.extend(pad + row for row in _face_rows(facelets, "D"))
    return "\n".join(lines)


def render_trace(state: CubeState, plan, action_set: ActionSet) -> list:
    """
    Draw the state before the plan and after each move.

    Gives one frame more than there are moves.
    """
    verdict = validate_plan(state, plan, action_set)
    if not verdict.valid:
        raise InvalidPlan(f"plan does not solve the cube: {verdict.value}")
    frames = [f"start\n{render_state(state)}"]
    for step, move in enumerate(plan, start=1):
        state = apply_move(state, move)
        frames.append(f"{step}: {move.name}\n{render_state(state)}")
    return frames
