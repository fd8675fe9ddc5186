"""Read and write plan files, one parenthesised action per line."""
import re
from pathlib import Path

from rcplan import RcPlanError
from rcplan.moves import BY_LOWER_NAME, ParseError

ACTION_LINE = re.compile(r"^\(\s*([^\s()]+)\s*\)$")


class UnknownAction(RcPlanError):
    pass


def parse_plan(text: str) -> list:
    """
    Read the moves in a planner's output.

    Names are matched case-insensitively, and lines starting with ;
    are comments.

    >>> parse_plan("(l)\\n(urev)\\n; cost = 2 (unit cost)")
    [Move('L'), Move('Urev')]
    """
    plan = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        match = ACTION_LINE.match(line)
        if match is None:
            raise ParseError(f"expected (<action>), found {line!r}", line=number)
        name = match.group(1)
        try:
            plan.append(BY_LOWER_NAME[name.casefold()])
        except KeyError as e:
            raise UnknownAction(f"line {number}: unknown action {name!r}") from e
    return plan


def format_plan(plan) -> str:
    """
    Write a plan the way planners do.

    >>> print(format_plan(parse_plan("(F2)")), end="")
    (f2)
    ; cost = 1 (unit cost)
    """
    lines = [f"({move.name.casefold()})" for move in plan]
    lines.append(f"; cost = {len(plan)} (unit cost)")
    return "\n".join(lines) + "\n"


def load(filename: Path) -> list:
    return parse_plan(Path(filename).read_text(encoding="utf-8"))


def save(plan, filename: Path):
    Path(filename).write_text(format_plan(plan), encoding="utf-8")


def load_directory(directory: Path) -> dict:
    """
    Load every plan in a directory, keyed by file name without suffix.

    Planners often name their output sas_plan, so a subdirectory per
    instance holding a sas_plan file is read too.
    """
    plans = {}
    for path in sorted(Path(directory).iterdir()):
        if path.is_dir() and (path / "sas_plan").is_file():
            plans[path.name] = load(path / "sas_plan")
        elif path.is_file() and not path.name.startswith("."):
            plans[path.stem] = load(path)
    return plans
