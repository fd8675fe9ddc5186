"""The heuristic suite: blind, goal count, FF and maximum-of-PDBs."""
import enum
from dataclasses import dataclass, field
from typing import Callable

from rcplan import pdb as pdbs_module
from rcplan.cube import CubeState, misplaced_cubies
from rcplan.grounding import ground, h_ff
from rcplan.moves import ActionSet


def h_blind(state: CubeState) -> int:
    """Give 0 for the solved cube and 1 otherwise."""
    return 0 if state.is_solved() else 1


def h_goal_count(state: CubeState) -> int:
    """Count the cubies not in their solved slot and orientation."""
    return misplaced_cubies(state)


def h_pdb_max(state: CubeState, pdbs) -> int:
    """Take the largest distance over some pattern databases."""
    if isinstance(pdbs, pdbs_module.PdbCollection):
        return pdbs(state)
    return max(pdb.lookup(state) for pdb in pdbs)


class HeuristicKind(enum.Enum):
    BLIND = "blind"
    GOAL_COUNT = "gc"
    FF = "ff"
    PDB_MANUAL = "pdb-man"
    PDB_SYSTEMATIC = "pdb-sys"


@dataclass(frozen=True)
class HeuristicConfig:
    kind: HeuristicKind
    action_set: ActionSet
    # Largest pattern size, for PDB_SYSTEMATIC
    max_size: int = 3

    @property
    def label(self) -> str:
        """
        The short name used on the command line and in reports.

        >>> HeuristicConfig.from_name("pdb-sys3", ActionSet.FULL_18).label
        'pdb-sys3'
        """
        if self.kind is HeuristicKind.PDB_SYSTEMATIC:
            return f"{self.kind.value}{self.max_size}"
        return self.kind.value

    @property
    def patterns(self) -> tuple:
        if self.kind is HeuristicKind.PDB_MANUAL:
            return pdbs_module.manual_patterns()
        if self.kind is HeuristicKind.PDB_SYSTEMATIC:
            return pdbs_module.systematic_patterns(self.max_size)
        return ()

    @classmethod
    def from_name(cls, name: str, action_set: ActionSet):
        name = name.casefold()
        if name.startswith(HeuristicKind.PDB_SYSTEMATIC.value):
            size = name[len(HeuristicKind.PDB_SYSTEMATIC.value) :] or "3"
            if not size.isdigit():
                raise ValueError(f"Unknown heuristic: {name}")
            return cls(HeuristicKind.PDB_SYSTEMATIC, action_set, int(size))
        try:
            return cls(HeuristicKind(name), action_set)
        except ValueError as e:
            raise ValueError(f"Unknown heuristic: {name}") from e


@dataclass(frozen=True)
class Heuristic:
    """A heuristic ready for search."""

    label: str
    function: Callable = field(repr=False)
    admissible: bool
    consistent: bool

    def __call__(self, state: CubeState) -> int:
        return self.function(state)


def make_heuristic(config: HeuristicConfig, pdb_directory=None) -> Heuristic:
    """Build what a heuristic needs, loading or building any tables."""
    kind = config.kind
    if kind is HeuristicKind.BLIND:
        return Heuristic(config.label, h_blind, True, True)
    if kind is HeuristicKind.GOAL_COUNT:
        # A quarter turn moves 8 cubies, so goal count can overestimate
        return Heuristic(config.label, h_goal_count, False, False)
    if kind is HeuristicKind.FF:
        task = ground(config.action_set)
        return Heuristic(config.label, lambda state: h_ff(task, state), False, False)
    patterns = pdbs_module.maximal_patterns(config.patterns)
    collection = pdbs_module.load_collection(
        patterns, config.action_set, pdb_directory
    )
    return Heuristic(config.label, collection, True, True)
