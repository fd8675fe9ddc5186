"""
The ground propositional task and its delete relaxation.

An atom is a predicate with a tuple of colours. Atoms are numbered
predicate by predicate (in PREDICATES order), with the colour tuple
read as a base-6 number in COLOURS order, so there are
8 * 6**3 + 12 * 6**2 = 2160 of them.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from rcplan import geometry
from rcplan.cube import CubeState
from rcplan.filetypes.pddl import (
    COLOUR_OBJECTS,
    PREDICATE_FACES,
    PREDICATE_INDEX,
    PREDICATES,
    SOLVED_SYMBOLIC,
    domain_model,
    encode_symbolic,
)
from rcplan.moves import ActionSet

COLOUR_COUNT = len(geometry.COLOURS)
COLOUR_INDEX = {name: i for i, name in enumerate(COLOUR_OBJECTS)}
ARITIES = tuple(len(faces) for faces in PREDICATE_FACES)
OFFSETS = tuple(
    sum(COLOUR_COUNT**arity for arity in ARITIES[:i]) for i in range(len(ARITIES))
)
ATOM_COUNT = sum(COLOUR_COUNT**arity for arity in ARITIES)
NO_EFFECT = -1


def atom_index(predicate: str, colours) -> int:
    """
    Number an atom.

    >>> atom_index("cube1", ("white", "white", "white"))
    0
    >>> atom_index("edge12", ("white", "red"))
    1729
    """
    p = PREDICATE_INDEX[predicate]
    value = 0
    for colour in colours:
        value = value * COLOUR_COUNT + COLOUR_INDEX[colour]
    return OFFSETS[p] + value


ATOMS = tuple(
    (predicate, tuple(COLOUR_OBJECTS[c] for c in colours))
    for predicate, arity in zip(PREDICATES, ARITIES)
    for colours in product(range(COLOUR_COUNT), repeat=arity)
)


def encode_atoms(state: CubeState) -> frozenset:
    """Get the 20 atoms true in a state."""
    return frozenset(
        atom_index(predicate, colours)
        for predicate, colours in encode_symbolic(state).atoms()
    )


@dataclass(frozen=True)
class GroundedTask:
    """
    The ground task for one action set.

    effects[a, c] is the atom that action a adds when atom c holds, or
    NO_EFFECT. Every ground conditional effect has one condition atom
    and one add atom, and deletes its condition.
    """

    action_set: ActionSet
    action_names: tuple
    effects: np.ndarray
    goal_atoms: frozenset

    @property
    def atoms(self) -> tuple:
        return ATOMS

    @property
    def goal_array(self) -> np.ndarray:
        return np.fromiter(sorted(self.goal_atoms), dtype=np.int64)

    def ground_effects(self, action: int) -> list:
        """List an action's (condition, add) pairs."""
        conditions = np.flatnonzero(self.effects[action] != NO_EFFECT)
        return [(int(c), int(self.effects[action, c])) for c in conditions]

    def apply(self, atoms: frozenset, action: int) -> frozenset:
        """Apply an action with its deletes, all effects at once."""
        fired = {c: int(self.effects[action, c]) for c in atoms}
        fired = {c: add for c, add in fired.items() if add != NO_EFFECT}
        return frozenset((set(atoms) - set(fired)) | set(fired.values()))


@lru_cache(maxsize=None)
def ground(action_set: ActionSet) -> GroundedTask:
    """Instantiate each action's effects for every tuple of colours."""
    model = domain_model(action_set)
    effects = np.full((len(model.actions), ATOM_COUNT), NO_EFFECT, dtype=np.int32)
    for a, action in enumerate(model.actions):
        for effect in action.effects:
            arity = ARITIES[PREDICATE_INDEX[effect.source]]
            for colours in product(COLOUR_OBJECTS, repeat=arity):
                moved = tuple(colours[i] for i in effect.permutation)
                effects[a, atom_index(effect.source, colours)] = atom_index(
                    effect.target, moved
                )
    effects.setflags(write=False)
    return GroundedTask(
        action_set=action_set,
        action_names=tuple(action.name for action in model.actions),
        effects=effects,
        goal_atoms=frozenset(
            atom_index(predicate, colours)
            for predicate, colours in SOLVED_SYMBOLIC.atoms()
        ),
    )


@dataclass
class RelaxedPlanningGraph:
    """
    The layers of atoms reachable when deletes are ignored.

    first_layer[atom] is the first layer holding the atom, or -1. An
    atom first reached at layer i > 0 was added by
    supporter_action[atom] from supporter_condition[atom] in layer i-1.
    """

    first_layer: np.ndarray
    supporter_action: np.ndarray
    supporter_condition: np.ndarray
    layer_count: int
    goal_reached: bool

    def fact_layer(self, i: int) -> np.ndarray:
        """Get the atoms in layer i."""
        return np.flatnonzero((self.first_layer >= 0) & (self.first_layer <= i))


def build_rpg(task: GroundedTask, start_atoms) -> RelaxedPlanningGraph:
    """
    Grow layers until every goal atom is in one or nothing new appears.

    Actions have no preconditions, so all of them apply at every
    layer. An atom's supporter is the lowest action, then the lowest
    condition atom, that adds it.
    """
    first_layer = np.full(ATOM_COUNT, -1, dtype=np.int32)
    supporter_action = np.full(ATOM_COUNT, -1, dtype=np.int32)
    supporter_condition = np.full(ATOM_COUNT, -1, dtype=np.int32)
    first_layer[np.fromiter(start_atoms, dtype=np.int64)] = 0
    goals = task.goal_array
    layer = 0
    while True:
        if np.all(first_layer[goals] >= 0):
            return RelaxedPlanningGraph(
                first_layer, supporter_action, supporter_condition, layer + 1, True
            )
        reached = first_layer >= 0
        added_any = False
        for action, row in enumerate(task.effects):
            conditions = np.flatnonzero(reached & (row != NO_EFFECT))
            adds, first = np.unique(row[conditions], return_index=True)
            new = first_layer[adds] < 0
            if not new.any():
                continue
            added_any = True
            adds = adds[new]
            first_layer[adds] = layer + 1
            supporter_action[adds] = action
            supporter_condition[adds] = conditions[first[new]]
        if not added_any:
            return RelaxedPlanningGraph(
                first_layer, supporter_action, supporter_condition, layer + 1, False
            )
        layer += 1


def relaxed_plan(task: GroundedTask, rpg: RelaxedPlanningGraph) -> set:
    """
    Extract a relaxed plan as a set of (action, layer) pairs.

    Each goal atom is chained back through its supporter to the
    supporter's condition until atoms of the first layer are reached.
    """
    steps = set()
    done = set()
    agenda = [int(goal) for goal in task.goal_array if rpg.first_layer[goal] > 0]
    while agenda:
        atom = agenda.pop()
        if atom in done:
            continue
        done.add(atom)
        layer = int(rpg.first_layer[atom])
        steps.add((int(rpg.supporter_action[atom]), layer - 1))
        condition = int(rpg.supporter_condition[atom])
        if rpg.first_layer[condition] > 0:
            agenda.append(condition)
    return steps


def h_ff(task: GroundedTask, state: CubeState):
    """
    Count the steps of a relaxed plan.

    Gives infinity if the goal is relaxed-unreachable, which no real
    cube state is.
    """
    rpg = build_rpg(task, encode_atoms(state))
    if not rpg.goal_reached:
        return math.inf
    return len(relaxed_plan(task, rpg))
