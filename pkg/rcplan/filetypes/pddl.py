"""
Write and read the PDDL encoding of the cube.

Every cubelet slot is a predicate: cube1..cube8 for the corners with
parameters (?x ?y ?z), and edgePQ for the edges with the two parameters
of the axes they lie on. A parameter holds the colour the cubelet shows
on that axis, where x is the Front/Back axis, y is Up/Down and z is
Left/Right. Actions have no preconditions; each one moves colours from
slot to slot with conditional effects quantified over the colours.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from rcplan import RcPlanError, geometry
from rcplan.cube import MOVE_STATES, CubeState, check_solvability
from rcplan.filetypes import sexp
from rcplan.moves import BY_LOWER_NAME, BY_NAME, ActionSet, ParseError
from rcplan.stickers import (
    CENTRES,
    FACELET_COUNT,
    InvalidArray,
    StickerArray,
    from_stickers,
    to_stickers,
)

log = logging.getLogger(__name__)

DOMAIN_NAME = "rubiks-cube"
REQUIREMENTS = ":adl"

CORNER_PREDICATES = geometry.CORNER_NAMES
EDGE_PREDICATES = geometry.EDGE_NAMES
PREDICATES = CORNER_PREDICATES + EDGE_PREDICATES
PREDICATE_INDEX = {name: i for i, name in enumerate(PREDICATES)}
# The faces each predicate's parameters refer to, in parameter order
PREDICATE_FACES = tuple(
    geometry.axis_faces(slot) for slot in geometry.CORNER_SLOTS + geometry.EDGE_SLOTS
)
PREDICATE_POSITIONS = geometry.CORNER_POSITIONS + geometry.EDGE_POSITIONS

COLOUR_OBJECTS = tuple(geometry.COLOUR_NAMES[code] for code in geometry.COLOURS)
COLOUR_CODES = {name: code for code, name in geometry.COLOUR_NAMES.items()}


class UnsolvableState(RcPlanError):
    pass


class InconsistentInit(RcPlanError):
    pass


class UnsupportedGoal(RcPlanError):
    pass


def variables(predicate: str) -> tuple:
    """
    Get a predicate's parameter names.

    >>> variables("edge13")
    ('?x', '?z')
    """
    faces = PREDICATE_FACES[PREDICATE_INDEX[predicate]]
    return tuple("?" + geometry.FACE_AXIS[face] for face in faces)


@dataclass(frozen=True)
class Effect:
    """
    Colours of source move to target.

    The target's ith parameter takes the source's permutation[i]th.
    """

    source: str
    target: str
    permutation: tuple

    def add_clause(self) -> str:
        names = variables(self.source)
        moved = " ".join(names[i] for i in self.permutation)
        return (
            f"(forall ({' '.join(names)}) (when ({self.source} {' '.join(names)})\n"
            f"  (and ({self.target} {moved}))))"
        )

    def delete_clause(self) -> str:
        names = " ".join(variables(self.source))
        return (
            f"(forall ({names}) (when ({self.source} {names})"
            f" (not ({self.source} {names}))))"
        )


@dataclass(frozen=True)
class PddlAction:
    name: str
    corner_effects: tuple
    edge_effects: tuple

    @property
    def effects(self) -> tuple:
        return self.corner_effects + self.edge_effects

    @property
    def move(self):
        return BY_NAME[self.name]


@dataclass(frozen=True)
class PddlDomainModel:
    action_set: ActionSet
    actions: tuple

    @property
    def predicates(self) -> tuple:
        return PREDICATES

    def action(self, name: str) -> PddlAction:
        return next(action for action in self.actions if action.name == name)


def _touches(edge: int, corner: int) -> bool:
    return set(geometry.EDGE_SLOTS[edge]) <= set(geometry.CORNER_SLOTS[corner])


def _cycle_order(perm, first=None) -> list:
    """
    Order the moved slots of a permutation for writing out.

    Each cycle is walked from a source to the slot feeding it, so the
    target of each effect is the source of the one before. Cycles
    start from first if given, otherwise from their lowest slot.
    """
    moved = [slot for slot, source in enumerate(perm) if source != slot]
    order = []
    start = first if first is not None else (moved[0] if moved else None)
    while start is not None:
        slot = start
        while slot not in order:
            order.append(slot)
            slot = perm[slot]
        start = next((slot for slot in moved if slot not in order), None)
    return order


def _effect(move, source, target, slot_names, slots) -> Effect:
    """Work out where each of the source's colours lands on the target."""
    source_faces = geometry.axis_faces(slots[source])
    permutation = []
    for face in geometry.axis_faces(slots[target]):
        normal = geometry.NORMALS[face]
        permutation.append(
            next(
                i
                for i, from_face in enumerate(source_faces)
                if geometry.turn(
                    geometry.NORMALS[from_face], move.face, move.turn.quarters
                )
                == normal
            )
        )
    return Effect(slot_names[source], slot_names[target], tuple(permutation))


def build_action(move) -> PddlAction:
    """Derive an action's conditional effects from the move tables."""
    state = MOVE_STATES[move.index]
    corner_targets = {source: target for target, source in enumerate(state.corner_perm)}
    edge_targets = {source: target for target, source in enumerate(state.edge_perm)}
    corner_order = _cycle_order(state.corner_perm)
    first_corner = corner_order[0]
    first_edge = next(
        (
            source
            for source, target in edge_targets.items()
            if source != target
            and _touches(source, first_corner)
            and _touches(target, first_corner)
        ),
        None,
    )
    edge_order = _cycle_order(state.edge_perm, first_edge)
    return PddlAction(
        name=move.name,
        corner_effects=tuple(
            _effect(
                move,
                source,
                corner_targets[source],
                CORNER_PREDICATES,
                geometry.CORNER_SLOTS,
            )
            for source in corner_order
        ),
        edge_effects=tuple(
            _effect(
                move, source, edge_targets[source], EDGE_PREDICATES, geometry.EDGE_SLOTS
            )
            for source in edge_order
        ),
    )


@lru_cache(maxsize=None)
def domain_model(action_set: ActionSet) -> PddlDomainModel:
    return PddlDomainModel(
        action_set, tuple(build_action(move) for move in action_set.moves)
    )


def _indent(text: str, spaces: int) -> str:
    return "\n".join(" " * spaces + line for line in text.splitlines())


def format_action(action: PddlAction) -> str:
    lines = [f"(:action {action.name}", "  :parameters ()", "  :effect (and"]
    lines.append("    ;for corner cubelets")
    lines.extend(_indent(e.add_clause(), 4) for e in action.corner_effects)
    lines.append("    ;for edge cubelets")
    lines.extend(_indent(e.add_clause(), 4) for e in action.edge_effects)
    lines.append("    ;clear the colours that moved away")
    lines.extend(_indent(e.delete_clause(), 4) for e in action.effects)
    lines[-1] += "))"
    return "\n".join(lines)


def format_domain(model: PddlDomainModel) -> str:
    predicates = "\n".join(
        f"    ({name} {' '.join(variables(name))})" for name in PREDICATES
    )
    actions = "\n\n".join(_indent(format_action(a), 2) for a in model.actions)
    return (
        f"; {model.action_set.model}: {len(model.actions)} face turn actions\n"
        f"(define (domain {DOMAIN_NAME})\n"
        f"  (:requirements {REQUIREMENTS})\n"
        f"  (:predicates\n{predicates})\n\n"
        f"{actions})\n"
    )


def emit_domain(action_set: ActionSet) -> str:
    """
    Write the domain with 12 (m1) or 18 (m2) actions.

    >>> emit_domain(ActionSet.QUARTER_12).count("(:action ")
    12
    """
    return format_domain(domain_model(action_set))


@dataclass(frozen=True)
class SymbolicState:
    """The colour tuple of each of the 20 predicates, in PREDICATES order."""

    colours: tuple

    def __getitem__(self, predicate: str) -> tuple:
        return self.colours[PREDICATE_INDEX[predicate]]

    def atoms(self):
        return zip(PREDICATES, self.colours)


def encode_symbolic(state: CubeState) -> SymbolicState:
    """Get the ground atoms describing a state."""
    facelets = to_stickers(state).facelets
    return SymbolicState(
        tuple(
            tuple(
                geometry.COLOUR_NAMES[facelets[geometry.facelet_index(where, face)]]
                for face in faces
            )
            for where, faces in zip(PREDICATE_POSITIONS, PREDICATE_FACES)
        )
    )


def decode_symbolic(symbolic: SymbolicState) -> CubeState:
    """Rebuild the state shown by a set of atoms, checking it is a real cube."""
    facelets = [None] * FACELET_COUNT
    for index, colour in CENTRES.items():
        facelets[index] = colour
    for where, faces, colours in zip(
        PREDICATE_POSITIONS, PREDICATE_FACES, symbolic.colours
    ):
        for face, colour in zip(faces, colours):
            facelets[geometry.facelet_index(where, face)] = COLOUR_CODES[colour]
    try:
        return from_stickers(StickerArray(tuple(facelets)))
    except InvalidArray as e:
        raise InconsistentInit(f"atoms do not describe a real cube: {e}") from e


def symbolic_apply(action: PddlAction, symbolic: SymbolicState) -> SymbolicState:
    """Apply every conditional effect at once, reading before writing."""
    colours = list(symbolic.colours)
    for effect in action.effects:
        source = symbolic[effect.source]
        colours[PREDICATE_INDEX[effect.target]] = tuple(
            source[i] for i in effect.permutation
        )
    return SymbolicState(tuple(colours))


SOLVED_SYMBOLIC = SymbolicState(
    tuple(
        tuple(geometry.COLOUR_NAMES[geometry.FACE_COLOURS[face]] for face in faces)
        for faces in PREDICATE_FACES
    )
)


def _atom_lines(symbolic: SymbolicState) -> str:
    return "\n".join(
        f"    ({predicate} {' '.join(colours)})"
        for predicate, colours in symbolic.atoms()
    )


def emit_problem(state: CubeState, name: str) -> str:
    """Write a problem whose goal is the solved cube."""
    if not check_solvability(state):
        raise UnsolvableState(f"{name} cannot be reached from the solved cube")
    return (
        f"(define (problem {name})\n"
        f"  (:domain {DOMAIN_NAME})\n"
        f"  (:objects {' '.join(COLOUR_OBJECTS)})\n"
        f"  (:init\n{_atom_lines(encode_symbolic(state))})\n"
        f"  (:goal (and\n{_atom_lines(SOLVED_SYMBOLIC)})))\n"
    )


def _read_atom(atom) -> tuple:
    if not isinstance(atom, list) or not atom or isinstance(atom[0], list):
        raise ParseError(f"expected an atom, found {sexp.to_string(atom)}")
    predicate, *colours = (part.casefold() for part in atom)
    if predicate not in PREDICATE_INDEX:
        raise InconsistentInit(f"unknown predicate {predicate}")
    if len(colours) != len(PREDICATE_FACES[PREDICATE_INDEX[predicate]]):
        raise InconsistentInit(f"{predicate} has {len(colours)} parameters")
    unknown = [colour for colour in colours if colour not in COLOUR_CODES]
    if unknown:
        raise InconsistentInit(f"unknown colours {unknown} in {predicate}")
    return predicate, tuple(colours)


def _sections(expression, kind) -> tuple:
    """Check a (define (kind name) ...) form, returning name and sections."""
    if (
        len(expression) < 2
        or str(expression[0]).casefold() != "define"
        or not isinstance(expression[1], list)
        or len(expression[1]) != 2
        or str(expression[1][0]).casefold() != kind
    ):
        raise ParseError(f"expected (define ({kind} <name>) ...)")
    sections = {}
    for section in expression[2:]:
        if not isinstance(section, list) or not section or isinstance(section[0], list):
            raise ParseError(f"unexpected {sexp.to_string(section)}")
        sections[section[0].casefold()] = section[1:]
    return expression[1][1], sections


def read_problem(text: str) -> tuple:
    """Read a problem file, giving its name and initial state."""
    name, sections = _sections(sexp.parse_one(text), "problem")
    for required in (":domain", ":init", ":goal"):
        if required not in sections:
            raise ParseError(f"problem has no {required} section")
    if [d.casefold() for d in sections[":domain"]] != [DOMAIN_NAME]:
        raise ParseError(f"problem is not for the {DOMAIN_NAME} domain")
    unknown = {o.casefold() for o in sections.get(":objects", [])} - set(COLOUR_CODES)
    if unknown:
        raise ParseError(f"unknown objects {sorted(unknown)}")

    init = {}
    for atom in sections[":init"]:
        predicate, colours = _read_atom(atom)
        if predicate in init:
            raise InconsistentInit(f"{predicate} appears more than once")
        init[predicate] = colours
    missing = [predicate for predicate in PREDICATES if predicate not in init]
    if missing:
        raise InconsistentInit(f"no colours given for {', '.join(missing)}")
    symbolic = SymbolicState(tuple(init[predicate] for predicate in PREDICATES))

    goal = sections[":goal"]
    if len(goal) != 1:
        raise ParseError("expected one goal expression")
    goal = goal[0]
    atoms = goal[1:] if goal and str(goal[0]).casefold() == "and" else [goal]
    try:
        goal_atoms = {_read_atom(atom) for atom in atoms}
    except InconsistentInit as e:
        raise UnsupportedGoal(str(e)) from e
    if goal_atoms != set(SOLVED_SYMBOLIC.atoms()) or len(atoms) != len(PREDICATES):
        raise UnsupportedGoal("only the solved cube is supported as a goal")
    return name, decode_symbolic(symbolic)


def parse_problem(text: str) -> CubeState:
    return read_problem(text)[1]


def _read_effect(clause) -> tuple:
    """
    Read one quantified clause.

    Returns ("add", Effect) or ("delete", predicate name).
    """
    bad = ParseError(f"unexpected clause {sexp.to_string(clause)}")
    try:
        forall, names, (when, condition, result) = clause
        source, *source_names = condition
        head = result[0]
    except (ValueError, TypeError) as e:
        raise bad from e
    words = (forall, when, source, head)
    if not all(isinstance(word, str) for word in words):
        raise bad
    source = source.casefold()
    if (
        forall.casefold() != "forall"
        or when.casefold() != "when"
        or source not in PREDICATE_INDEX
        or source_names != names
        or len(names) != len(variables(source))
    ):
        raise bad
    if head.casefold() == "not":
        if result[1:] != [condition]:
            raise bad
        return "delete", source
    if head.casefold() != "and" or len(result) != 2 or not result[1]:
        raise bad
    target, *target_names = result[1]
    if (
        not isinstance(target, str)
        or target.casefold() not in PREDICATE_INDEX
        or sorted(target_names) != sorted(names)
    ):
        raise bad
    permutation = tuple(names.index(name) for name in target_names)
    return "add", Effect(source, target.casefold(), permutation)


def read_action(expression) -> PddlAction:
    name = expression[1]
    try:
        move = BY_LOWER_NAME[name.casefold()]
    except KeyError as e:
        raise ParseError(f"unknown action {name}", token=name) from e
    keys = [part.casefold() if isinstance(part, str) else part for part in expression]
    effect = expression[keys.index(":effect") + 1]
    if str(effect[0]).casefold() != "and":
        raise ParseError(f"{name}: expected (and ...) effect")
    adds = []
    deletes = []
    for clause in effect[1:]:
        kind, value = _read_effect(clause)
        (adds if kind == "add" else deletes).append(value)
    if sorted(deletes) != sorted(e.source for e in adds):
        raise ParseError(f"{name}: deleted atoms do not match the moved ones")
    return PddlAction(
        name=move.name,
        corner_effects=tuple(e for e in adds if e.source in CORNER_PREDICATES),
        edge_effects=tuple(e for e in adds if e.source in EDGE_PREDICATES),
    )


def _is_action(part) -> bool:
    return (
        isinstance(part, list) and bool(part) and str(part[0]).casefold() == ":action"
    )


def read_domain(text: str) -> PddlDomainModel:
    """Read a domain file written by emit_domain."""
    expression = sexp.parse_one(text)
    name, _ = _sections([p for p in expression if not _is_action(p)], "domain")
    if name.casefold() != DOMAIN_NAME:
        raise ParseError(f"domain {name} is not {DOMAIN_NAME}")
    actions = tuple(read_action(p) for p in expression if _is_action(p))
    try:
        action_set = ActionSet.from_name(len(actions))
    except ValueError as e:
        raise ParseError(f"a domain has 12 or 18 actions, not {len(actions)}") from e
    if {a.move for a in actions} != set(action_set.moves):
        raise ParseError(f"the actions are not the {action_set.name} moves")
    return PddlDomainModel(action_set, actions)


def export_dataset(dataset, directory: Path, action_set: ActionSet) -> list:
    """Write a domain file and one problem file per instance."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = [directory / f"domain-{action_set.model}.pddl"]
    written[0].write_text(emit_domain(action_set), encoding="utf-8")
    for instance in dataset:
        path = directory / f"{instance.id}.pddl"
        path.write_text(emit_problem(instance.state, instance.id), encoding="utf-8")
        written.append(path)
    log.info("wrote %d problems to %s", len(written) - 1, directory)
    return written
