"""
Pattern databases: exact distances in projections of the cube.

A pattern tracks some of the cubies and forgets the rest. A tracked
corner's location is slot * 3 + twist and an edge's is slot * 2 + flip.
An abstract state is numbered by ranking the tracked cubies' slots as
an arrangement (mixed radix, falling base) followed by their
orientations as base 3 or 2 digits; corners come before edges.
Tables hold one byte per abstract state.
"""
import json
import logging
import math
import os
import struct
import time
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from rcplan import RcPlanError, paths, settings
from rcplan.cube import CORNER_COUNT, EDGE_COUNT, MOVE_STATES, SOLVED, cubie_locations
from rcplan.moves import ActionSet

log = logging.getLogger(__name__)

# Changes whenever slot numbering or the index layout changes
NUMBERING_VERSION = 1
FILE_MAGIC = b"RCPDB"
FILE_VERSION = 1
UNSET = 255
CUBELET_COUNT = CORNER_COUNT + EDGE_COUNT


class MemoryCapExceeded(RcPlanError):
    """A table would be larger than allowed."""

    def __init__(self, size, cap):
        super().__init__(f"table of {size} entries exceeds the cap of {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class Pattern:
    """The ids of the tracked corner and edge cubies."""

    corner_ids: tuple = ()
    edge_ids: tuple = ()

    def __post_init__(self):
        if not self.corner_ids and not self.edge_ids:
            raise ValueError("a pattern must track at least one cubie")
        if len(set(self.corner_ids)) != len(self.corner_ids) or not set(
            self.corner_ids
        ) <= set(range(CORNER_COUNT)):
            raise ValueError(f"bad corner ids {self.corner_ids}")
        if len(set(self.edge_ids)) != len(self.edge_ids) or not set(
            self.edge_ids
        ) <= set(range(EDGE_COUNT)):
            raise ValueError(f"bad edge ids {self.edge_ids}")

    @property
    def size(self) -> int:
        """
        The number of abstract states.

        >>> Pattern(corner_ids=(0, 1, 2, 3)).size
        136080
        >>> Pattern(edge_ids=(0, 1, 2, 3)).size
        190080
        """
        return part_size(CORNER_COUNT, len(self.corner_ids), 3) * part_size(
            EDGE_COUNT, len(self.edge_ids), 2
        )

    def issubset(self, other) -> bool:
        return set(self.corner_ids) <= set(other.corner_ids) and set(
            self.edge_ids
        ) <= set(other.edge_ids)

    @property
    def key(self) -> str:
        """
        A name usable in file names.

        >>> Pattern((0, 1), (10,)).key
        'c0.1-e10'
        """
        return "c{}-e{}".format(
            ".".join(map(str, self.corner_ids)), ".".join(map(str, self.edge_ids))
        )

    @property
    def save_data(self):
        return {"corner_ids": list(self.corner_ids), "edge_ids": list(self.edge_ids)}

    @classmethod
    def from_data(cls, data):
        return cls(tuple(data["corner_ids"]), tuple(data["edge_ids"]))


def part_size(slots: int, tracked: int, modulus: int) -> int:
    return math.perm(slots, tracked) * modulus**tracked


def encode_part(locations, slots: int, modulus: int):
    """
    Number the locations of some tracked cubies.

    Works on plain integers or on numpy arrays of them.

    >>> encode_part([0, 3], 8, 3)
    0
    >>> encode_part([3, 0], 8, 3)
    63
    """
    index = 0
    seen = []
    for i, location in enumerate(locations):
        slot = location // modulus
        smaller = sum(earlier < slot for earlier in seen)
        index = index * (slots - i) + (slot - smaller)
        seen.append(slot)
    for location in locations:
        index = index * modulus + location % modulus
    return index


def decode_part(index: np.ndarray, tracked: int, slots: int, modulus: int) -> list:
    """Undo encode_part for an array of indices, giving location columns."""
    index = np.asarray(index, dtype=np.int64)
    oris = []
    for _ in range(tracked):
        oris.append(index % modulus)
        index = index // modulus
    oris.reverse()
    ranks = []
    for i in reversed(range(tracked)):
        ranks.append(index % (slots - i))
        index = index // (slots - i)
    ranks.reverse()
    used = np.zeros((len(index), slots), dtype=bool)
    rows = np.arange(len(index))
    locations = []
    for rank, ori in zip(ranks, oris):
        # The slot is the (rank + 1)th one not used yet
        free = np.cumsum(~used, axis=1)
        slot = np.argmax(free == (rank + 1)[:, None], axis=1)
        used[rows, slot] = True
        locations.append(slot * modulus + ori)
    return locations


def _location_moves(perm, ori, modulus) -> np.ndarray:
    """Map each cubie location to where a move sends it."""
    table = np.zeros(len(perm) * modulus, dtype=np.int64)
    for target, source in enumerate(perm):
        for o in range(modulus):
            table[source * modulus + o] = target * modulus + (o + ori[target]) % modulus
    return table


CORNER_LOCATION_MOVES = tuple(
    _location_moves(state.corner_perm, state.corner_ori, 3) for state in MOVE_STATES
)
EDGE_LOCATION_MOVES = tuple(
    _location_moves(state.edge_perm, state.edge_ori, 2) for state in MOVE_STATES
)


@dataclass(frozen=True)
class PatternDB:
    pattern: Pattern
    action_set: ActionSet
    table: np.ndarray

    def index(self, corners, edges) -> int:
        return pattern_index(self.pattern, corners, edges)

    def lookup(self, state) -> int:
        return int(self.table[self.index(*cubie_locations(state))])

    def histogram(self) -> dict:
        values, counts = np.unique(self.table, return_counts=True)
        return {int(v): int(n) for v, n in zip(values, counts)}


def pattern_index(pattern: Pattern, corners, edges) -> int:
    """Number the abstract state of some cubie locations."""
    corner_index = encode_part(
        [corners[c] for c in pattern.corner_ids], CORNER_COUNT, 3
    )
    edge_index = encode_part([edges[e] for e in pattern.edge_ids], EDGE_COUNT, 2)
    return corner_index * part_size(EDGE_COUNT, len(pattern.edge_ids), 2) + edge_index


def build_pdb(pattern: Pattern, action_set: ActionSet, memory_cap=None) -> PatternDB:
    """
    Fill a table by breadth-first search from the abstract goal.

    The move set is closed under inverses, so distances from the goal
    equal distances to it.
    """
    if memory_cap is None:
        memory_cap = settings.current().pdb_memory_cap
    size = pattern.size
    if size > memory_cap:
        raise MemoryCapExceeded(size, memory_cap)
    started = time.perf_counter()
    kc, ke = len(pattern.corner_ids), len(pattern.edge_ids)
    edge_size = part_size(EDGE_COUNT, ke, 2)
    table = np.full(size, UNSET, dtype=np.uint8)
    goal = pattern_index(pattern, *cubie_locations(SOLVED))
    frontier = np.array([goal], dtype=np.int64)
    table[frontier] = 0
    depth = 0
    moves = [move.index for move in action_set.moves]
    while len(frontier):
        corners = decode_part(frontier // edge_size, kc, CORNER_COUNT, 3)
        edges = decode_part(frontier % edge_size, ke, EDGE_COUNT, 2)
        found = []
        for m in moves:
            successors = encode_part(
                [CORNER_LOCATION_MOVES[m][c] for c in corners], CORNER_COUNT, 3
            ) * edge_size + encode_part(
                [EDGE_LOCATION_MOVES[m][e] for e in edges], EDGE_COUNT, 2
            )
            successors = successors[table[successors] == UNSET]
            table[successors] = depth + 1
            found.append(successors)
        frontier = np.unique(np.concatenate(found))
        depth += 1
    table.setflags(write=False)
    pdb = PatternDB(pattern, action_set, table)
    log.log(
        logging.INFO if size >= 100_000 else logging.DEBUG,
        "built %s PDB %s: %d entries in %.2fs, depths %s",
        action_set.name,
        pattern.key,
        size,
        time.perf_counter() - started,
        pdb.histogram(),
    )
    return pdb


def cache_path(pattern: Pattern, action_set: ActionSet, directory=None) -> Path:
    directory = paths.pdb_cache() if directory is None else Path(directory)
    return (
        directory / f"v{NUMBERING_VERSION}-{action_set.value}-{pattern.key}.pdb"
    )


def save_pdb(pdb: PatternDB, filename: Path):
    """Write the versioned binary file: magic, version, JSON header, table."""
    header = json.dumps(
        {
            "pattern": pdb.pattern.save_data,
            "action_set": pdb.action_set.name,
            "entries": len(pdb.table),
            "numbering": NUMBERING_VERSION,
        },
        sort_keys=True,
    ).encode("utf-8")
    filename = Path(filename)
    temporary = filename.with_name(f"{filename.name}.{os.getpid()}.tmp")
    with open(temporary, "wb") as f:
        f.write(FILE_MAGIC + struct.pack("<BI", FILE_VERSION, len(header)))
        f.write(header)
        f.write(pdb.table.tobytes())
    temporary.replace(filename)


def load_pdb(filename: Path) -> PatternDB:
    with open(filename, "rb") as f:
        magic = f.read(len(FILE_MAGIC))
        if magic != FILE_MAGIC:
            raise ValueError(f"{filename} is not a pattern database")
        version, header_length = struct.unpack("<BI", f.read(5))
        if version != FILE_VERSION:
            raise ValueError(f"{filename} has unsupported version {version}")
        header = json.loads(f.read(header_length))
        table = np.frombuffer(f.read(), dtype=np.uint8)
    pattern = Pattern.from_data(header["pattern"])
    if header["numbering"] != NUMBERING_VERSION or len(table) != pattern.size:
        raise ValueError(f"{filename} does not match the current numbering")
    return PatternDB(pattern, ActionSet[header["action_set"]], table)


def get_pdb(pattern: Pattern, action_set: ActionSet, directory=None, memory_cap=None):
    """Load a table from the cache, building and storing it if absent."""
    path = cache_path(pattern, action_set, directory)
    if path.is_file():
        try:
            pdb = load_pdb(path)
            log.debug("PDB cache hit %s", path.name)
            return pdb
        except (ValueError, KeyError, struct.error) as e:
            log.warning("ignoring damaged PDB cache file %s: %s", path, e)
    log.debug("PDB cache miss %s", path.name)
    pdb = build_pdb(pattern, action_set, memory_cap)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_pdb(pdb, path)
    return pdb


def manual_patterns(current=None) -> tuple:
    """
    Get the 2 corner and 3 edge patterns of 4 cubies each.

    >>> [p.key for p in manual_patterns()]
    ['c0.1.2.3-e', 'c4.5.6.7-e', 'c-e0.1.2.3', 'c-e4.5.6.7', 'c-e8.9.10.11']
    """
    current = settings.current() if current is None else current
    return tuple(
        Pattern(corner_ids=tuple(ids)) for ids in current.manual_corner_patterns
    ) + tuple(Pattern(edge_ids=tuple(ids)) for ids in current.manual_edge_patterns)


def systematic_patterns(max_size: int) -> tuple:
    """
    Get every set of at most max_size cubies, smallest sets first.

    Cubelets 0-7 are the corners and 8-19 the edges.

    >>> len(systematic_patterns(3))
    1350
    """
    if not 1 <= max_size <= 3:
        raise ValueError(f"max_size must be 1..3, not {max_size}")
    return tuple(
        Pattern(
            corner_ids=tuple(c for c in cubelets if c < CORNER_COUNT),
            edge_ids=tuple(c - CORNER_COUNT for c in cubelets if c >= CORNER_COUNT),
        )
        for size in range(1, max_size + 1)
        for cubelets in combinations(range(CUBELET_COUNT), size)
    )


def maximal_patterns(patterns) -> tuple:
    """
    Drop patterns contained in another one.

    The projection of a pattern is also a projection of any pattern
    containing it, so its distances are never larger and it adds
    nothing to a maximum.

    >>> len(maximal_patterns(systematic_patterns(3)))
    1140
    """
    patterns = tuple(dict.fromkeys(patterns))
    return tuple(
        p
        for p in patterns
        if not any(p != q and p.issubset(q) for q in patterns)
    )


class PdbCollection:
    """
    Several tables combined by taking the maximum.

    Tables tracking the same numbers of corners and edges are stacked
    so that one lookup covers all of them.
    """

    def __init__(self, pdbs):
        self.pdbs = tuple(pdbs)
        if not self.pdbs:
            raise ValueError("a collection needs at least one table")
        action_sets = {pdb.action_set for pdb in self.pdbs}
        if len(action_sets) != 1:
            raise ValueError("tables were built for different action sets")
        (self.action_set,) = action_sets
        groups = {}
        for pdb in self.pdbs:
            shape = (len(pdb.pattern.corner_ids), len(pdb.pattern.edge_ids))
            groups.setdefault(shape, []).append(pdb)
        self.groups = []
        for (kc, ke), members in sorted(groups.items()):
            size = members[0].table.size
            self.groups.append(
                (
                    np.array([m.pattern.corner_ids for m in members], dtype=np.int64)
                    .reshape(len(members), kc),
                    np.array([m.pattern.edge_ids for m in members], dtype=np.int64)
                    .reshape(len(members), ke),
                    part_size(EDGE_COUNT, ke, 2),
                    np.arange(len(members), dtype=np.int64) * size,
                    np.concatenate([m.table for m in members]),
                )
            )

    def __len__(self):
        return len(self.pdbs)

    def values(self, state) -> np.ndarray:
        """Look the state up in every table."""
        corners, edges = (np.array(part) for part in cubie_locations(state))
        found = []
        for corner_ids, edge_ids, edge_size, offsets, table in self.groups:
            corner_locations = corners[corner_ids]
            edge_locations = edges[edge_ids]
            index = encode_part(
                list(corner_locations.T), CORNER_COUNT, 3
            ) * edge_size + encode_part(list(edge_locations.T), EDGE_COUNT, 2)
            found.append(table[offsets + index])
        return np.concatenate(found)

    def __call__(self, state) -> int:
        return int(self.values(state).max())


def load_collection(patterns, action_set: ActionSet, directory=None, memory_cap=None):
    started = time.perf_counter()
    collection = PdbCollection(
        get_pdb(pattern, action_set, directory, memory_cap) for pattern in patterns
    )
    log.info(
        "%d %s pattern databases ready in %.2fs",
        len(collection),
        action_set.name,
        time.perf_counter() - started,
    )
    return collection
