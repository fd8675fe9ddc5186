"""
Functions for serialising and deserialising objects to JSON.

The JSON can optionally be gzipped. Output is canonical (sorted keys,
fixed separators) so equal objects always give identical bytes.
"""
import gzip
import json
from pathlib import Path

from rcplan.cube import CubeState
from rcplan.moves import BY_NAME, Move


def default(obj):
    """
    Turn cube states, moves and paths into JSON.

    >>> default(BY_NAME["Urev"])
    {'__MOVE': 'Urev'}
    >>> default(Path("pdb"))
    {'__PATH': 'pdb'}
    """
    if isinstance(obj, CubeState):
        return {"__CUBE": obj.save_data}
    if isinstance(obj, Move):
        return {"__MOVE": obj.name}
    if isinstance(obj, Path):
        return {"__PATH": str(obj)}
    raise TypeError(f"Cannot serialise {obj.__class__.__qualname__}")


DECODE_KEYS = {
    "__CUBE": CubeState.from_data,
    "__MOVE": BY_NAME.__getitem__,
    "__PATH": Path,
}


def decode(obj):
    """Undo encoding done by default."""
    if len(obj) != 1:
        return obj
    key, value = next(iter(obj.items()))
    try:
        return DECODE_KEYS[key](value)
    except KeyError:
        return obj


def dumps(obj, readable=False):
    """Convert an object to a JSON string."""
    return json.dumps(
        obj,
        default=default,
        sort_keys=True,
        separators=(",", ": ") if readable else (",", ":"),
        indent="\t" if readable else None,
    )


def dump_bytes(obj, gz=False, readable=False):
    """Convert an object to data."""
    data = dumps(obj, readable=readable).encode("utf-8")
    # mtime=0 keeps gzipped output reproducible
    return gzip.compress(data, mtime=0) if gz else data


def loads(data, gz=False):
    """Load an object from a string or bytes."""
    data = gzip.decompress(data) if gz else data
    return json.loads(data, object_hook=decode)


def dump(obj, filename: Path, gz="auto", readable=False):
    """
    Save obj as a JSON file. Can store cube states and moves.

    Is gzipped if gz is True, or if gz is "auto" and the name ends .gz.
    """
    filename = Path(filename)
    if gz == "auto":
        gz = filename.suffix.casefold() == ".gz"
    with open(filename, "wb") as f:
        f.write(dump_bytes(obj, gz=gz, readable=readable))


def load(filename: Path, gz="auto"):
    """Load a JSON file. Can retrieve cube states and moves."""
    filename = Path(filename)
    if gz == "auto":
        gz = filename.suffix.casefold() == ".gz"
    with (gzip.open if gz else open)(filename, "rt", encoding="utf-8") as f:
        return json.load(f, object_hook=decode)
