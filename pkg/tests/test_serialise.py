from pathlib import Path

import pytest

from rcplan import serialise, settings
from rcplan.cube import SOLVED, apply_plan
from rcplan.moves import ActionSet, parse_moves


def test_cube_objects():
    moves = parse_moves("R U2 Brev")
    data = {"state": apply_plan(SOLVED, moves), "plan": moves, "where": Path("x")}
    assert serialise.loads(serialise.dumps(data)) == data


def test_output_is_canonical():
    assert serialise.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


@pytest.mark.parametrize("name", ["data.json", "data.json.gz"])
def test_files(tmp_path, name):
    data = {"state": SOLVED, "n": 3}
    serialise.dump(data, tmp_path / name)
    assert serialise.load(tmp_path / name) == data


def test_gzip_is_reproducible():
    first = serialise.dump_bytes(SOLVED, gz=True)
    assert serialise.dump_bytes(SOLVED, gz=True) == first


def test_unserialisable():
    with pytest.raises(TypeError):
        serialise.dumps({1, 2})


def test_default_settings(tmp_path):
    current = settings.load_settings(tmp_path / "absent.json")
    assert current.time_limit == 60.0
    assert current.bfs_depth_cap(ActionSet.QUARTER_12) == 7
    assert current.bfs_depth_cap(ActionSet.FULL_18) == 6


def test_settings_file(tmp_path):
    path = tmp_path / "rcplan.json"
    current = settings.load_settings(path)
    current.workers = 4
    current.save(path)
    assert settings.load_settings(path).workers == 4


def test_unknown_settings(tmp_path):
    path = tmp_path / "rcplan.json"
    serialise.dump({"tim_limit": 5}, path)
    with pytest.raises(ValueError, match="tim_limit"):
        settings.load_settings(path)
