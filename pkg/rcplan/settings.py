"""Contains a class holding current user settings."""
import dataclasses
from contextlib import suppress
from functools import lru_cache
from pathlib import Path

from rcplan import paths, serialise

DEFAULTS = {
    # Desk-scale search limits
    "time_limit": 60.0,
    "max_stored_nodes": 10_000_000,
    # Limits matching a 30 minute budget
    "long_time_limit": 1800.0,
    "long_max_stored_nodes": 10_000_000,
    "pdb_memory_cap": 200_000_000,
    "bfs_depth_caps": {"QUARTER_12": 7, "FULL_18": 6},
    # Cubie ids (0-based) tracked by each manual pattern
    "manual_corner_patterns": [[0, 1, 2, 3], [4, 5, 6, 7]],
    "manual_edge_patterns": [[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]],
    "workers": 1,
}


def load_settings(filename: Path = None):
    """Load settings from a configuration file."""
    settings_data = DEFAULTS.copy()
    with suppress(FileNotFoundError):
        settings_data.update(
            serialise.load(paths.SETTINGS if filename is None else filename)
        )
    unknown = set(settings_data) - set(DEFAULTS)
    if unknown:
        raise ValueError(f"Unknown settings: {', '.join(sorted(unknown))}")
    return Settings(**settings_data)


@dataclasses.dataclass
class Settings:
    """A settings configuration."""

    time_limit: float
    max_stored_nodes: int
    long_time_limit: float
    long_max_stored_nodes: int
    pdb_memory_cap: int
    bfs_depth_caps: dict
    manual_corner_patterns: list
    manual_edge_patterns: list
    workers: int

    def save(self, filename: Path = None):
        """Save settings to a configuration file."""
        serialise.dump(
            dataclasses.asdict(self),
            paths.SETTINGS if filename is None else filename,
            readable=True,
        )

    def bfs_depth_cap(self, action_set) -> int:
        return self.bfs_depth_caps[action_set.name]


@lru_cache(maxsize=None)
def current() -> Settings:
    """Get the settings in effect, loading them the first time."""
    return load_settings()
