"""Define some standard paths for storing data."""
import os
from pathlib import Path

CACHE_ENVIRONMENT_VARIABLE = "RCPLAN_CACHE_DIR"

HOME = Path.home()

# Location for configuration files
SETTINGS = HOME / ".config" / "rcplan.json"


def cache_dir() -> Path:
    """Get the cache directory, which the environment can override."""
    override = os.environ.get(CACHE_ENVIRONMENT_VARIABLE)
    if override:
        return Path(override)
    return HOME / ".cache" / "rcplan"


def pdb_cache() -> Path:
    return cache_dir() / "pdb"
