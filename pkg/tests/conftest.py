import hypothesis
import pytest
from hypothesis import strategies as st

from rcplan import paths
from rcplan.moves import MOVES, ActionSet

hypothesis.settings.register_profile("default", max_examples=50, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile("default")

move_sequences = st.lists(st.sampled_from(MOVES), max_size=20)
quarter_sequences = st.lists(
    st.sampled_from(ActionSet.QUARTER_12.moves), max_size=20
)


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session", autouse=True)
def pdb_cache_dir(tmp_path_factory):
    """Keep tables built by the tests out of the user's cache."""
    directory = tmp_path_factory.mktemp("cache")
    with pytest.MonkeyPatch.context() as mp:
        mp.setenv(paths.CACHE_ENVIRONMENT_VARIABLE, str(directory))
        yield directory


@pytest.fixture(scope="session")
def manual_pdbs(pdb_cache_dir):
    from rcplan.oracle import manual_collection

    return manual_collection(ActionSet.QUARTER_12)


@pytest.fixture(scope="session")
def manual_pdbs_full(pdb_cache_dir):
    from rcplan.oracle import manual_collection

    return manual_collection(ActionSet.FULL_18)
