from functools import lru_cache

import pytest

from pieces.board import BoardSpec, CountFormula, count_formula
from pieces.moveset import builtin


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@lru_cache(maxsize=None)
def formula_for(piece: str, rows: int, occupancy: tuple = None) -> CountFormula:
    """Count formulas shared by every test module of the session."""
    return count_formula(builtin(piece), BoardSpec.from_args(rows, occupancy))
