"""Shared fixtures; puts src/ on the import path like main.py does."""

import sys
from pathlib import Path

import pytest

SRC_DIR = Path(__file__).parent.parent / "src"
DATA_DIR = Path(__file__).parent.parent / "data"

if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from core.generators import gen_tobacco  # noqa: E402
from models.game import MOGame, ObjectiveSpace  # noqa: E402
from models.outcome import OutcomeSet  # noqa: E402
from strategies import vec  # noqa: E402


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def tobacco1():
    return gen_tobacco(1)


@pytest.fixture(scope="session")
def tobacco2():
    return gen_tobacco(2)


@pytest.fixture
def coastal_worst():
    return OutcomeSet.from_vectors([(30, 53), (40, 38)])


@pytest.fixture
def coastal_frontier():
    return OutcomeSet.from_vectors([(46, 61), (69, 31)])


@pytest.fixture
def matching_pennies():
    """Two agents, one objective, no pure equilibrium."""
    payoffs = [{}, {}]
    for a in range(2):
        for b in range(2):
            match = int(a == b)
            payoffs[0][(a, b)] = vec(match)
            payoffs[1][(a, b)] = vec(1 - match)
    return MOGame(
        agents=["row", "column"],
        action_sets=[["heads", "tails"], ["heads", "tails"]],
        space=ObjectiveSpace(names=("score",)),
        payoffs=payoffs,
        name="matching-pennies",
    )


@pytest.fixture
def tmp_config(tmp_path):
    from utils.config import Config
    return Config(tmp_path / "config.json")
