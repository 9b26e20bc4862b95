import pathlib

import pytest

from puminer import PeriodConstraints, load_database

FIXTURE = pathlib.Path(__file__).parent / "data" / "running_example.txt"

# Item letters used throughout the running example.
LETTERS = {"a": 1, "b": 2, "c": 3, "d": 4, "e": 5, "f": 6, "g": 7}


def ids(*letters: str) -> tuple[int, ...]:
    """Map item letters to their fixture ids, preserving argument order."""
    return tuple(LETTERS[x] for x in letters)


@pytest.fixture(scope="session")
def running_db():
    return load_database(FIXTURE)


@pytest.fixture(scope="session")
def constraints():
    # minPer=1, maxPer=5, minAvg=1, maxAvg=5
    return PeriodConstraints(1, 5, 1, 5)
