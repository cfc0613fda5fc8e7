import pytest

from dynabt.instances import bundled_wordlist, figure1_instance, figure1_walkthrough_preferences, xyz_unsat_instance
from dynabt.engines import Heuristics


@pytest.fixture
def figure1():
    return figure1_instance()


@pytest.fixture
def xyz():
    return xyz_unsat_instance()


@pytest.fixture
def walkthrough():
    """Heuristics replaying the five-country walkthrough"""
    return Heuristics.from_names(preferences=figure1_walkthrough_preferences())


@pytest.fixture(scope='session')
def words():
    return bundled_wordlist()
