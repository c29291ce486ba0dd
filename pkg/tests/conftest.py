import json
import pathlib

import pytest

from prior_forge.jsonio import parse_structure

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str):
    with open(FIXTURES / f"{name}.json", "r", encoding="utf-8") as fh:
        return parse_structure(json.load(fh))


@pytest.fixture(scope="session")
def fixture_path():
    return lambda name: FIXTURES / f"{name}.json"


@pytest.fixture(scope="session")
def intro():
    return load_fixture("intro")


@pytest.fixture(scope="session")
def pl():
    return load_fixture("pl")


@pytest.fixture(scope="session")
def ex_pl1():
    return load_fixture("ex_pl1")


@pytest.fixture(scope="session")
def ex_pl2():
    return load_fixture("ex_pl2")


@pytest.fixture(scope="session")
def pl4():
    return load_fixture("pl4")


@pytest.fixture(scope="session")
def ex_plbet4():
    return load_fixture("ex_plbet4")
