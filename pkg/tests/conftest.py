import json
from pathlib import Path

import pytest
from hypothesis import settings

from elltrace.cli import parse_document

DATA = Path(__file__).parent / "data"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def load_problem(name):
    return parse_document((DATA / name).read_text())


def load_document(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture
def example1():
    return load_problem("example1.json")


@pytest.fixture
def example2():
    return load_problem("example2.json")


@pytest.fixture
def example3():
    return load_problem("example3.json")


@pytest.fixture
def example4():
    return load_problem("example4.json")
