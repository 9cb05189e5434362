import json
import logging
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def read_fixture(name: str) -> str:
    with open(FIXTURES / name, encoding="utf-8", newline="") as handle:
        return handle.read()


@pytest.fixture(autouse=True)
def restore_logging():
    """The CLI installs a stderr handler on the root logger; undo it after each test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def golden_shorthand() -> str:
    return read_fixture("golden.short")


@pytest.fixture
def legacy_shorthand() -> str:
    return read_fixture("legacy.short")


@pytest.fixture
def full_spec_text() -> str:
    return read_fixture("golden.json")


@pytest.fixture
def full_spec(full_spec_text) -> dict:
    return json.loads(full_spec_text)


@pytest.fixture
def fixture_path():
    def resolve(name: str) -> str:
        return str(FIXTURES / name)
    return resolve
