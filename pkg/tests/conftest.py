from __future__ import annotations

import json
from pathlib import Path

import pytest

from rockreport.domain import Project, project_from_json
from rockreport.gateway import mock_gateway, reset_limiters

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
TEST_DATA = Path(__file__).resolve().parent / "data"


@pytest.fixture(autouse=True)
def _fresh_rate_limiters():
    reset_limiters()
    yield
    reset_limiters()


@pytest.fixture
def demo_project() -> Project:
    return project_from_json((FIXTURES / "project_demo.json").read_text(encoding="utf-8"))


@pytest.fixture
def gateway():
    return mock_gateway()


@pytest.fixture
def eval_pairs_path() -> Path:
    return FIXTURES / "eval_pairs_30.csv"


@pytest.fixture
def dataset_csv_path() -> Path:
    return FIXTURES / "dataset_demo.csv"


def load_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))
