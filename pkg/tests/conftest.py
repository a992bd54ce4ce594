import json
from pathlib import Path

import pytest

from treelogic import load_model, make_instance, prepare

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def load_example(name):
    model = load_model((DATA / f"example_{name}.json").read_text())
    values = json.loads((DATA / f"example_{name}_instance.json").read_text())
    return model, make_instance(values)


@pytest.fixture(scope="session")
def dt_query():
    return prepare(*load_example("dt"))


@pytest.fixture(scope="session")
def rf_query():
    return prepare(*load_example("rf"))


@pytest.fixture(scope="session")
def bt_query():
    return prepare(*load_example("bt"))
