import os
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"
sys.path.insert(0, str(SCRIPTS))

from causal_multiteams.core.laws import FunctionComponent, make_law  # noqa: E402
from causal_multiteams.core.loader import load_model  # noqa: E402
from causal_multiteams.core.signature import Signature  # noqa: E402

DATA = SCRIPTS / "causal_multiteams" / "data"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Tests see the default settings regardless of the caller's .env."""
    for name in list(os.environ):
        if name.startswith("CML_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def sum_chain():
    return load_model(DATA / "sum_chain.json")


@pytest.fixture
def xy():
    """Two binary variables; states (0,0), (0,1), (1,0), (1,1)."""
    return Signature.from_mapping(["X", "Y"], {"X": [0, 1], "Y": [0, 1]})


@pytest.fixture
def xyz():
    return Signature.from_mapping(["X", "Y", "Z"], {"X": [0, 1], "Y": [0, 1], "Z": [0, 1]})


@pytest.fixture
def x_only():
    return Signature.from_mapping(["X"], {"X": [0, 1]})


@pytest.fixture
def three_states():
    """One variable S with values 1..3, so S=i picks the i-th state."""
    return Signature.single("S", 3)


@pytest.fixture
def y_copies_x(xy):
    """F_Y(X) = X."""
    return FunctionComponent.build(xy, [make_law(xy, "Y", ["X"], {(0,): 0, (1,): 1})])


@pytest.fixture
def x_copies_y(xy):
    """F_X(Y) = Y."""
    return FunctionComponent.build(xy, [make_law(xy, "X", ["Y"], {(0,): 0, (1,): 1})])
