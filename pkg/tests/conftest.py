import json
from pathlib import Path

import pytest

from thermleak.device import default_nmos, default_pmos
from thermleak.leakage import Branch, GateNetwork, Transistor

PROJECT_FILE = Path(__file__).resolve().parent.parent / "projects" / "demo.json"

V_DD = 1.2
T_ROOM = 300.0

# one line per acceptance criterion, echoed after the run regardless of
# output capturing (see test_acceptance.py)
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def nmos():
    return default_nmos()


@pytest.fixture(scope="session")
def pmos():
    return default_pmos()


def make_chain(n, width=0.3e-6, polarity="nmos"):
    return Branch(
        tuple(
            Transistor(id=f"t{i}", width=width, polarity=polarity, input_index=i)
            for i in range(n)
        )
    )


def make_inverter(wn=0.3e-6, wp=0.6e-6):
    return GateNetwork(
        name="inv",
        pull_up=(Branch((Transistor("p0", wp, "pmos", 0),)),),
        pull_down=(Branch((Transistor("n0", wn, "nmos", 0),)),),
        num_inputs=1,
    )


def make_nand2(wn=0.3e-6, wp=0.6e-6):
    return GateNetwork(
        name="nand2",
        pull_up=(
            Branch((Transistor("pa", wp, "pmos", 0),)),
            Branch((Transistor("pb", wp, "pmos", 1),)),
        ),
        pull_down=(
            Branch((Transistor("na", wn, "nmos", 0), Transistor("nb", wn, "nmos", 1))),
        ),
        num_inputs=2,
    )


def make_nor2(wn=0.3e-6, wp=0.6e-6):
    return GateNetwork(
        name="nor2",
        pull_up=(
            Branch((Transistor("pa", wp, "pmos", 0), Transistor("pb", wp, "pmos", 1))),
        ),
        pull_down=(
            Branch((Transistor("na", wn, "nmos", 0),)),
            Branch((Transistor("nb", wn, "nmos", 1),)),
        ),
        num_inputs=2,
    )


@pytest.fixture(scope="session")
def demo_project_dict():
    return json.loads(PROJECT_FILE.read_text())


@pytest.fixture(scope="session")
def demo_project_path():
    return str(PROJECT_FILE)
