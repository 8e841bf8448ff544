from functools import reduce
from pathlib import Path

import numpy as np
import pytest

from stabdecode.code import five_qubit_code, parse_code, steane_code

DATA = Path(__file__).parent / "data"

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli_matrix(p):
    """Dense matrix of sign * kron_i X^{x_i} Z^{z_i}, qubit 1 leftmost."""
    factors = []
    for x, z in zip(p.x, p.z):
        m = I2
        if x:
            m = m @ X2
        if z:
            m = m @ Z2
        factors.append(m)
    return p.sign * reduce(np.kron, factors)


@pytest.fixture
def five():
    return five_qubit_code()


@pytest.fixture
def steane():
    return steane_code()


@pytest.fixture
def bitflip():
    return parse_code((DATA / "bitflip3.code").read_text(), name="bitflip3")


@pytest.fixture(params=["five_qubit", "steane"])
def builtin(request):
    return {"five_qubit": five_qubit_code, "steane": steane_code}[request.param]()


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
