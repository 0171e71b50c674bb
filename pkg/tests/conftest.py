import pytest

from latmod import gen_zn_ideal_lattice, gen_zn_self_module, gen_zn_square_module

# filled by tests/test_acceptance.py; printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def l12():
    return gen_zn_ideal_lattice(12)


@pytest.fixture(scope="session")
def l8():
    return gen_zn_ideal_lattice(8)


@pytest.fixture(scope="session")
def m12self():
    return gen_zn_self_module(12)


@pytest.fixture(scope="session")
def m8self():
    return gen_zn_self_module(8)


@pytest.fixture(scope="session")
def m8square():
    return gen_zn_square_module(8)


@pytest.fixture(scope="session")
def m4square():
    return gen_zn_square_module(4)


def label_index(structure):
    return {structure.label(i): i for i in structure.elements()}
