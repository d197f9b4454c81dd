import pytest

from toricvanish.fan import hirzebruch, p1xp1, projective_plane, validate


@pytest.fixture
def P2():
    return projective_plane()


@pytest.fixture
def P1P1():
    return p1xp1()


@pytest.fixture
def F1():
    return hirzebruch(1)


@pytest.fixture
def A1_cone_fan():
    # cone ((1,0),(1,2)) has multiplicity 2
    return validate([(1, 0), (1, 2), (-1, -1)])


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
