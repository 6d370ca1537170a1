import pytest

from gdet import CoefficientTuple

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# tuples used across modules; values are the ones printed for each family
@pytest.fixture
def identity_tuple():
    return CoefficientTuple.identity()


@pytest.fixture
def plus_2_16_tuple():
    # (1+z)(1+z^2) + (1+z)(1-z^2)x + (1-z^3)y + (1-z)(1-z^2)xy
    return CoefficientTuple((1, 1, 1, 1), (1, 1, -1, -1), (1, 0, 0, -1), (1, -1, -1, 1))


@pytest.fixture
def five_family_tuple():
    # (1+z+z^2) + (1+z)x + (z-z^3)y + (1-z^2)xy
    return CoefficientTuple((1, 1, 1, 0), (1, 1, 0, 0), (0, 1, 0, -1), (1, 0, -1, 0))


@pytest.fixture
def one_mod_16_tuple():
    # 1 + W at m = 1
    return CoefficientTuple((2, 1, 1, 1), (1, 1, 1, 1), (1, 1, 1, 1), (1, 1, 1, 1))
