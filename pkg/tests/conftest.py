import pytest

from quotcheck.commands import load_example, resolve
from quotcheck.structure import check_hereditary_like, compute_epic_sets


class Fixture:
    def __init__(self, name, characteristic=None):
        self.problem = load_example(name, characteristic)
        self.alg = self.problem.alg
        self.field = self.problem.field
        self.w = self.problem.w
        self.universe = self.problem.universe
        self._cert = None
        self._sets = None

    def __getitem__(self, name):
        return resolve(self.problem, name)

    @property
    def cert(self):
        if self._cert is None:
            self._cert = check_hereditary_like(self.w, self.universe, self.problem.complete)
        return self._cert

    @property
    def sets(self):
        if self._sets is None:
            self._sets = compute_epic_sets(self.cert, seed=1)
        return self._sets


@pytest.fixture(scope="session")
def a3():
    return Fixture("a3")


@pytest.fixture(scope="session")
def a3q():
    return Fixture("a3", 0)


@pytest.fixture(scope="session")
def a3f2():
    return Fixture("a3", 2)


@pytest.fixture(scope="session")
def gt3():
    return Fixture("gentle3")


@pytest.fixture(scope="session")
def kr():
    return Fixture("kronecker")


@pytest.fixture(scope="session", params=["a3", "gentle3", "kronecker"])
def fixture(request, a3, gt3, kr):
    return {"a3": a3, "gentle3": gt3, "kronecker": kr}[request.param]


@pytest.fixture(scope="session")
def acceptance_lines(request):
    lines = []
    request.config._acceptance_lines = lines
    return lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
