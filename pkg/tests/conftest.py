import pytest

from symtopo.lattice import TopologySpec

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def record_criterion():
    """Record one acceptance line; the summary is printed after the run."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE_RESULTS.append((name, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}" + (f" -- {detail}" if detail else ""))


# small instances used across modules
SMALL_SPECS = [
    TopologySpec.hypercube(1),
    TopologySpec.hypercube(3),
    TopologySpec.hypercube(5),
    TopologySpec.mesh(2, 3),
    TopologySpec.mesh(3, 1),
    TopologySpec.mesh(3, 2),
    TopologySpec.mesh(4, 3),
    TopologySpec.mesh(5, 2),
    TopologySpec.symplectic(1, 1),
    TopologySpec.symplectic(1, 2),
    TopologySpec.symplectic(1, 3),
    TopologySpec.symplectic(1, 4),
    TopologySpec.symplectic(2, 1),
    TopologySpec.symplectic(2, 2),
    TopologySpec.symplectic(2, 3),
    TopologySpec.symplectic(3, 2),
    TopologySpec.symplectic(3, 3),
]
