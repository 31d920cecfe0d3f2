import numpy as np
import pytest

from schattenlab import SU2, Torus


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=["T1", "T2", "SU2"])
def group(request):
    return {"T1": Torus(1), "T2": Torus(2), "SU2": SU2()}[request.param]


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion."""
    def log(number: int, title: str, passed: bool, detail: str, seconds: float):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:2d} {title}: {detail} ({seconds:.2f}s)")
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
