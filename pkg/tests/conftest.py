import pytest

from discdyn.lorenz import CANONICAL, lorenz_orbit

_CRITERIA = []


@pytest.fixture(scope="session")
def canonical_orbit():
    """10^5-step canonical Lorenz orbit from (0, 1, 0) at dt = 0.01."""
    return lorenz_orbit(CANONICAL, (0.0, 1.0, 0.0), dt=0.01, n_steps=100_000)


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's verdict; printed in the terminal summary."""

    def record(label, ok, detail=""):
        _CRITERIA.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
