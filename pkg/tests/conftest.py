import numpy as np
import pytest

from exactbeam import BeamParams


@pytest.fixture
def beam50():
    """Natural-units beam with k*w0 = 50 (the standard test beam)."""
    return BeamParams(k=50.0, w0=1.0, v=1.0)


@pytest.fixture
def beam100():
    """Tighter-focus comparison beam, k*w0 = 100."""
    return BeamParams(k=100.0, w0=1.0, v=1.0)


@pytest.fixture
def beam5():
    """Loosely focused beam where paraxial-scale corruption is well above stencil noise."""
    return BeamParams(k=5.0, w0=1.0, v=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and "::" in nodeid:
                rows.append((nodeid.split("::")[-1], outcome == "passed"))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, ok in sorted(rows):
        label = name.removeprefix("test_").replace("_", " ")
        terminalreporter.write_line(f"{label}: {'PASS' if ok else 'FAIL'}")
