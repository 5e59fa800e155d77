import numpy as np
import pytest

from tests.helpers import GOLDEN


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def golden_dir():
    return GOLDEN


@pytest.fixture(autouse=True)
def _no_user_config(monkeypatch):
    monkeypatch.delenv("DEFORMLAB_CONFIG", raising=False)


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import CRITERIA

    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            name = nodeid.rsplit("::", 1)[-1]
            if "test_acceptance.py" in nodeid and name in CRITERIA and report.when == "call":
                lines.append((CRITERIA[name], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for desc, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {desc}")
