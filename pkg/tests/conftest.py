from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from arcjones.diagram import load

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
ALL = sorted(p.stem for p in FIXTURES.glob("*.kdt"))
UNKNOTS = ["unknot0", "unknot_a", "unknot_b"]

settings.register_profile("repo", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def fixture(name):
    return load(FIXTURES / f"{name}.kdt")


@pytest.fixture(params=ALL)
def any_diagram(request):
    return fixture(request.param)


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
