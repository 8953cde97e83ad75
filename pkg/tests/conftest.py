from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings

from pcim.gallery import e1, e2

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture
def E1():
    return e1()


@pytest.fixture
def E2():
    return e2()


@pytest.fixture
def F():
    return Fraction


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key in report.keywords:
        if key.startswith("criterion_"):
            num = int(key.split("_")[1])
            name = report.nodeid.split("::")[-1]
            _criteria[num] = (name, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        name, outcome = _criteria[num]
        terminalreporter.write_line(f"criterion {num}: {outcome}  ({name})")


def pytest_configure(config):
    for k in range(1, 9):
        config.addinivalue_line("markers", f"criterion_{k}: acceptance criterion {k}")


@pytest.fixture(scope="session")
def golden_e2():
    import json
    from pathlib import Path

    return json.loads((Path(__file__).parent / "golden" / "e2.json").read_text())
