import json
from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bfc.core import TruthTable

settings.register_profile("bfc", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("bfc")


def all_tables(n):
    return (TruthTable(n, v) for v in range(1 << (1 << n)))


@st.composite
def tables(draw, min_n=0, max_n=5):
    n = draw(st.integers(min_n, max_n))
    return TruthTable(n, draw(st.integers(0, (1 << (1 << n)) - 1)))


def schema(name):
    return json.loads((files("bfc") / "schemas" / f"{name}.json").read_text())


# -- acceptance reporting: one PASS/FAIL line per criterion -------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    failed = call.excinfo is not None and call.when in ("setup", "call")
    prev = _ACCEPTANCE.get(number, (title, True))
    _ACCEPTANCE[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def tmp_sink(tmp_path):
    return str(tmp_path / "records.jsonl")
