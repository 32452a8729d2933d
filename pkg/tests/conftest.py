import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from tcrisk import RiskMeasure, Space
from tcrisk.sampling import seed_from_env

DATA = Path(__file__).parent / "data"

_criteria: dict[int, dict] = {}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return random.Random(seed_from_env())


@pytest.fixture
def u3():
    return Space.uniform(3)


@pytest.fixture
def worked(u3):
    return RiskMeasure.from_vectors(u3, [(F(3, 5), F(1, 5), F(1, 5)), (F(1, 5), F(3, 5), F(1, 5))])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    entry = _criteria.setdefault(num, {"text": text, "ok": True, "ran": False})
    if rep.when == "call":
        entry["ran"] = True
    if rep.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["ok"] and e["ran"] else ("FAIL" if not e["ok"] else "SKIP")
        tr.write_line(f"criterion {num:>2}: {status}  {e['text']}")
