import time
from pathlib import Path

import pytest
from hypothesis import settings

from homquot.corpus import load_corpus

ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = ROOT / "corpus"

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_criteria = {}


@pytest.fixture(scope="session")
def corpus_rows():
    return load_corpus(CORPUS_DIR)


@pytest.fixture
def criterion(request):
    """Record a timed pass/fail line for an acceptance criterion."""
    state = {}

    def start(number, label, limit=None):
        state.update(number=number, label=label, limit=limit, t0=time.perf_counter())

    yield start
    if state:
        elapsed = time.perf_counter() - state["t0"]
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        _criteria[state["number"]] = (ok, state["label"], elapsed, state["limit"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, label, elapsed, limit = _criteria[number]
        bound = f" (limit {limit:g}s)" if limit else ""
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {label}  "
                                    f"[{elapsed:.2f}s{bound}]")
