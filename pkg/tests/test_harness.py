import json

import pytest

from homquot import harness
from homquot.corpus import curated
from homquot.harness import (
    CHECK_IDS,
    CHECKS,
    CheckFailed,
    Context,
    PropertyCheck,
    reproduce,
    run_check,
    run_suite,
    select_checks,
    write_report,
)
from homquot.quotients import Extension, self_extension


def row(name):
    obj, expected = curated()[name]
    E = obj if isinstance(obj, Extension) else self_extension(obj)
    return name, E, {"strategy": "curated"}


def test_registry_has_unique_ids_and_summaries():
    assert len(set(CHECK_IDS)) == len(CHECK_IDS) == len(CHECKS)
    for c in CHECKS.values():
        assert c.summary and c.shape in ("algebra", "extension", "extension+ideal")


def test_select_checks():
    assert select_checks("all") == list(CHECK_IDS)
    assert select_checks("T3.10, R2.9") == ["T3.10", "R2.9"]
    with pytest.raises(KeyError):
        select_checks("X9.9")


@pytest.mark.parametrize("cid,name", [("R2.9", "sl2_gf5"), ("T3.10", "borel_in_sl2"), ("P3.13", "sl2_gf5"),
                                      ("T5.11", "sl2_gf5"), ("L4.2", "sl2_gf5")])
def test_single_checks_pass(cid, name):
    _, E, _ = row(name)
    assert run_check(cid, Context(name, E)).status == "pass"


def test_not_applicable_with_reason():
    _, E, _ = row("ex2_5_gf5")
    out = run_check("T5.11", Context("ex2_5_gf5", E))
    assert out.status == "na" and "semiprime" in out.reason


def test_empty_corpus_and_filter():
    rep = run_suite([], "all")
    assert rep.fail_count == 0 and rep.rows == []
    assert all(sum(c.counts.values()) == 0 for c in rep.checks)
    one = run_suite([row("borel_in_sl2")], "T3.10")
    assert [c.id for c in one.checks] == ["T3.10"] and len(one.rows) == 1


def test_failures_are_recorded_and_reproducible(monkeypatch, tmp_path):
    def broken(c):
        if c.name == "borel_in_sl2":
            raise CheckFailed("planted", {"q": (0, 1, 0)})

    monkeypatch.setitem(harness.CHECKS, "T3.10", PropertyCheck("T3.10", "extension", "planted", broken))
    rep = run_suite([row("borel_in_sl2"), row("sl2_gf5")], "T3.10", jobs=1)
    assert rep.fail_count == 1
    failure = rep.checks[0].failures[0]
    assert failure["instance"] == "borel_in_sl2"
    assert failure["certificate"] == {"q": ["0", "1", "0"]}
    # the stored failure is self-contained: it rebuilds and fails again
    again = json.loads(json.dumps(failure))
    assert reproduce(again, "T3.10").status == "fail"
    paths = write_report(rep, tmp_path, plot=True)
    data = json.loads(paths["json"].read_text())
    assert data["total_fail"] == 1
    assert paths["csv"].read_text().splitlines()[0] == "instance,check,status,reason"
    assert paths["png"].read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_report_is_independent_of_jobs():
    rows = [row(n) for n in ("borel_in_sl2", "sl2_gf5", "abelian_3", "ex2_5_gf5")]
    a = run_suite(rows, "T3.10,P3.1,L5.2", jobs=1)
    b = run_suite(list(reversed(rows)), "T3.10,P3.1,L5.2", jobs=3)
    assert a.dumps() == b.dumps() and a.csv_text() == b.csv_text()
