import json

import mpmath as mp
import pytest

from zetacoeffs.report import IdentityResult, VerificationReport, make_result
from zetacoeffs.suites import SUITES, SUMMATORY_CONSTANTS, IdentityCase, run_suite, suite_cases


def _boom(case):
    raise RuntimeError("kaput")


def _ok(case, value):
    return make_result(case.id, case.reference, value, 1, case.tolerance)


def test_crash_becomes_fail_row():
    rows = IdentityCase("x", "ref", _boom).run()
    assert len(rows) == 1 and rows[0].status == "fail" and "kaput" in rows[0].note


def test_case_tolerance_validation():
    with pytest.raises(ValueError):
        IdentityCase("x", "ref", _ok, {"value": 1}, tolerance=0)


def test_make_result_statuses():
    assert make_result("a", "r", 1, 1 + 1e-12, 1e-10).status == "pass"
    assert make_result("a", "r", 1, 1.1, 1e-10).status == "fail"
    assert make_result("a", "r", 1, 1.1, 1e-10, exploratory=True).status == "exploratory"
    assert make_result("a", "r", None, 1, 1e-10).status == "indeterminate"
    with pytest.raises(ValueError):
        IdentityResult("a", "r", {}, 1, 1, 0, 1, "maybe")


def test_report_json_and_counts():
    rep = VerificationReport()
    rep.add(make_result("b", "r", mp.mpc(1, 2), mp.mpc(1, 2), 1e-10))
    rep.add(make_result("a", "r", 1, 2, 1e-10))
    srt = rep.sorted()
    assert [r.id for r in srt.rows] == ["a", "b"]
    assert not rep.ok and rep.counts()["fail"] == 1
    lines = [json.loads(x) for x in rep.to_jsonl().splitlines()]
    assert lines[0]["lhs"] == {"re": "1.0", "im": "2.0"}
    assert "pass=1, fail=1" in rep.table()


def test_every_suite_has_unique_ids():
    for name in SUITES:
        ids = [c.id for c in suite_cases(name, K=1000)]
        assert len(ids) == len(set(ids)), name
    assert len(suite_cases("all", K=1000)) == sum(len(suite_cases(n, K=1000)) for n in SUITES)
    with pytest.raises(ValueError):
        suite_cases("bogus")


def test_printed_constants_are_parseable():
    for key, (text, tol) in SUMMATORY_CONSTANTS.items():
        digits = len(text.split(".")[1])
        # tolerance is one unit in the last printed place
        assert tol == pytest.approx(10.0 ** -digits), key


def test_appendix_suite_is_independent_of_jobs():
    a = run_suite("appendix", jobs=1)
    b = run_suite("appendix", jobs=2)
    assert [(r.id, r.status, str(r.abs_delta)) for r in a.rows] == [(r.id, r.status, str(r.abs_delta)) for r in b.rows]
    assert a.ok
