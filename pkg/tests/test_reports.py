import json

import pytest

from stochint.reports import (
    CheckResult,
    SuiteReport,
    bound,
    count_zero,
    equality,
    merge_reports,
    render_json,
)


def test_equality_pass_rule():
    assert equality("x", 1.0, 1.0 + 5e-13, 1e-12).passed
    assert not equality("x", 1.0, 1.0 + 2e-12, 1e-12).passed


def test_bound_pass_rule():
    assert bound("x", 0.5, 1.0, 0.0).passed
    assert bound("x", 1.0, 1.0, 1e-10).passed
    assert not bound("x", 1.0 + 1e-9, 1.0, 1e-10).passed


def test_count_zero():
    assert count_zero("violations", 0).passed
    assert not count_zero("violations", 3).passed


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        CheckResult("x", "approx", 0.0, 0.0, 0.0)


def make_report() -> SuiteReport:
    rep = SuiteReport("demo", 42, "uniform, cells=2")
    rep.add(equality("one", 1.0, 1.0, 0.0))
    rep.add(bound("two", 1.0 / 3.0, 0.5, 1e-10))
    rep.notes.append("a note")
    return rep


def test_report_passed_and_failures():
    rep = make_report()
    assert rep.passed
    rep.add(equality("bad", 1.0, 2.0, 1e-12))
    assert not rep.passed
    assert [c.name for c in rep.failures()] == ["bad"]


def test_render_is_valid_json_and_roundtrips():
    text = render_json(make_report())
    obj = json.loads(text)
    assert obj["schema"] == 1
    assert obj["suite"] == "demo"
    assert obj["seed"] == 42
    assert obj["checks"][1]["lhs"] == 1.0 / 3.0  # 17 digits round-trip exactly
    assert obj["checks"][0]["pass"] is True
    assert obj["notes"] == ["a note"]
    assert "wall_time_s" not in obj


def test_render_17_significant_digits():
    text = render_json(make_report())
    assert "0.33333333333333331" in text


def test_render_deterministic():
    assert render_json(make_report()) == render_json(make_report())


def test_render_rejects_non_finite():
    rep = SuiteReport("demo", 0, "g")
    rep.add(equality("inf", float("inf"), 0.0, 0.0))
    with pytest.raises(ValueError):
        render_json(rep)


def test_merge_prefixes_names():
    a = make_report()
    b = SuiteReport("other", 42, "g")
    b.add(count_zero("three", 0))
    merged = merge_reports("all", 42, "g", [a, b])
    assert [c.name for c in merged.checks] == ["demo/one", "demo/two", "other/three"]
    assert merged.passed
    assert merged.notes == ["demo: a note"]
