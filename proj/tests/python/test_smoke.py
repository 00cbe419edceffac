"""End-to-end checks of the python layer against the built-in cover documents."""

import json

import pytest

import fembed

EXPECTED_FIXTURES = {"trivial", "linear", "threechart", "obstructed", "degenerate-seed"}


def test_fixture_names():
    names = fembed.fixture_names()
    assert EXPECTED_FIXTURES.issubset(set(names))


def test_fixture_documents_parse_and_validate():
    for name in fembed.fixture_names():
        text = fembed.fixture_json(name)
        doc = json.loads(text)
        assert doc["charts"], name
        result = fembed.validate(text)
        assert result["exit_code"] == 0, name
        report = json.loads(result["report"])
        assert report["command"] == "validate"
        assert report["status"] == "OK"
        assert "series" not in result


def test_validate_flags_inconsistent_document():
    doc = json.loads(fembed.fixture_json("linear"))
    # Break one transition coefficient so the inverse identity fails.
    doc["g"]["U1,U2"]["terms"][0]["coeffs"][0]["terms"][0]["c"] = "2"
    result = fembed.validate(json.dumps(doc))
    assert result["exit_code"] == 2
    report = json.loads(result["report"])
    assert report["status"] == "VALIDATION_FAILED"
    assert not report["validation"]["pass"]
    assert any(not line["pass"] for line in report["validation"]["checks"])


def test_malformed_document_raises():
    with pytest.raises(ValueError):
        fembed.validate('{"charts": []}')


def test_run_is_deterministic_and_reaches_order():
    text = fembed.fixture_json("linear")
    first = fembed.run(text, 2)
    second = fembed.run(text, 2)
    assert first["exit_code"] == 0
    assert first == second
    report = json.loads(first["report"])
    assert report["order_reached"] == 2
    series = json.loads(first["series"])
    assert set(series) == {"U1", "U2"}
    assert all(chart["order"] == 2 for chart in series.values())


def test_run_reports_obstruction():
    result = fembed.run(fembed.fixture_json("obstructed"), 2)
    assert result["exit_code"] == 3
    report = json.loads(result["report"])
    assert report["status"] == "OBSTRUCTED"
    assert report["obstruction"]["order"] == 1
    assert report["obstruction"]["residual_norm_sq"] == "4/1"
    assert report["orders"][0]["obstructed"]


def test_certify_linear_automatic_scales():
    report = fembed.certify_report(fembed.fixture_json("linear"), 3)
    cert = report["certificate"]
    assert cert["status"] == "CERTIFIED"
    assert cert["a"] == "288/11"
    assert cert["b"] == "221184/11"
    assert cert["epsilon0"] == "11/442368"
    assert all(line["pass"] for line in cert["conditions"])


def test_certify_trivial_pinned_scales():
    result = fembed.certify(fembed.fixture_json("trivial"), 3, a="1", b="64", rho="1/128")
    assert result["exit_code"] == 0
    cert = json.loads(result["report"])["certificate"]
    assert cert["status"] == "CERTIFIED"
    assert cert["epsilon0"] == "1/128"


def test_certify_refuses_undersized_weight():
    result = fembed.certify(fembed.fixture_json("linear"), 3, a="1", b="1", rho="1/2")
    assert result["exit_code"] == 4
    cert = json.loads(result["report"])["certificate"]
    assert cert["status"] == "UNCERTIFIABLE"
    assert cert["reason"]


def test_report_helpers_decode():
    report = fembed.validate_report(fembed.fixture_json("trivial"))
    assert report["tool"]
    report = fembed.run_report(fembed.fixture_json("trivial"), 2)
    assert report["command"] == "run"
