"""Tests for report serialization."""

import json

import pytest

from pongalg.checks import Violation
from pongalg.reports import REPORT_SCHEMA, Report, canonical_json


@pytest.fixture
def report():
    return Report(
        command="homology",
        request={"m": 4, "k": 2, "x": [1, 3]},
        checks={"square-zero": True, "model": True},
        tables={
            "homology": [{"degree": 2, "dimension": 1, "x": [1, 3]}],
            "mu": [{"output": "Omega", "arity": 6}],
        },
        version="0.1.0",
    )


class TestReport:
    def test_canonical_json(self):
        assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'

    def test_request_hash_is_filled(self, report):
        assert len(report.request_hash) == 64
        same = Report("homology", {"x": [1, 3], "k": 2, "m": 4})
        assert same.request_hash == report.request_hash

    def test_json_is_deterministic(self, report):
        data = json.loads(report.to_json())
        assert data["schema_version"] == REPORT_SCHEMA
        assert data["passed"] is True
        assert list(data["checks"]) == ["model", "square-zero"]
        assert report.to_json() == Report.from_json(report.to_json()).to_json()

    def test_from_json_rejects_other_schema(self, report):
        data = json.loads(report.to_json())
        data["schema_version"] = "other@9"
        with pytest.raises(ValueError, match="unsupported report schema"):
            Report.from_json(json.dumps(data))

    def test_failure(self, report):
        report.checks["model"] = False
        report.violations.append(Violation("H(P(4,2))", "model", "dimension 2, expected 1"))
        assert not report.passed
        assert report.failing_checks() == ["model"]
        text = report.to_pretty()
        assert text.splitlines()[0] == "homology: FAIL"
        assert "  [FAIL] model" in text
        assert "H(P(4,2)): [model] dimension 2, expected 1" in text

    def test_violations_alone_fail(self):
        r = Report("atoms", {}, violations=[Violation("s", "r", "m")])
        assert not r.passed

    def test_csv_only_dimension_tables(self, report):
        lines = report.to_csv().splitlines()
        assert lines[0] == "table,degree,dimension,x"
        assert lines[1] == "homology,2,1,(1,3)"
        assert len(lines) == 2

    def test_pretty(self, report):
        text = report.to_pretty()
        assert text.startswith("homology: PASS")
        assert "  [ok] square-zero" in text
        assert "x=(1,3)" in text

    def test_render(self, report):
        assert report.render("json") == report.to_json()
        assert report.render("csv") == report.to_csv()
        with pytest.raises(ValueError, match="unknown format"):
            report.render("xml")
