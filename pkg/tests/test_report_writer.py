"""Tests for json, csv and text rendering."""

import json

from chainlab.config import Mode, OutputFormat
from chainlab.models.search import SearchOutcome
from chainlab.models.spectrum import GapReport
from chainlab.models.verify import VerificationReport
from chainlab.services.downer_service import downer_classify
from chainlab.services.report_writer import render, to_csv, to_json, to_text

PASSED = VerificationReport(check="psd", passed=True, cases_checked=3, parameters={"max_k": 3})
FAILED = VerificationReport(
    check="thm4.1", passed=False, cases_checked=2, witness={"graph": "X", "offending": [0.3]}
)


class TestJson:
    def test_sorted_keys(self):
        payload = json.loads(to_json(PASSED))
        assert list(payload) == sorted(payload)
        assert payload["parameters"] == {"max_k": 3}

    def test_list_of_reports(self):
        payload = json.loads(to_json([PASSED, FAILED]))
        assert [p["check"] for p in payload] == ["psd", "thm4.1"]

    def test_empty_search_outcome(self):
        assert to_json(SearchOutcome()) == ""

    def test_exact_values_on_wire(self, h7):
        payload = json.loads(to_json(downer_classify(h7, -1, Mode.EXACT)))
        assert payload["exact_eigenvalue"] == {"a": [-1, 1], "b": [0, 1]}


class TestCsv:
    def test_downer_rows(self, h7):
        text = to_csv(downer_classify(h7, 1, Mode.EXACT))
        lines = text.splitlines()
        assert lines[0] == (
            "graph,vertex,eigenvalue,exact,mul_parent,mul_child,is_downer,zero_component,ambiguous"
        )
        assert len(lines) == 1 + h7.n
        assert lines[2].startswith("H(7),u2,1.0,1,1,1,False,True")

    def test_gap_row(self):
        report = GapReport(graph="X", ok=False, closest_to_gap=0.3, offending=[0.3, -0.45])
        assert to_csv(report).splitlines()[1] == "X,False,0.3,0.3 -0.45"

    def test_verification_witness(self):
        row = to_csv(FAILED).splitlines()[1]
        assert row.startswith("thm4.1,False,2,")

    def test_no_rows(self):
        assert to_csv(SearchOutcome()) == ""


class TestText:
    def test_verification(self):
        assert to_text(PASSED) == "psd: PASS (3 cases)\n"
        lines = to_text(FAILED).splitlines()
        assert lines[0] == "thm4.1: FAIL (2 cases)"
        assert lines[1].startswith("  witness: ")

    def test_downer(self, h7):
        text = to_text(downer_classify(h7, 1, Mode.EXACT))
        assert "non-downer: u2, u5, v2, v5" in text
        assert "zero-component equivalence: True" in text


def test_render_dispatch():
    assert render(PASSED, OutputFormat.TEXT) == to_text(PASSED)
    assert render(PASSED, OutputFormat.CSV) == to_csv(PASSED)
    assert render(PASSED, OutputFormat.JSON) == to_json(PASSED)
