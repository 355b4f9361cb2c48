"""Tests for downer classification and the per-graph theorem checks."""

import numpy as np
import pytest

from chainlab.config import Mode
from chainlab.models.graph import ChainGraphSpec
from chainlab.services.downer_service import (
    cell_constancy_check,
    downer_classify,
    eigenvalue_gap_check,
    max_degree_downer_violations,
    recognize_exact,
    verify_max_degree_downer,
)
from chainlab.services.exact_arith import OMEGA, PHI, QuadraticNumber
from chainlab.services.graph_core import build_chain_graph, enumerate_chain_specs, half_graph
from chainlab.services.spectra import Spectrum, graph_spectrum
from chainlab.services.theorems import sum_rule_residual

H7_NON_DOWNER = ["u2", "u5", "v2", "v5"]


# ── Exact classification ─────────────────────────────────────────────────────


class TestExactClassification:
    def test_h7_one(self, h7):
        report = downer_classify(h7, 1, Mode.EXACT)
        assert report.mul_parent == 1
        assert report.non_downer() == H7_NON_DOWNER
        assert report.zero_equivalence_holds is True
        assert report.exact_eigenvalue == 1

    def test_h7_minus_one(self, h7):
        report = downer_classify(h7, -1, Mode.EXACT)
        assert report.non_downer() == H7_NON_DOWNER

    def test_verdict_invariants(self, h7):
        report = downer_classify(h7, 1, Mode.EXACT)
        for verdict in report.verdicts:
            assert verdict.mul_child in (verdict.mul_parent - 1, verdict.mul_parent)
            assert verdict.is_downer == (verdict.mul_child == verdict.mul_parent - 1)
            assert verdict.zero_component == (not verdict.is_downer)

    def test_certificates(self, h7):
        report = downer_classify(h7, 1, Mode.EXACT)
        for verdict in report.verdicts:
            if verdict.is_downer:
                assert verdict.certificate_exact is None
                continue
            assert verdict.certificate_ok is True
            certificate = verdict.certificate_exact
            assert certificate[verdict.vertex_id].is_zero()
            assert sum_rule_residual(h7, certificate, 1).is_zero

    def test_k2(self, k2):
        report = downer_classify(k2, 1, Mode.EXACT)
        assert report.downer() == ["u1", "v1"]
        assert report.non_downer() == []

    def test_h12_minus_omega(self):
        report = downer_classify(half_graph(12), -OMEGA, Mode.EXACT)
        assert report.non_downer() == ["u3", "u8", "v3", "v8"]
        assert report.zero_equivalence_holds is True

    def test_h4_minus_one(self):
        report = downer_classify(half_graph(4), -1, Mode.EXACT)
        assert report.non_downer() == ["u2", "v2"]

    def test_not_an_eigenvalue(self, h7):
        report = downer_classify(h7, 2, Mode.EXACT)
        assert report.mul_parent == 0
        assert report.eigenvector_exact is None
        assert not report.is_eigenvalue
        assert all(v.is_downer is None for v in report.verdicts)
        assert all(v.certificate_exact is None for v in report.verdicts)
        assert report.downer() == [] and report.non_downer() == []

    def test_not_an_eigenvalue_float(self):
        report = downer_classify(half_graph(2), 0.3, Mode.FLOAT)
        assert report.mul_parent == 0
        assert [v.is_downer for v in report.verdicts] == [None] * 4
        assert report.non_downer() == []

    def test_exact_mode_needs_exact_lambda(self, h7):
        with pytest.raises(ValueError, match="exact mode"):
            downer_classify(h7, 1.0, Mode.EXACT)

    def test_serializes_exact_values(self, p4):
        dumped = downer_classify(p4, OMEGA, Mode.EXACT).model_dump(mode="json")
        assert dumped["exact_eigenvalue"] == {"a": [-1, 2], "b": [1, 2]}
        assert dumped["eigenvector_exact"][0] == {"a": [1, 1], "b": [0, 1]}


# ── Float classification ─────────────────────────────────────────────────────


class TestFloatClassification:
    def test_h7_one(self, h7, tol):
        report = downer_classify(h7, 1.0, Mode.FLOAT, tol)
        assert report.mode == "float"
        assert report.non_downer() == H7_NON_DOWNER
        assert report.zero_equivalence_holds is True
        assert np.linalg.norm(report.eigenvector) == pytest.approx(1.0)
        assert report.exact_eigenvalue == 1

    def test_float_certificates(self, h7):
        report = downer_classify(h7, 1.0, Mode.FLOAT)
        for verdict in report.verdicts:
            if not verdict.is_downer:
                assert verdict.certificate_ok is True
                assert verdict.certificate[verdict.vertex_id] == 0.0

    def test_hybrid_goes_exact_for_representable(self, h7):
        report = downer_classify(h7, 1.0, Mode.HYBRID)
        assert report.mode == "exact"
        assert report.non_downer() == H7_NON_DOWNER

    def test_hybrid_stays_float_outside_field(self):
        p3 = build_chain_graph(ChainGraphSpec(k=1, u_sizes=(1,), v_sizes=(2,)))
        report = downer_classify(p3, 2**0.5, Mode.HYBRID)
        assert report.mode == "float"
        assert report.exact_eigenvalue is None
        assert report.non_downer() == []

    def test_modes_agree(self):
        for spec in enumerate_chain_specs(6):
            g = build_chain_graph(spec)
            for lam in (1, -1, OMEGA, -OMEGA):
                exact = downer_classify(g, lam, Mode.EXACT)
                floating = downer_classify(g, float(lam), Mode.FLOAT)
                assert exact.non_downer() == floating.non_downer(), (spec.label(), str(lam))


# ── Recognition ──────────────────────────────────────────────────────────────


class TestRecognizeExact:
    def test_p4_values(self, p4):
        values = graph_spectrum(p4).eigenvalues
        assert recognize_exact(float(OMEGA), values) == OMEGA
        assert recognize_exact(-float(OMEGA), values) == -OMEGA
        assert recognize_exact(float(PHI), values) == PHI

    def test_integer(self):
        assert recognize_exact(1.0 + 1e-12, []) == 1
        assert recognize_exact(-2.0, []) == -2

    def test_sqrt2_outside_field(self):
        root2 = 2**0.5
        assert recognize_exact(root2, [root2, 0.0, -root2]) is None

    def test_sqrt5(self):
        root5 = 5**0.5
        assert recognize_exact(root5, [root5, -root5]) == QuadraticNumber(0, 1)


# ── Max-degree vertices ──────────────────────────────────────────────────────


class TestMaxDegreeDowner:
    @pytest.mark.parametrize("mode", [Mode.HYBRID, Mode.FLOAT, Mode.EXACT])
    def test_h7(self, mode):
        assert verify_max_degree_downer(HALF7, mode)

    def test_c4(self):
        assert verify_max_degree_downer(ChainGraphSpec(k=1, u_sizes=(2,), v_sizes=(2,)))

    def test_mixed_cells(self):
        assert verify_max_degree_downer(ChainGraphSpec(k=2, u_sizes=(1, 2), v_sizes=(2, 1)))

    def test_small_specs(self):
        for spec in enumerate_chain_specs(7):
            assert max_degree_downer_violations(spec) == [], spec.label()


HALF7 = ChainGraphSpec(k=7, u_sizes=(1,) * 7, v_sizes=(1,) * 7)


# ── Gap ──────────────────────────────────────────────────────────────────────


class TestGapCheck:
    def test_p4(self, p4):
        report = eigenvalue_gap_check(graph_spectrum(p4), "H(2)")
        assert report.ok
        assert report.closest_to_gap == pytest.approx(float(OMEGA))

    def test_c4(self, c4):
        report = eigenvalue_gap_check(graph_spectrum(c4))
        assert report.ok
        assert report.closest_to_gap == pytest.approx(2.0)

    def test_violation(self):
        s = Spectrum(np.array([1.0, 0.3, 0.0, -0.45]), np.eye(4))
        report = eigenvalue_gap_check(s, "made-up")
        assert not report.ok
        assert report.offending == [0.3, -0.45]
        assert report.closest_to_gap == pytest.approx(0.3)

    def test_half_is_allowed(self):
        s = Spectrum(np.array([0.5, -0.5]), np.eye(2))
        assert eigenvalue_gap_check(s).ok

    def test_small_chain_graphs(self):
        for spec in enumerate_chain_specs(9):
            assert eigenvalue_gap_check(graph_spectrum(build_chain_graph(spec))).ok


# ── Cell constancy ───────────────────────────────────────────────────────────


class TestCellConstancy:
    def test_mixed_cells(self):
        assert cell_constancy_check(ChainGraphSpec(k=2, u_sizes=(2, 1), v_sizes=(1, 3)))

    def test_small_specs(self):
        for spec in enumerate_chain_specs(8):
            assert cell_constancy_check(spec), spec.label()
