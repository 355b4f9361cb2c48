"""Downer classification and the per-graph theorem checks.

A vertex v is downer for λ when ``mul(λ, G−v) = mul(λ, G) − 1``. For a
simple eigenvalue with eigenvector x, v is not downer exactly when
x(v) = 0; ``downer_classify`` records both sides and flags any mismatch.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from chainlab.config import Mode, Tolerances
from chainlab.models.downer import DownerReport, VertexVerdict
from chainlab.models.graph import ChainGraphSpec
from chainlab.models.spectrum import GapReport
from chainlab.services.exact_arith import (
    QuadraticNumber,
    exact_eigenspace,
    exact_eigenvector,
    exact_multiplicity,
)
from chainlab.services.graph_core import Graph, build_chain_graph, delete_vertex
from chainlab.services.spectra import Spectrum, float_multiplicity, graph_spectrum
from chainlab.services.theorems import sum_rule_residual

logger = logging.getLogger(__name__)


def is_exact_value(value) -> bool:
    return isinstance(value, (QuadraticNumber, int, Fraction)) and not isinstance(value, bool)


def recognize_exact(
    lam: float, eigenvalues: Sequence[float], tol: Tolerances | None = None
) -> QuadraticNumber | None:
    """Candidate ℚ(√5) value for a floating eigenvalue, or None.

    Integers are matched directly. Otherwise λ is paired with another
    eigenvalue μ of the same spectrum such that ``λ+μ`` and ``λμ`` are
    integers with discriminant ``5t²``; then ``λ = (s ± t√5)/2``.
    Callers confirm the candidate with :func:`exact_multiplicity`.
    """
    tol = tol or Tolerances()
    eps = tol.group_tol
    nearest = round(lam)
    if abs(lam - nearest) <= eps:
        return QuadraticNumber(nearest)
    for mu in eigenvalues:
        mu = float(mu)
        if abs(mu - lam) <= eps:
            continue
        s, p = lam + mu, lam * mu
        s_int, p_int = round(s), round(p)
        if abs(s - s_int) > eps or abs(p - p_int) > eps * max(1.0, abs(p)):
            continue
        disc = s_int * s_int - 4 * p_int
        if disc <= 0 or disc % 5:
            continue
        t = isqrt(disc // 5)
        if t * t != disc // 5:
            continue
        for sign in (1, -1):
            candidate = QuadraticNumber(Fraction(s_int, 2), Fraction(sign * t, 2))
            if abs(float(candidate) - lam) <= eps:
                return candidate
    return None


def confirmed_exact(
    g: Graph, lam: float, eigenvalues: Sequence[float], tol: Tolerances | None = None
) -> QuadraticNumber | None:
    """:func:`recognize_exact` candidate that is an exact eigenvalue of g."""
    candidate = recognize_exact(lam, eigenvalues, tol)
    if candidate is None or exact_multiplicity(g, candidate) == 0:
        return None
    return candidate


def _zero_extend(child_vector: Sequence, v: int, zero) -> list:
    extended = list(child_vector)
    extended.insert(v, zero)
    return extended


def _unit(x: np.ndarray, zero_tol: float) -> np.ndarray:
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        return x
    x = x / norm
    lead = np.flatnonzero(np.abs(x) > zero_tol)
    if lead.size and x[lead[0]] < 0:
        x = -x
    return x


def _cluster_vector(s: Spectrum, lam: float) -> np.ndarray | None:
    """Eigenvector column for the single eigenvalue within group_tol of lam."""
    hits = np.flatnonzero(np.abs(s.eigenvalues - lam) <= s.group_tol)
    if hits.size != 1:
        return None
    return s.vector(int(hits[0]))


# ── Classification ───────────────────────────────────────────────────────────


def _downer_flag(mul_parent: int, mul_child: int) -> bool | None:
    if mul_parent == 0:
        return None
    return mul_child == mul_parent - 1


def _classify_exact(g: Graph, lam: QuadraticNumber, tol: Tolerances) -> DownerReport:
    mul_parent = exact_multiplicity(g, lam)
    x = exact_eigenvector(g, lam) if mul_parent == 1 and lam else None
    verdicts = []
    for v in range(g.n):
        child = delete_vertex(g, v)
        mul_child = exact_multiplicity(child, lam)
        is_downer = _downer_flag(mul_parent, mul_child)
        verdict = VertexVerdict(
            vertex_id=v,
            vertex=g.name(v),
            mul_parent=mul_parent,
            mul_child=mul_child,
            is_downer=is_downer,
            zero_component=x[v].is_zero() if x is not None else None,
        )
        if is_downer is False and lam:
            basis = exact_eigenspace(child, lam)
            certificate = _zero_extend(basis[0], v, QuadraticNumber(0))
            verdict.certificate_exact = certificate
            verdict.certificate_ok = bool(sum_rule_residual(g, certificate, lam).is_zero)
        verdicts.append(verdict)
    return DownerReport(
        graph=g.display_name,
        vertices=g.names(),
        mode=Mode.EXACT,
        eigenvalue=float(lam),
        exact_eigenvalue=lam,
        mul_parent=mul_parent,
        eigenvector_exact=list(x) if x is not None else None,
        verdicts=verdicts,
    )


def _classify_float(
    g: Graph, lam: float, exact: QuadraticNumber | None, tol: Tolerances
) -> DownerReport:
    s = graph_spectrum(g, tol)
    parent = float_multiplicity(s, lam, tol)
    if parent.ambiguous:
        if exact is not None:
            logger.info("ambiguous float multiplicity at λ=%.12g; using exact arithmetic", lam)
            return _classify_exact(g, exact, tol)
        logger.warning("multiplicity of λ=%.12g is tolerance-ambiguous on %s", lam, g.display_name)
    mul_parent = parent.multiplicity
    column = _cluster_vector(s, lam) if mul_parent == 1 else None
    x = _unit(column, tol.zero_tol) if column is not None else None
    verdicts = []
    for v in range(g.n):
        child_graph = delete_vertex(g, v)
        child = graph_spectrum(child_graph, tol)
        result = float_multiplicity(child, lam, tol)
        mul_child, ambiguous = result.multiplicity, result.ambiguous or parent.ambiguous
        if result.ambiguous and exact is not None:
            mul_child, ambiguous = exact_multiplicity(child_graph, exact), parent.ambiguous
        is_downer = _downer_flag(mul_parent, mul_child)
        verdict = VertexVerdict(
            vertex_id=v,
            vertex=g.name(v),
            mul_parent=mul_parent,
            mul_child=mul_child,
            is_downer=is_downer,
            ambiguous=ambiguous,
            zero_component=bool(abs(x[v]) <= tol.zero_tol) if x is not None else None,
        )
        if is_downer is False and abs(lam) > tol.group_tol:
            y = _cluster_vector(child, lam)
            if y is None:
                hits = np.flatnonzero(np.abs(child.eigenvalues - lam) <= child.group_tol)
                y = child.vector(int(hits[0])) if hits.size else None
            if y is not None:
                certificate = _zero_extend(y.tolist(), v, 0.0)
                verdict.certificate = certificate
                residual = sum_rule_residual(g, certificate, lam)
                verdict.certificate_ok = residual.max_abs <= tol.residual_tol * max(1, g.n)
        verdicts.append(verdict)
    return DownerReport(
        graph=g.display_name,
        vertices=g.names(),
        mode=Mode.FLOAT,
        eigenvalue=float(lam),
        exact_eigenvalue=exact,
        mul_parent=mul_parent,
        eigenvector=x.tolist() if x is not None else None,
        verdicts=verdicts,
    )


def downer_classify(
    g: Graph, lam, mode: Mode = Mode.EXACT, tol: Tolerances | None = None
) -> DownerReport:
    """Decide, for every vertex v, whether v is downer for λ.

    EXACT needs λ in ℚ(√5). FLOAT works in floating point and falls back
    to exact arithmetic for any tolerance-ambiguous count when λ is (or is
    recognized as) a ℚ(√5) value. HYBRID behaves as EXACT for such λ and as
    FLOAT otherwise.
    """
    tol = tol or Tolerances()
    exact = QuadraticNumber.coerce(lam) if is_exact_value(lam) else None
    if mode is Mode.EXACT and exact is None:
        raise ValueError(f"exact mode needs λ in ℚ(√5), got {lam!r}")
    if exact is None:
        s = graph_spectrum(g, tol)
        exact = confirmed_exact(g, float(lam), s.eigenvalues, tol)
    if mode is Mode.EXACT or (mode is Mode.HYBRID and exact is not None):
        report = _classify_exact(g, exact, tol)
    else:
        report = _classify_float(g, float(lam), exact, tol)

    if not report.is_eigenvalue:
        logger.warning("λ=%.12g is not an eigenvalue of %s", report.eigenvalue, g.display_name)
    if report.mul_parent == 1 and abs(report.eigenvalue) > tol.group_tol:
        checked = [v for v in report.verdicts if v.zero_component is not None]
        if checked:
            holds = all(v.zero_component == (not v.is_downer) for v in checked)
            report.zero_equivalence_holds = holds
            if not holds:
                logger.error(
                    "zero-component/downer mismatch on %s at λ=%.12g", g.display_name,
                    report.eigenvalue,
                )
    logger.debug(
        "%s λ=%.12g mul=%d non-downer=%s", g.display_name, report.eigenvalue,
        report.mul_parent, report.non_downer(),
    )
    return report


# ── Max-degree vertices ──────────────────────────────────────────────────────


def max_degree_downer_violations(
    spec: ChainGraphSpec, mode: Mode = Mode.HYBRID, tol: Tolerances | None = None
) -> list[dict]:
    """(vertex, eigenvalue) pairs where a vertex of U₁ or V₁ is not downer."""
    tol = tol or Tolerances()
    g = build_chain_graph(spec)
    s = graph_spectrum(g, tol)
    targets = [v for v in range(g.n) if g.labels[v].cell == 1]
    children = {v: delete_vertex(g, v) for v in targets}
    child_spectra: dict[int, Spectrum] = {}
    violations = []
    for group in s.nonzero_clusters():
        lam = float(np.mean(s.eigenvalues[group]))
        exact = None
        if mode is not Mode.FLOAT:
            exact = confirmed_exact(g, lam, s.eigenvalues, tol)
        if exact is not None:
            mul_parent = exact_multiplicity(g, exact)
        else:
            mul_parent = len(group)
        for v in targets:
            if exact is not None:
                mul_child = exact_multiplicity(children[v], exact)
            else:
                if v not in child_spectra:
                    child_spectra[v] = graph_spectrum(children[v], tol)
                mul_child = float_multiplicity(child_spectra[v], lam, tol).multiplicity
            if mul_child != mul_parent - 1:
                violations.append(
                    {
                        "graph": spec.label(),
                        "vertex": g.name(v),
                        "eigenvalue": lam,
                        "mul_parent": mul_parent,
                        "mul_child": mul_child,
                    }
                )
    for violation in violations:
        logger.error("max-degree vertex not downer: %s", violation)
    return violations


def verify_max_degree_downer(
    spec: ChainGraphSpec, mode: Mode = Mode.HYBRID, tol: Tolerances | None = None
) -> bool:
    """Every vertex of U₁ and V₁ is downer for every nonzero eigenvalue."""
    return not max_degree_downer_violations(spec, mode, tol)


# ── Eigenvalue-free interval ─────────────────────────────────────────────────


def eigenvalue_gap_check(
    s: Spectrum, graph: str = "", tol: Tolerances | None = None
) -> GapReport:
    """No eigenvalue in ``(group_tol, 1/2 − gap_edge_tol)`` or its mirror."""
    tol = tol or Tolerances()
    upper = 0.5 - tol.gap_edge_tol
    magnitudes = np.abs(s.eigenvalues)
    nonzero = magnitudes[magnitudes > s.group_tol]
    offending = [float(e) for e in s.eigenvalues if s.group_tol < abs(e) < upper]
    report = GapReport(
        graph=graph,
        ok=not offending,
        closest_to_gap=float(np.min(nonzero)) if nonzero.size else None,
        offending=offending,
    )
    if offending:
        logger.error("eigenvalue in (0, 1/2) for %s: %s", graph or "spectrum", offending)
    return report


# ── Cell constancy ───────────────────────────────────────────────────────────


def cell_constancy_violations(
    spec: ChainGraphSpec, tol: Tolerances | None = None
) -> list[dict]:
    """Simple nonzero eigenvalues whose eigenvector varies inside a cell."""
    tol = tol or Tolerances()
    g = build_chain_graph(spec)
    s = graph_spectrum(g, tol)
    cells: dict[tuple, list[int]] = {}
    for v, label in enumerate(g.labels):
        cells.setdefault((label.vclass, label.cell), []).append(v)
    violations = []
    for group in s.nonzero_clusters():
        if len(group) != 1:
            continue
        x = _unit(s.vector(group[0]), tol.zero_tol)
        for (vclass, cell), members in cells.items():
            spread = float(np.ptp(x[members]))
            if spread > tol.zero_tol:
                violations.append(
                    {
                        "graph": spec.label(),
                        "eigenvalue": float(s.eigenvalues[group[0]]),
                        "cell": f"{vclass}{cell}",
                        "spread": spread,
                    }
                )
    return violations


def cell_constancy_check(spec: ChainGraphSpec, tol: Tolerances | None = None) -> bool:
    return not cell_constancy_violations(spec, tol)
