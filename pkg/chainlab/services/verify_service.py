"""Exhaustive verification sweeps behind ``chainlab verify <target>``.

Each sweep returns a :class:`VerificationReport`; a failed check is a
report with ``passed=False`` and the first failing case as witness, never
an exception. Spec-level sweeps can be spread over worker processes; the
results are consumed in enumeration order.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, Iterable

import numpy as np

from chainlab.config import Mode, Tolerances
from chainlab.models.graph import ChainGraphSpec
from chainlab.models.verify import VerificationReport
from chainlab.services.charpoly import characteristic_polynomial, charpoly_roots
from chainlab.services.downer_service import (
    cell_constancy_violations,
    confirmed_exact,
    eigenvalue_gap_check,
    max_degree_downer_violations,
)
from chainlab.services.exact_arith import OMEGA, QuadraticNumber, exact_multiplicity
from chainlab.services.graph_core import (
    build_chain_graph,
    delete_vertex,
    enumerate_chain_specs,
    half_graph,
)
from chainlab.services.spectra import (
    check_interlacing,
    float_multiplicity,
    graph_spectrum,
    psd_identity_check,
)
from chainlab.services.theorems import (
    Family,
    PatternVector,
    extend_by_duplicate,
    negate_classes,
    pattern_table,
    pattern_vector,
    sum_rule_residual,
    table_fixture_check,
)

logger = logging.getLogger(__name__)

# Per-spec check: a list of failure dicts (empty means the spec passes).
SpecCheck = Callable[[ChainGraphSpec], list[dict[str, Any]]]

ORACLE_LAMBDAS: tuple[QuadraticNumber, ...] = (
    QuadraticNumber(0), QuadraticNumber(1), QuadraticNumber(-1), OMEGA, -OMEGA,
)


def _run(check: SpecCheck, specs: list[ChainGraphSpec], workers: int) -> list[list[dict]]:
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(check, specs, chunksize=16))
    return [check(spec) for spec in specs]


def _spec_sweep(
    name: str,
    check: SpecCheck,
    max_n: int,
    workers: int = 1,
    parameters: dict[str, int] | None = None,
) -> VerificationReport:
    started = time.perf_counter()
    specs = list(enumerate_chain_specs(max_n))
    failures = [f for result in _run(check, specs, workers) for f in result]
    logger.info(
        "%s: %d specs, %d failures, %.2fs", name, len(specs), len(failures),
        time.perf_counter() - started,
    )
    for failure in failures:
        logger.error("%s violated: %s", name, failure)
    return VerificationReport(
        check=name,
        passed=not failures,
        cases_checked=len(specs),
        parameters=parameters or {"max_n": max_n},
        witness=failures[0] if failures else None,
        details=failures,
    )


# ── Per-spec checks (module level so worker processes can pickle them) ──────


def _max_degree_check(spec: ChainGraphSpec, mode: Mode, tol: Tolerances) -> list[dict]:
    return max_degree_downer_violations(spec, mode, tol)


def _gap_check(spec: ChainGraphSpec, tol: Tolerances) -> list[dict]:
    report = eigenvalue_gap_check(graph_spectrum(build_chain_graph(spec), tol), spec.label(), tol)
    return [] if report.ok else [{"graph": spec.label(), "offending": report.offending}]


def _interlacing_check(spec: ChainGraphSpec, tol: Tolerances) -> list[dict]:
    g = build_chain_graph(spec)
    parent = graph_spectrum(g, tol)
    failures = []
    for v in range(g.n):
        if not check_interlacing(parent, graph_spectrum(delete_vertex(g, v), tol), tol):
            failures.append({"graph": spec.label(), "vertex": g.name(v)})
    return failures


def _simplicity_check(spec: ChainGraphSpec, tol: Tolerances) -> list[dict]:
    g = build_chain_graph(spec)
    s = graph_spectrum(g, tol)
    failures = []
    for group in s.nonzero_clusters():
        lam = float(np.mean(s.eigenvalues[group]))
        exact = confirmed_exact(g, lam, s.eigenvalues, tol)
        mul = exact_multiplicity(g, exact) if exact is not None else len(group)
        if mul != 1:
            failures.append({"graph": spec.label(), "eigenvalue": lam, "multiplicity": mul})
    return failures


def _oracle_check(spec: ChainGraphSpec, tol: Tolerances) -> list[dict]:
    g = build_chain_graph(spec)
    s = graph_spectrum(g, tol)
    failures = []
    roots = charpoly_roots(characteristic_polynomial(g))
    drift = float(np.max(np.abs(roots - s.eigenvalues)))
    if drift > tol.group_tol:
        failures.append({"graph": spec.label(), "charpoly_drift": drift})
    for lam in ORACLE_LAMBDAS:
        exact_mul = exact_multiplicity(g, lam)
        float_mul = float_multiplicity(s, float(lam), tol).multiplicity
        if exact_mul != float_mul:
            failures.append(
                {"graph": spec.label(), "lambda": str(lam), "exact": exact_mul, "float": float_mul}
            )
    return failures


def _cells_check(spec: ChainGraphSpec, tol: Tolerances) -> list[dict]:
    return cell_constancy_violations(spec, tol)


# ── Sweeps ───────────────────────────────────────────────────────────────────


def verify_max_degree(
    max_n: int = 10, mode: Mode = Mode.HYBRID, tol: Tolerances | None = None, workers: int = 1
) -> VerificationReport:
    """Vertices of U₁ and V₁ are downer for every nonzero eigenvalue."""
    tol = tol or Tolerances()
    return _spec_sweep("thm3.1", partial(_max_degree_check, mode=mode, tol=tol), max_n, workers)


def verify_gap(
    max_n: int = 12, tol: Tolerances | None = None, workers: int = 1
) -> VerificationReport:
    """No chain graph eigenvalue in (0, 1/2) or (−1/2, 0)."""
    tol = tol or Tolerances()
    return _spec_sweep("thm4.1", partial(_gap_check, tol=tol), max_n, workers)


def verify_interlacing(
    max_n: int = 10, tol: Tolerances | None = None, workers: int = 1
) -> VerificationReport:
    tol = tol or Tolerances()
    return _spec_sweep("interlacing", partial(_interlacing_check, tol=tol), max_n, workers)


def verify_simplicity(
    max_n: int = 12, tol: Tolerances | None = None, workers: int = 1
) -> VerificationReport:
    """Nonzero eigenvalues are simple (exactly at ℚ(√5) values)."""
    tol = tol or Tolerances()
    return _spec_sweep("simplicity", partial(_simplicity_check, tol=tol), max_n, workers)


def verify_oracle(
    max_n: int = 8, tol: Tolerances | None = None, workers: int = 1
) -> VerificationReport:
    """Jacobi eigenvalues match characteristic-polynomial roots and exact counts."""
    tol = tol or Tolerances()
    return _spec_sweep("oracle", partial(_oracle_check, tol=tol), max_n, workers)


def verify_cells(
    max_n: int = 10, tol: Tolerances | None = None, workers: int = 1
) -> VerificationReport:
    tol = tol or Tolerances()
    return _spec_sweep("cells", partial(_cells_check, tol=tol), max_n, workers)


def _patterns(family: Family, max_k: int) -> Iterable[PatternVector]:
    for k in range(1, max_k + 1):
        p = pattern_vector(family, k)
        if isinstance(p, PatternVector):
            yield p


def verify_pattern_family(family: Family, max_k: int) -> VerificationReport:
    """Exact sum rule for ``(x, x)`` and its class-negated ``(x, −x)`` on every H(k)."""
    name = "thm3.2" if family is Family.PERIOD6 else "thm3.3"
    started = time.perf_counter()
    cases, failures = 0, []
    for p in _patterns(family, max_k):
        g = half_graph(p.k)
        for variant in (p, negate_classes(p)):
            cases += 1
            residual = sum_rule_residual(g, variant.full_vector(), variant.eigenvalue)
            if not residual.is_zero:
                failures.append(
                    {
                        "k": p.k,
                        "eigenvalue": str(variant.eigenvalue),
                        "layout": variant.sign_layout,
                        "worst_vertex": g.name(residual.worst_vertex),
                    }
                )
    logger.info("%s: %d cases up to k=%d in %.2fs", name, cases, max_k, time.perf_counter() - started)
    for failure in failures:
        logger.error("%s pattern is not an eigenvector: %s", name, failure)
    return VerificationReport(
        check=name,
        passed=not failures,
        cases_checked=cases,
        parameters={"max_k": max_k},
        witness=failures[0] if failures else None,
        details=failures,
    )


def verify_tables() -> VerificationReport:
    details, failures = [], []
    for family in Family:
        ok = table_fixture_check(family)
        rows = pattern_table(family)
        details.extend(
            {"family": str(family), **row.model_dump(mode="json"), "holds": row.holds}
            for row in rows
        )
        if not ok:
            bad_rows = [{"family": str(family), "s": r.s} for r in rows if not r.holds]
            failures.extend(bad_rows or [{"family": str(family), "period_sum": "nonzero"}])
    return VerificationReport(
        check="tables",
        passed=not failures,
        cases_checked=len(details),
        witness=failures[0] if failures else None,
        details=details,
    )


def verify_psd(max_k: int = 50, tol: Tolerances | None = None) -> VerificationReport:
    """``4CCᵀ − I − 2J = (2C − I)(2C − I)ᵀ`` and ``λ_min(CCᵀ) ≥ 1/4`` for k ≤ max_k."""
    tol = tol or Tolerances()
    failures = []
    for k in range(1, max_k + 1):
        report = psd_identity_check(k, tol)
        if not (report.identity_ok and report.bound_ok):
            failures.append(report.model_dump())
    return VerificationReport(
        check="psd",
        passed=not failures,
        cases_checked=max_k,
        parameters={"max_k": max_k},
        witness=failures[0] if failures else None,
        details=failures,
    )


def verify_duplicates(max_k: int = 30) -> VerificationReport:
    """Duplicating a zero-entry vertex keeps the zero-extended vector an eigenvector."""
    cases, failures = 0, []
    for family in Family:
        for p in _patterns(family, max_k):
            g = half_graph(p.k)
            x = p.full_vector()
            for v in range(g.n):
                if not x[v].is_zero():
                    continue
                cases += 1
                bigger, extended = extend_by_duplicate(g, x, v)
                if not sum_rule_residual(bigger, extended, p.eigenvalue).is_zero:
                    failures.append({"family": str(family), "k": p.k, "vertex": g.name(v)})
    for failure in failures:
        logger.error("duplicate extension is not an eigenvector: %s", failure)
    return VerificationReport(
        check="duplicates",
        passed=not failures,
        cases_checked=cases,
        parameters={"max_k": max_k},
        witness=failures[0] if failures else None,
        details=failures,
    )


TARGETS = (
    "thm3.1", "thm3.2", "thm3.3", "thm4.1", "tables", "psd",
    "interlacing", "simplicity", "oracle", "cells", "duplicates",
)

# target -> (bound name, default bound)
DEFAULT_BOUNDS: dict[str, tuple[str, int] | None] = {
    "thm3.1": ("max_n", 10),
    "thm3.2": ("max_k", 103),
    "thm3.3": ("max_k", 107),
    "thm4.1": ("max_n", 12),
    "tables": None,
    "psd": ("max_k", 50),
    "interlacing": ("max_n", 10),
    "simplicity": ("max_n", 12),
    "oracle": ("max_n", 8),
    "cells": ("max_n", 10),
    "duplicates": ("max_k", 30),
}


def run_target(
    target: str,
    *,
    max_n: int | None = None,
    max_k: int | None = None,
    mode: Mode = Mode.HYBRID,
    tol: Tolerances | None = None,
    workers: int = 1,
) -> VerificationReport:
    """Dispatch a ``verify`` target with its bound (or the default bound)."""
    if target not in DEFAULT_BOUNDS:
        raise ValueError(f"unknown verify target {target!r}; expected one of {', '.join(TARGETS)}")
    tol = tol or Tolerances()
    bound = DEFAULT_BOUNDS[target]
    limit = None
    if bound is not None:
        name, default = bound
        limit = (max_n if name == "max_n" else max_k) or default
    match target:
        case "thm3.1":
            return verify_max_degree(limit, mode, tol, workers)
        case "thm3.2":
            return verify_pattern_family(Family.PERIOD6, limit)
        case "thm3.3":
            return verify_pattern_family(Family.PERIOD10, limit)
        case "thm4.1":
            return verify_gap(limit, tol, workers)
        case "tables":
            return verify_tables()
        case "psd":
            return verify_psd(limit, tol)
        case "interlacing":
            return verify_interlacing(limit, tol, workers)
        case "simplicity":
            return verify_simplicity(limit, tol, workers)
        case "oracle":
            return verify_oracle(limit, tol, workers)
        case "cells":
            return verify_cells(limit, tol, workers)
        case _:
            return verify_duplicates(limit)
