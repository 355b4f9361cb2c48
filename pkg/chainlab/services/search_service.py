"""Counterexample search: vertices that are not downer for a nonzero eigenvalue.

Work is sharded by spec. One worker handles a whole spec (parent spectrum
plus every deletion), and results are merged back in enumeration order,
so output does not depend on the worker count.

Screening uses the zero components of the parent eigenvector: for a
simple eigenvalue, v is not downer exactly when x(v) = 0. Candidates are
then confirmed by multiplicity, exactly when λ lies in ℚ(√5).
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from chainlab.config import Mode, Tolerances
from chainlab.models.graph import ChainGraphSpec
from chainlab.models.search import CounterexampleRecord, SearchJob, SearchOutcome
from chainlab.services.downer_service import confirmed_exact
from chainlab.services.exact_arith import ZERO, QuadraticNumber, exact_eigenspace, exact_multiplicity
from chainlab.services.graph_core import Graph, build_chain_graph, delete_vertex, enumerate_chain_specs
from chainlab.services.spectra import Spectrum, float_multiplicity, graph_spectrum
from chainlab.services.theorems import sum_rule_residual

logger = logging.getLogger(__name__)

_Found = tuple[list[CounterexampleRecord], list[CounterexampleRecord]]


def _passes_filter(lam: float, exact: QuadraticNumber | None, job: SearchJob, tol: Tolerances) -> bool:
    if not job.eigenvalue_filter:
        return True
    for wanted in job.eigenvalue_filter:
        if exact is not None:
            if exact == wanted:
                return True
        elif abs(float(wanted) - lam) <= tol.group_tol:
            return True
    return False


def _screen(g: Graph, s: Spectrum, group: list[int], tol: Tolerances) -> list[int]:
    """Vertices that may be non-downer for the eigenvalue cluster ``group``."""
    if len(group) != 1:
        # No zero-component test for a repeated eigenvalue; try every vertex.
        return list(range(g.n))
    x = s.vector(group[0])
    return [int(v) for v in np.flatnonzero(np.abs(x) <= tol.zero_tol)]


def _exact_record(
    spec: ChainGraphSpec, g: Graph, v: int, lam: float, exact: QuadraticNumber
) -> CounterexampleRecord | None:
    mul_parent = exact_multiplicity(g, exact)
    child = delete_vertex(g, v)
    mul_child = exact_multiplicity(child, exact)
    if mul_child != mul_parent:
        return None
    certificate = list(exact_eigenspace(child, exact)[0])
    certificate.insert(v, ZERO)
    return CounterexampleRecord(
        spec=spec,
        graph=spec.label(),
        vertex_id=v,
        vertex=g.name(v),
        eigenvalue=lam,
        exact_eigenvalue=exact,
        exact=True,
        mul_parent=mul_parent,
        mul_child=mul_child,
        certificate_exact=certificate,
    )


def _float_record(
    spec: ChainGraphSpec, g: Graph, v: int, lam: float, mul_parent: int, tol: Tolerances
) -> tuple[CounterexampleRecord | None, bool]:
    """Float-confirmed record and whether the child count was ambiguous."""
    child = graph_spectrum(delete_vertex(g, v), tol)
    result = float_multiplicity(child, lam, tol)
    if result.multiplicity != mul_parent:
        return None, result.ambiguous
    hits = np.flatnonzero(np.abs(child.eigenvalues - lam) <= child.group_tol)
    certificate = child.vector(int(hits[0])).tolist()
    certificate.insert(v, 0.0)
    record = CounterexampleRecord(
        spec=spec,
        graph=spec.label(),
        vertex_id=v,
        vertex=g.name(v),
        eigenvalue=lam,
        exact=False,
        mul_parent=mul_parent,
        mul_child=result.multiplicity,
        certificate=certificate,
    )
    return record, result.ambiguous


def reverify(g: Graph, record: CounterexampleRecord, tol: Tolerances | None = None) -> bool:
    """Independent check: certificate satisfies the sum rule and multiplicities agree."""
    tol = tol or Tolerances()
    child = delete_vertex(g, record.vertex_id)
    if record.exact:
        lam = record.exact_eigenvalue
        certificate = record.certificate_exact
        return (
            certificate is not None
            and certificate[record.vertex_id].is_zero()
            and bool(sum_rule_residual(g, certificate, lam).is_zero)
            and exact_multiplicity(g, lam) == record.mul_parent
            and exact_multiplicity(child, lam) == record.mul_child == record.mul_parent
        )
    certificate = record.certificate
    if certificate is None or certificate[record.vertex_id] != 0.0:
        return False
    residual = sum_rule_residual(g, certificate, record.eigenvalue)
    mul_child = float_multiplicity(graph_spectrum(child, tol), record.eigenvalue, tol)
    return (
        residual.max_abs <= tol.residual_tol * max(1, g.n)
        and mul_child.multiplicity == record.mul_parent
    )


def search_spec(spec: ChainGraphSpec, job: SearchJob, tol: Tolerances) -> _Found:
    """All non-downer (vertex, eigenvalue) pairs of one spec."""
    g = build_chain_graph(spec)
    s = graph_spectrum(g, tol)
    confirmed: list[CounterexampleRecord] = []
    unconfirmed: list[CounterexampleRecord] = []
    for group in s.nonzero_clusters():
        lam = float(np.mean(s.eigenvalues[group]))
        exact = None if job.mode is Mode.FLOAT else confirmed_exact(g, lam, s.eigenvalues, tol)
        if not _passes_filter(lam, exact, job, tol):
            continue
        if job.mode is Mode.EXACT:
            if exact is None:
                logger.debug("%s: λ=%.12g outside ℚ(√5), skipped", spec.label(), lam)
                continue
            candidates = range(g.n)
        else:
            candidates = _screen(g, s, group, tol)
        for v in candidates:
            if exact is not None:
                record = _exact_record(spec, g, v, lam, exact)
                if record is not None:
                    confirmed.append(record)
                continue
            record, ambiguous = _float_record(spec, g, v, lam, len(group), tol)
            if record is None:
                continue
            if job.mode is Mode.FLOAT and not ambiguous:
                confirmed.append(record)
            else:
                unconfirmed.append(record.model_copy(update={"status": "unconfirmed"}))

    verified = []
    for record in confirmed:
        if reverify(g, record, tol):
            verified.append(record)
        else:
            logger.error("record failed re-verification: %s %s", record.graph, record.vertex)
            unconfirmed.append(record.model_copy(update={"status": "unconfirmed"}))

    def order(r: CounterexampleRecord) -> tuple:
        return (r.vertex_id, -r.eigenvalue)

    return sorted(verified, key=order), sorted(unconfirmed, key=order)


def _search_worker(args: tuple[ChainGraphSpec, SearchJob, Tolerances]) -> _Found:
    return search_spec(*args)


def find_non_downer(job: SearchJob, tol: Tolerances | None = None) -> SearchOutcome:
    """Run the search over every spec of the job, in enumeration order."""
    tol = tol or Tolerances()
    specs = list(enumerate_chain_specs(job.max_n, half_graphs_only=job.half_graphs_only))
    logger.info(
        "searching %d specs (max_n=%d, mode=%s, workers=%d)", len(specs), job.max_n,
        job.mode, job.workers,
    )
    started = time.perf_counter()
    tasks = [(spec, job, tol) for spec in specs]
    if job.workers > 1:
        with ProcessPoolExecutor(max_workers=job.workers) as pool:
            results = list(pool.map(_search_worker, tasks, chunksize=8))
    else:
        results = [_search_worker(task) for task in tasks]

    outcome = SearchOutcome(specs_checked=len(specs))
    for confirmed, unconfirmed in results:
        outcome.records.extend(confirmed)
        outcome.unconfirmed.extend(unconfirmed)
    logger.info(
        "search done: %d records, %d unconfirmed in %.2fs", len(outcome.records),
        len(outcome.unconfirmed), time.perf_counter() - started,
    )
    return outcome


def smallest_counterexample(
    max_n: int, mode: Mode = Mode.HYBRID, tol: Tolerances | None = None
) -> CounterexampleRecord | None:
    """First confirmed record in enumeration order, or None within the budget."""
    tol = tol or Tolerances()
    job = SearchJob(max_n=max_n, mode=mode)
    for spec in enumerate_chain_specs(job.max_n):
        confirmed, _ = search_spec(spec, job, tol)
        if confirmed:
            logger.info("smallest counterexample: %s %s", spec.label(), confirmed[0].vertex)
            return confirmed[0]
    return None
