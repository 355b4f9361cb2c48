"""Report rendering: json, csv and text.

JSON is ``model_dump(mode="json")`` with sorted keys, so exact values keep
their ``{"a": [n, d], "b": [n, d]}`` form and output is byte-stable. CSV
has one row per (vertex, eigenvalue) pair. Text is for people and may
change between versions.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from pydantic import BaseModel

from chainlab.config import OutputFormat
from chainlab.models.downer import DownerReport
from chainlab.models.search import CounterexampleRecord, SearchOutcome
from chainlab.models.spectrum import GapReport, SpectrumReport
from chainlab.models.verify import VerificationReport

Report = BaseModel | Sequence[BaseModel]


def _json(value) -> str:
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


def to_json(report: Report) -> str:
    if isinstance(report, SearchOutcome):
        # JSON lines: confirmed records first, then unconfirmed ones.
        lines = [r.model_dump(mode="json") for r in report.records + report.unconfirmed]
        return "".join(_json(line) + "\n" for line in lines)
    if isinstance(report, BaseModel):
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"
    payload = [item.model_dump(mode="json") for item in report]
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ── CSV ──────────────────────────────────────────────────────────────────────


def _spectrum_rows(r: SpectrumReport) -> list[dict]:
    rows = []
    for group in r.groups:
        exact = str(group.exact.value) if group.exact else ""
        if group.eigenvector is None:
            rows.append({"graph": r.graph, "eigenvalue": group.eigenvalue,
                         "multiplicity": group.multiplicity, "exact": exact,
                         "vertex": "", "component": ""})
            continue
        for vertex, component in zip(r.vertices, group.eigenvector):
            rows.append({"graph": r.graph, "eigenvalue": group.eigenvalue,
                         "multiplicity": group.multiplicity, "exact": exact,
                         "vertex": vertex, "component": component})
    return rows


def _downer_rows(r: DownerReport) -> list[dict]:
    return [
        {
            "graph": r.graph,
            "vertex": v.vertex,
            "eigenvalue": r.eigenvalue,
            "exact": str(r.exact_eigenvalue) if r.exact_eigenvalue is not None else "",
            "mul_parent": v.mul_parent,
            "mul_child": v.mul_child,
            "is_downer": "" if v.is_downer is None else v.is_downer,
            "zero_component": "" if v.zero_component is None else v.zero_component,
            "ambiguous": v.ambiguous,
        }
        for v in r.verdicts
    ]


def _record_row(r: CounterexampleRecord) -> dict:
    return {
        "status": r.status,
        "graph": r.graph,
        "vertex": r.vertex,
        "eigenvalue": r.eigenvalue,
        "exact": str(r.exact_eigenvalue) if r.exact_eigenvalue is not None else "",
        "mul_parent": r.mul_parent,
        "mul_child": r.mul_child,
    }


def _rows(report: BaseModel) -> list[dict]:
    match report:
        case SpectrumReport():
            return _spectrum_rows(report)
        case DownerReport():
            return _downer_rows(report)
        case SearchOutcome():
            return [_record_row(r) for r in report.records + report.unconfirmed]
        case GapReport():
            return [{"graph": report.graph, "ok": report.ok,
                     "closest_to_gap": report.closest_to_gap,
                     "offending": " ".join(f"{e:.12g}" for e in report.offending)}]
        case VerificationReport():
            return [{"check": report.check, "passed": report.passed,
                     "cases_checked": report.cases_checked,
                     "witness": _json(report.witness) if report.witness else ""}]
    return [report.model_dump(mode="json")]


def to_csv(report: Report) -> str:
    items = [report] if isinstance(report, BaseModel) else list(report)
    rows = [row for item in items for row in _rows(item)]
    if not rows:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


# ── Text ─────────────────────────────────────────────────────────────────────


def _text(report: BaseModel) -> list[str]:
    match report:
        case SpectrumReport():
            lines = [f"{report.graph} (n={report.n})"]
            for g in report.groups:
                exact = f"  = {g.exact.value} (exact mul {g.exact.multiplicity})" if g.exact else ""
                lines.append(f"  {g.eigenvalue: .12f}  x{g.multiplicity}{exact}")
            return lines
        case DownerReport():
            value = report.exact_eigenvalue if report.exact_eigenvalue is not None else report.eigenvalue
            lines = [f"{report.graph}  λ={value}  mul={report.mul_parent}  mode={report.mode}"]
            if not report.is_eigenvalue:
                lines.append("  not an eigenvalue")
            else:
                lines.append(f"  non-downer: {', '.join(report.non_downer()) or '-'}")
            if report.zero_equivalence_holds is not None:
                lines.append(f"  zero-component equivalence: {report.zero_equivalence_holds}")
            return lines
        case SearchOutcome():
            lines = [f"{len(report.records)} confirmed, {len(report.unconfirmed)} unconfirmed "
                     f"({report.specs_checked} specs)"]
            for r in report.records + report.unconfirmed:
                value = r.exact_eigenvalue if r.exact_eigenvalue is not None else f"{r.eigenvalue:.12g}"
                lines.append(f"  [{r.status}] {r.graph}  {r.vertex}  λ={value}")
            return lines
        case GapReport():
            status = "ok" if report.ok else f"FAIL {report.offending}"
            return [f"{report.graph}: {status}  closest={report.closest_to_gap}"]
        case VerificationReport():
            status = "PASS" if report.passed else "FAIL"
            lines = [f"{report.check}: {status} ({report.cases_checked} cases)"]
            if report.witness:
                lines.append(f"  witness: {_json(report.witness)}")
            return lines
    return [report.model_dump_json()]


def to_text(report: Report) -> str:
    items = [report] if isinstance(report, BaseModel) else list(report)
    return "".join(line + "\n" for item in items for line in _text(item))


def render(report: Report, fmt: OutputFormat) -> str:
    match fmt:
        case OutputFormat.CSV:
            return to_csv(report)
        case OutputFormat.TEXT:
            return to_text(report)
        case _:
            return to_json(report)
