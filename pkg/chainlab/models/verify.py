"""Pydantic models for theorem verification reports."""

from typing import Any

from pydantic import BaseModel

from chainlab.models.exact import ExactScalar


class SumRuleResidual(BaseModel):
    exact: bool
    # Exact mode only: every vertex satisfies the sum rule exactly.
    is_zero: bool | None = None
    max_abs: float
    worst_vertex: int | None = None


class PatternTableRow(BaseModel):
    s: int
    value: ExactScalar
    upper1: int
    sum1: ExactScalar
    upper2: int
    sum2: ExactScalar
    expected1: ExactScalar
    expected2: ExactScalar

    @property
    def holds(self) -> bool:
        return self.sum1 == self.expected1 and self.sum2 == self.expected2


class VerificationReport(BaseModel):
    """Outcome of one ``verify`` target."""

    check: str
    passed: bool
    cases_checked: int
    parameters: dict[str, int] = {}
    # First failing case, when any.
    witness: dict[str, Any] | None = None
    details: list[dict[str, Any]] = []
