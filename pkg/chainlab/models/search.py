"""Pydantic models for the counterexample search."""

from typing import Literal

from pydantic import BaseModel, Field, field_validator

from chainlab.config import Mode
from chainlab.models.exact import ExactScalar
from chainlab.models.graph import ChainGraphSpec


class SearchJob(BaseModel):
    max_n: int
    mode: Mode = Mode.HYBRID
    # Only eigenvalues equal to one of these (exactly, or within group_tol).
    eigenvalue_filter: list[ExactScalar] | None = None
    workers: int = Field(1, ge=1)
    half_graphs_only: bool = False

    @field_validator("max_n")
    @classmethod
    def _max_n_at_least_two(cls, max_n: int) -> int:
        if max_n < 2:
            raise ValueError("max_n must be ≥ 2")
        return max_n


class CounterexampleRecord(BaseModel):
    """A vertex that is not downer for a nonzero eigenvalue."""

    status: Literal["confirmed", "unconfirmed"] = "confirmed"
    spec: ChainGraphSpec
    graph: str
    vertex_id: int
    vertex: str
    eigenvalue: float
    exact_eigenvalue: ExactScalar | None = None
    exact: bool
    mul_parent: int
    mul_child: int
    # Eigenvector of the parent with a zero at vertex_id.
    certificate: list[float] | None = None
    certificate_exact: list[ExactScalar] | None = None


class SearchOutcome(BaseModel):
    records: list[CounterexampleRecord] = []
    unconfirmed: list[CounterexampleRecord] = []
    specs_checked: int = 0
