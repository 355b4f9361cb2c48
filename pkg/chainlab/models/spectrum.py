"""Pydantic models for spectrum reports."""

from pydantic import BaseModel

from chainlab.models.exact import ExactScalar


class MultiplicityResult(BaseModel):
    value: float
    multiplicity: int
    # Some eigenvalue lies close to the grouping window edge.
    ambiguous: bool = False


class PsdReport(BaseModel):
    k: int
    identity_ok: bool
    min_gram_eigenvalue: float
    bound_ok: bool


class GapReport(BaseModel):
    """Eigenvalue-free interval (0, 1/2) check for one graph."""

    graph: str
    ok: bool
    closest_to_gap: float | None = None
    offending: list[float] = []


class ExactEigenvalue(BaseModel):
    value: ExactScalar
    multiplicity: int


class EigenPair(BaseModel):
    eigenvalue: float
    multiplicity: int
    exact: ExactEigenvalue | None = None
    eigenvector: list[float] | None = None


class SpectrumReport(BaseModel):
    graph: str
    n: int
    vertices: list[str]
    eigenvalues: list[float]
    groups: list[EigenPair]
