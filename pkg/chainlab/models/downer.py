"""Pydantic models for downer classification."""

from pydantic import BaseModel

from chainlab.models.exact import ExactScalar


class VertexVerdict(BaseModel):
    vertex_id: int
    vertex: str
    mul_parent: int
    mul_child: int
    # None when λ is not an eigenvalue of the parent: there is nothing to lose.
    is_downer: bool | None
    # Child multiplicity stayed tolerance-ambiguous (no exact fallback available).
    ambiguous: bool = False
    zero_component: bool | None = None
    # Non-downer vertices: a child eigenvector extended by 0 at this vertex,
    # in parent vertex order; it is an eigenvector of the parent as well.
    certificate: list[float] | None = None
    certificate_exact: list[ExactScalar] | None = None
    certificate_ok: bool | None = None


class DownerReport(BaseModel):
    graph: str
    vertices: list[str]
    mode: str
    eigenvalue: float
    exact_eigenvalue: ExactScalar | None = None
    mul_parent: int
    # Parent eigenvector, attached when mul_parent == 1.
    eigenvector: list[float] | None = None
    eigenvector_exact: list[ExactScalar] | None = None
    # For a simple eigenvalue: x(v) = 0 exactly at the non-downer vertices.
    zero_equivalence_holds: bool | None = None
    verdicts: list[VertexVerdict]

    @property
    def is_eigenvalue(self) -> bool:
        return self.mul_parent > 0

    def non_downer(self) -> list[str]:
        return [v.vertex for v in self.verdicts if v.is_downer is False]

    def downer(self) -> list[str]:
        return [v.vertex for v in self.verdicts if v.is_downer is True]
