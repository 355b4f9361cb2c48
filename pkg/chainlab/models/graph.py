"""Pydantic models for chain-graph specs and graph file documents."""

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ChainGraphSpec(BaseModel):
    """Cell partition ``(k, |U₁|..|U_k|, |V₁|..|V_k|)`` of a chain graph.

    Every vertex of ``U_i`` is adjacent to exactly ``V_1 ∪ … ∪ V_{k−i+1}``.
    """

    model_config = ConfigDict(frozen=True)

    k: int
    u_sizes: tuple[int, ...]
    v_sizes: tuple[int, ...]

    @field_validator("k")
    @classmethod
    def _k_positive(cls, k: int) -> int:
        if k < 1:
            raise ValueError("k must be ≥ 1")
        return k

    @field_validator("u_sizes", "v_sizes")
    @classmethod
    def _cells_nonempty(cls, sizes: tuple[int, ...]) -> tuple[int, ...]:
        if any(size < 1 for size in sizes):
            raise ValueError("every cell size must be ≥ 1")
        return sizes

    @model_validator(mode="after")
    def _lengths_match_k(self) -> "ChainGraphSpec":
        if len(self.u_sizes) != self.k:
            raise ValueError(f"u_sizes must list exactly k={self.k} cell sizes")
        if len(self.v_sizes) != self.k:
            raise ValueError(f"v_sizes must list exactly k={self.k} cell sizes")
        return self

    @property
    def n(self) -> int:
        return sum(self.u_sizes) + sum(self.v_sizes)

    @property
    def is_half_graph(self) -> bool:
        return all(s == 1 for s in self.u_sizes) and all(s == 1 for s in self.v_sizes)

    def label(self) -> str:
        if self.is_half_graph:
            return f"H({self.k})"
        u = ",".join(map(str, self.u_sizes))
        v = ",".join(map(str, self.v_sizes))
        return f"k={self.k}:u={u}:v={v}"

    def sort_key(self) -> tuple:
        """Enumeration order: total n, then k, then u_sizes, then v_sizes."""
        return (self.n, self.k, self.u_sizes, self.v_sizes)


class HalfGraphId(BaseModel):
    """Identifies the half graph ``H(k)``."""

    model_config = ConfigDict(frozen=True)

    k: int

    @field_validator("k")
    @classmethod
    def _k_positive(cls, k: int) -> int:
        if k < 1:
            raise ValueError("k must be ≥ 1")
        return k

    def to_spec(self) -> ChainGraphSpec:
        return ChainGraphSpec(k=self.k, u_sizes=(1,) * self.k, v_sizes=(1,) * self.k)


# ── Graph file documents ─────────────────────────────────────────────────────


class ChainSpecDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["chain-spec"]
    k: int
    u_sizes: list[int]
    v_sizes: list[int]

    def to_spec(self) -> ChainGraphSpec:
        return ChainGraphSpec(k=self.k, u_sizes=tuple(self.u_sizes), v_sizes=tuple(self.v_sizes))


class EdgeListDocument(BaseModel):
    """Arbitrary simple graph. IDs are 0-based; ``u_class`` must be ``0..|U|−1``."""

    model_config = ConfigDict(extra="forbid")

    type: Literal["edge-list"]
    n: int = Field(ge=0)
    u_class: list[int]
    edges: list[tuple[int, int]]

    @model_validator(mode="after")
    def _ids_in_range(self) -> "EdgeListDocument":
        if sorted(self.u_class) != list(range(len(self.u_class))) or len(self.u_class) > self.n:
            raise ValueError("u_class must list the ids 0..|U|-1 (U vertices come first)")
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge [{i},{j}] references a vertex outside 0..{self.n - 1}")
            if i == j:
                raise ValueError(f"edge [{i},{j}] is a self-loop")
        return self


GraphDocument = Annotated[ChainSpecDocument | EdgeListDocument, Field(discriminator="type")]
