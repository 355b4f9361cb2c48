"""Chain-graph data model: construction, recognition, deletion, duplication, enumeration.

Vertex order convention, used by every module: all U vertices first (by
cell, then index within the cell), then all V vertices in the same way.
Vertex names are ``u1, u2, …`` / ``v1, v2, …`` numbered by position within
the colour class, so ``H(k)`` has ``u_i`` in cell ``U_i``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import combinations
from typing import Iterator

import networkx as nx
import numpy as np
from networkx.algorithms import bipartite

from chainlab.models.graph import ChainGraphSpec, HalfGraphId

logger = logging.getLogger(__name__)


class VertexClass(StrEnum):
    U = "U"
    V = "V"


@dataclass(frozen=True, slots=True)
class VertexLabel:
    vclass: VertexClass
    position: int
    cell: int | None = None
    index: int | None = None

    @property
    def name(self) -> str:
        return f"{self.vclass.lower()}{self.position}"


@dataclass(frozen=True)
class Graph:
    """Immutable labelled simple graph (adjacency as neighbour sets)."""

    labels: tuple[VertexLabel, ...]
    adjacency: tuple[frozenset[int], ...]
    spec: ChainGraphSpec | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.adjacency):
            raise ValueError("labels and adjacency differ in length")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for w in nbrs:
                if not 0 <= w < len(self.adjacency) or v not in self.adjacency[w]:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {w})")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, nbrs in enumerate(self.adjacency):
            for w in sorted(nbrs):
                if v < w:
                    yield (v, w)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    def name(self, v: int) -> str:
        return self.labels[v].name

    def names(self) -> list[str]:
        return [label.name for label in self.labels]

    def vertex_id(self, name: str) -> int:
        for v, label in enumerate(self.labels):
            if label.name == name:
                return v
        raise KeyError(f"no vertex named {name!r}")

    def class_indices(self, vclass: str | VertexClass) -> tuple[int, ...]:
        key = VertexClass(vclass)
        if key not in self._cache:
            self._cache[key] = tuple(
                v for v, label in enumerate(self.labels) if label.vclass is key
            )
        return self._cache[key]

    def to_networkx(self) -> nx.Graph:
        """Shared ``nx.Graph`` view on vertex ids 0..n-1; do not mutate."""
        if "nx" not in self._cache:
            h = nx.Graph()
            h.add_nodes_from(range(self.n))
            h.add_edges_from(self.edges())
            self._cache["nx"] = h
        return self._cache["nx"]

    @property
    def is_labelled_bipartite(self) -> bool:
        """True when every edge joins a U-labelled and a V-labelled vertex."""
        return all(
            self.labels[v].vclass is not self.labels[w].vclass for v, w in self.edges()
        )

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=float)
        for v, w in self.edges():
            a[v, w] = a[w, v] = 1.0
        return a

    @property
    def display_name(self) -> str:
        return self.spec.label() if self.spec is not None else f"graph(n={self.n})"


# ── Construction ─────────────────────────────────────────────────────────────


def build_chain_graph(spec: ChainGraphSpec) -> Graph:
    """Build the chain graph with ``N(u) = V₁ ∪ … ∪ V_{k−i+1}`` for ``u ∈ U_i``."""
    labels: list[VertexLabel] = []
    u_cells: list[list[int]] = []
    v_cells: list[list[int]] = []
    for vclass, sizes, cells in (
        (VertexClass.U, spec.u_sizes, u_cells),
        (VertexClass.V, spec.v_sizes, v_cells),
    ):
        position = 0
        for cell, size in enumerate(sizes, start=1):
            members = []
            for index in range(1, size + 1):
                position += 1
                members.append(len(labels))
                labels.append(VertexLabel(vclass, position, cell, index))
            cells.append(members)

    adjacency: list[set[int]] = [set() for _ in labels]
    k = spec.k
    for i, u_members in enumerate(u_cells, start=1):
        reach = [v for cell in v_cells[: k - i + 1] for v in cell]
        for u in u_members:
            adjacency[u].update(reach)
            for v in reach:
                adjacency[v].add(u)

    g = Graph(tuple(labels), tuple(frozenset(s) for s in adjacency), spec=spec)
    logger.debug("built %s: n=%d, m=%d", spec.label(), g.n, g.edge_count)
    return g


def half_graph(hid: HalfGraphId | int) -> Graph:
    """``H(k)``: the chain graph with all 2k cells of size one."""
    if isinstance(hid, int):
        hid = HalfGraphId(k=hid)
    return build_chain_graph(hid.to_spec())


def graph_from_edges(n: int, u_class: list[int], edges: list[tuple[int, int]]) -> Graph:
    """Graph from an edge list; ``u_class`` ids get U labels, the rest V labels."""
    u_set = set(u_class)
    labels = []
    counters = {VertexClass.U: 0, VertexClass.V: 0}
    for v in range(n):
        vclass = VertexClass.U if v in u_set else VertexClass.V
        counters[vclass] += 1
        labels.append(VertexLabel(vclass, counters[vclass]))
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        adjacency[i].add(j)
        adjacency[j].add(i)
    g = Graph(tuple(labels), tuple(frozenset(s) for s in adjacency))
    spec = recover_spec(g)
    if spec is None or not g.is_labelled_bipartite:
        return g
    built = build_chain_graph(spec)
    # Cell labels only when the file already follows the vertex order convention.
    if built.adjacency != g.adjacency or built.names() != g.names():
        logger.debug("edge list is a chain graph %s out of cell order", spec.label())
        return g
    return built


# ── Recognition ──────────────────────────────────────────────────────────────


def two_colouring(g: Graph) -> list[int] | None:
    """2-colouring (0/1 per vertex), or None when g has an odd cycle.

    Each component's colours are normalized so its smallest vertex gets 0.
    """
    h = g.to_networkx()
    if not nx.is_bipartite(h):
        return None
    raw = bipartite.color(h)
    colour = [0] * g.n
    for comp in nx.connected_components(h):
        flip = raw[min(comp)]
        for v in comp:
            colour[v] = raw[v] ^ flip
    return colour


def _nontrivial_components(g: Graph) -> list[list[int]]:
    h = g.to_networkx()
    return sorted(sorted(c) for c in nx.connected_components(h) if len(c) > 1)


def _is_nested(neighbourhoods: list[frozenset[int]]) -> bool:
    ordered = sorted(neighbourhoods, key=len, reverse=True)
    return all(b <= a for a, b in zip(ordered, ordered[1:]))


def is_chain_graph(g: Graph) -> bool:
    """Bipartite and 2K₂-free, via the nested-neighbourhood test.

    Isolated vertices are ignored (they fit either class). The remaining
    edges must form one connected bipartite component whose neighbourhoods
    in each colour class form a chain under inclusion.
    """
    components = _nontrivial_components(g)
    if len(components) > 1:
        # One edge from each component is an induced 2K₂.
        return False
    colour = two_colouring(g)
    if colour is None:
        return False
    if not components:
        return True
    comp = components[0]
    sides = (
        [g.adjacency[v] for v in comp if colour[v] == 0],
        [g.adjacency[v] for v in comp if colour[v] == 1],
    )
    return all(_is_nested(side) for side in sides)


def is_half_graph(g: Graph) -> bool:
    spec = recover_spec(g)
    return spec is not None and spec.is_half_graph and spec.n == g.n


def recover_spec(g: Graph) -> ChainGraphSpec | None:
    """Cell partition of a connected chain graph without isolated vertices.

    Duplicate vertices (equal neighbourhoods) are collapsed into cells; the
    U class is taken from the labels when they are a proper bipartition,
    otherwise from the colouring with vertex 0 in U.
    """
    if g.n < 2 or any(not nbrs for nbrs in g.adjacency) or not is_chain_graph(g):
        return None
    if len(_nontrivial_components(g)) != 1:
        return None
    if g.is_labelled_bipartite and g.class_indices("U") and g.class_indices("V"):
        us, vs = g.class_indices("U"), g.class_indices("V")
    else:
        colour = two_colouring(g)
        us = tuple(v for v in range(g.n) if colour[v] == colour[0])
        vs = tuple(v for v in range(g.n) if colour[v] != colour[0])

    def cell_sizes(side: tuple[int, ...]) -> list[int]:
        by_degree: dict[int, int] = {}
        for v in side:
            by_degree[g.degree(v)] = by_degree.get(g.degree(v), 0) + 1
        return [by_degree[d] for d in sorted(by_degree, reverse=True)]

    u_sizes, v_sizes = cell_sizes(us), cell_sizes(vs)
    if len(u_sizes) != len(v_sizes):
        return None
    return ChainGraphSpec(k=len(u_sizes), u_sizes=tuple(u_sizes), v_sizes=tuple(v_sizes))


def has_dominating_vertices(g: Graph) -> bool:
    """Dominating-vertex characterization of chain graphs.

    Every induced subgraph without isolated vertices must have, in each
    colour class, a vertex adjacent to the whole other class. It suffices
    to peel a dominating vertex of the current graph repeatedly: the
    remaining graph (minus newly isolated vertices) must keep one.
    """
    colour = two_colouring(g)
    if colour is None:
        return False
    alive = {v for v in range(g.n) if g.adjacency[v]}
    while alive:
        sides = [{v for v in alive if colour[v] == c} for c in (0, 1)]
        if not sides[0] or not sides[1]:
            return False
        dominators = []
        for c in (0, 1):
            other = sides[1 - c]
            found = next((v for v in sorted(sides[c]) if other <= g.adjacency[v]), None)
            if found is None:
                return False
            dominators.append(found)
        alive.discard(dominators[0])
        alive = {v for v in alive if g.adjacency[v] & alive}
    return True


def find_induced_2k2(g: Graph) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Brute force: two edges whose four endpoints induce exactly those two edges."""
    h = g.to_networkx()
    for (a, b), (c, d) in combinations(list(g.edges()), 2):
        quad = {a, b, c, d}
        if len(quad) == 4 and h.subgraph(quad).number_of_edges() == 2:
            return (a, b), (c, d)
    return None


def find_induced_p5(g: Graph) -> tuple[int, ...] | None:
    """Brute force over 5-vertex subsets for an induced path."""
    h = g.to_networkx()
    for subset in combinations(range(g.n), 5):
        sub = h.subgraph(subset)
        if sub.number_of_edges() != 4 or not nx.is_connected(sub):
            continue
        if max(d for _, d in sub.degree()) > 2:
            continue
        start = min(v for v, d in sub.degree() if d == 1)
        return tuple(nx.dfs_preorder_nodes(sub, start))
    return None


# ── Vertex deletion / duplication ────────────────────────────────────────────


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex id {v} out of range 0..{g.n - 1}")


def delete_vertex(g: Graph, v: int) -> Graph:
    """Induced subgraph ``G − v``; other vertices keep their labels and order."""
    _check_vertex(g, v)
    keep = [w for w in range(g.n) if w != v]
    remap = {old: new for new, old in enumerate(keep)}
    adjacency = tuple(
        frozenset(remap[x] for x in g.adjacency[w] if x != v) for w in keep
    )
    return Graph(tuple(g.labels[w] for w in keep), adjacency)


def add_duplicate(g: Graph, v: int) -> tuple[Graph, int]:
    """Add a vertex with ``N(new) = N(v)``; returns the graph and the new id.

    The new vertex is placed right after the last vertex of v's cell (or
    right after v for unlabelled cells), so the vertex order convention
    survives. Its name takes the next free position in v's class.
    """
    _check_vertex(g, v)
    base = g.labels[v]
    same_cell = [
        w for w in range(g.n)
        if g.labels[w].vclass is base.vclass and base.cell is not None
        and g.labels[w].cell == base.cell
    ]
    insert_at = (max(same_cell) if same_cell else v) + 1
    next_position = 1 + max(
        label.position for label in g.labels if label.vclass is base.vclass
    )
    next_index = None
    if base.cell is not None:
        next_index = 1 + max(g.labels[w].index or 0 for w in same_cell)
    new_label = VertexLabel(base.vclass, next_position, base.cell, next_index)

    def shift(w: int) -> int:
        return w + 1 if w >= insert_at else w

    adjacency = [frozenset(shift(x) for x in nbrs) for nbrs in g.adjacency]
    twin_nbrs = frozenset(shift(x) for x in g.adjacency[v])
    adjacency.insert(insert_at, twin_nbrs)
    for x in twin_nbrs:
        adjacency[x] = adjacency[x] | {insert_at}
    labels = list(g.labels)
    labels.insert(insert_at, new_label)

    spec = None
    if g.spec is not None and base.cell is not None:
        sizes = list(g.spec.u_sizes if base.vclass is VertexClass.U else g.spec.v_sizes)
        sizes[base.cell - 1] += 1
        spec = g.spec.model_copy(
            update={"u_sizes" if base.vclass is VertexClass.U else "v_sizes": tuple(sizes)}
        )
    return Graph(tuple(labels), tuple(adjacency), spec=spec), insert_at


# ── Enumeration ──────────────────────────────────────────────────────────────


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` positive parts, lexicographic."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def specs_with_total(n: int) -> Iterator[ChainGraphSpec]:
    """All specs on exactly n vertices in enumeration order."""
    for k in range(1, n // 2 + 1):
        specs = [
            ChainGraphSpec(k=k, u_sizes=u, v_sizes=v)
            for u_total in range(k, n - k + 1)
            for u in compositions(u_total, k)
            for v in compositions(n - u_total, k)
        ]
        yield from sorted(specs, key=ChainGraphSpec.sort_key)


def enumerate_chain_specs(max_n: int, *, half_graphs_only: bool = False) -> Iterator[ChainGraphSpec]:
    """Every spec with at most ``max_n`` vertices, each exactly once.

    Ordered by total n, then k, then u_sizes, then v_sizes. Colour classes
    are distinguished, so a spec and its swap are both emitted.
    """
    if max_n < 2:
        raise ValueError("max_n must be ≥ 2")
    for n in range(2, max_n + 1):
        if half_graphs_only:
            if n % 2 == 0:
                yield HalfGraphId(k=n // 2).to_spec()
            continue
        yield from specs_with_total(n)
