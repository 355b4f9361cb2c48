"""Tests for chain-graph construction, recognition, deletion, duplication and enumeration."""

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from chainlab.models.graph import ChainGraphSpec, HalfGraphId
from chainlab.services.graph_core import (
    add_duplicate,
    build_chain_graph,
    delete_vertex,
    enumerate_chain_specs,
    find_induced_2k2,
    find_induced_p5,
    graph_from_edges,
    half_graph,
    has_dominating_vertices,
    is_chain_graph,
    is_half_graph,
    recover_spec,
    specs_with_total,
    two_colouring,
)


def path_graph(n: int):
    u_class = list(range((n + 1) // 2))
    # Alternate U and V along the path: U ids first, then V ids.
    order = []
    us, vs = iter(u_class), iter(range(len(u_class), n))
    for i in range(n):
        order.append(next(us) if i % 2 == 0 else next(vs))
    edges = [(order[i], order[i + 1]) for i in range(n - 1)]
    return graph_from_edges(n, u_class, edges)


# ── Specs ────────────────────────────────────────────────────────────────────


class TestChainGraphSpec:
    def test_k_must_be_positive(self):
        with pytest.raises(ValidationError, match="k must be ≥ 1"):
            ChainGraphSpec(k=0, u_sizes=(), v_sizes=())

    def test_cell_sizes_positive(self):
        with pytest.raises(ValidationError, match="cell size"):
            ChainGraphSpec(k=1, u_sizes=(0,), v_sizes=(1,))

    def test_lengths_match_k(self):
        with pytest.raises(ValidationError, match="u_sizes"):
            ChainGraphSpec(k=2, u_sizes=(1,), v_sizes=(1, 1))

    def test_half_graph_id(self):
        with pytest.raises(ValidationError):
            HalfGraphId(k=0)
        assert HalfGraphId(k=3).to_spec().label() == "H(3)"

    def test_label(self):
        spec = ChainGraphSpec(k=2, u_sizes=(1, 2), v_sizes=(2, 1))
        assert spec.label() == "k=2:u=1,2:v=2,1"
        assert spec.n == 6
        assert not spec.is_half_graph


# ── Construction ─────────────────────────────────────────────────────────────


class TestBuild:
    def test_half_graph_adjacency(self):
        g = half_graph(3)
        assert g.names() == ["u1", "u2", "u3", "v1", "v2", "v3"]
        u1, u2, u3 = 0, 1, 2
        assert {g.name(w) for w in g.adjacency[u1]} == {"v1", "v2", "v3"}
        assert {g.name(w) for w in g.adjacency[u2]} == {"v1", "v2"}
        assert {g.name(w) for w in g.adjacency[u3]} == {"v1"}
        assert g.edge_count == 6

    def test_cells_and_degrees(self):
        g = build_chain_graph(ChainGraphSpec(k=2, u_sizes=(1, 2), v_sizes=(2, 1)))
        assert g.n == 6
        # u1 ∈ U₁ sees V₁ ∪ V₂; U₂ vertices see V₁ only.
        assert g.degrees() == (3, 2, 2, 3, 3, 1)
        assert [label.cell for label in g.labels] == [1, 2, 2, 1, 1, 2]

    def test_c4(self, c4):
        assert c4.edge_count == 4
        assert all(d == 2 for d in c4.degrees())

    def test_half_graph_rejects_zero(self):
        with pytest.raises(ValidationError):
            half_graph(0)

    def test_adjacency_matrix_symmetric(self, h7):
        a = h7.adjacency_matrix()
        assert (a == a.T).all()
        assert a.sum() == 2 * h7.edge_count


# ── Recognition ──────────────────────────────────────────────────────────────


class TestRecognition:
    def test_every_built_graph_is_chain(self):
        for spec in enumerate_chain_specs(8):
            g = build_chain_graph(spec)
            assert is_chain_graph(g), spec.label()
            assert has_dominating_vertices(g), spec.label()
            assert find_induced_2k2(g) is None
            assert find_induced_p5(g) is None

    def test_p5_is_not_chain(self):
        g = path_graph(5)
        assert not is_chain_graph(g)
        assert find_induced_2k2(g) is not None
        assert find_induced_p5(g) is not None
        assert not has_dominating_vertices(g)

    def test_p4_is_chain(self):
        assert is_chain_graph(path_graph(4))

    def test_triangle_is_not_chain(self):
        g = graph_from_edges(3, [0], [(0, 1), (1, 2), (0, 2)])
        assert two_colouring(g) is None
        assert not is_chain_graph(g)

    def test_two_disjoint_edges(self):
        g = graph_from_edges(4, [0, 1], [(0, 2), (1, 3)])
        assert not is_chain_graph(g)
        assert find_induced_2k2(g) == ((0, 2), (1, 3))

    def test_isolated_vertices_ignored(self):
        g = graph_from_edges(3, [0], [(0, 1)])
        assert is_chain_graph(g)
        assert recover_spec(g) is None

    def test_recover_spec(self):
        spec = ChainGraphSpec(k=2, u_sizes=(1, 2), v_sizes=(2, 1))
        g = build_chain_graph(spec)
        rebuilt = graph_from_edges(g.n, list(g.class_indices("U")), list(g.edges()))
        assert rebuilt.spec == spec
        assert rebuilt.display_name == "k=2:u=1,2:v=2,1"

    def test_recover_spec_out_of_cell_order(self):
        g = graph_from_edges(4, [0, 1], [(0, 2), (1, 2), (1, 3)])
        assert g.spec is None
        assert recover_spec(g) == ChainGraphSpec(k=2, u_sizes=(1, 1), v_sizes=(1, 1))
        assert is_half_graph(g)

    def test_colouring_matches_networkx(self, h7):
        colour = two_colouring(h7)
        assert nx.is_bipartite(h7.to_networkx())
        assert colour == [0] * 7 + [1] * 7
        odd = graph_from_edges(5, [0, 1], [(0, 2), (2, 1), (1, 3), (3, 4), (4, 0)])
        assert two_colouring(odd) is None

    def test_p5_witness_is_a_path(self):
        g = path_graph(5)
        witness = find_induced_p5(g)
        assert sorted(witness) == list(range(5))
        assert all(b in g.adjacency[a] for a, b in zip(witness, witness[1:]))

    def test_is_half_graph(self, h7, c4):
        assert is_half_graph(h7)
        assert not is_half_graph(c4)

    @settings(max_examples=150)
    @given(st.sets(st.tuples(st.integers(0, 2), st.integers(3, 6))))
    def test_characterizations_agree(self, edges):
        g = graph_from_edges(7, [0, 1, 2], sorted(edges))
        expected = find_induced_2k2(g) is None
        assert is_chain_graph(g) == expected
        assert has_dominating_vertices(g) == expected


# ── Deletion / duplication ───────────────────────────────────────────────────


class TestDeleteVertex:
    def test_delete_keeps_labels(self, h7):
        child = delete_vertex(h7, 0)
        assert child.n == 13
        assert child.names()[0] == "u2"
        assert child.spec is None
        assert h7.n == 14

    def test_out_of_range(self, h7):
        with pytest.raises(IndexError):
            delete_vertex(h7, 14)
        with pytest.raises(IndexError):
            delete_vertex(h7, -1)


class TestAddDuplicate:
    def test_duplicate_in_cell(self):
        g = half_graph(3)
        bigger, new_id = add_duplicate(g, 1)
        assert new_id == 2
        assert bigger.n == 7
        assert bigger.adjacency[new_id] == bigger.adjacency[1]
        assert bigger.name(new_id) == "u4"
        assert bigger.spec == ChainGraphSpec(k=3, u_sizes=(1, 2, 1), v_sizes=(1, 1, 1))
        assert is_chain_graph(bigger)

    def test_duplicate_matches_built_graph(self):
        bigger, _ = add_duplicate(half_graph(3), 1)
        built = build_chain_graph(bigger.spec)
        assert built.adjacency == bigger.adjacency

    def test_duplicate_v_side(self):
        g = half_graph(2)
        bigger, new_id = add_duplicate(g, 3)
        assert bigger.name(new_id) == "v3"
        assert bigger.spec == ChainGraphSpec(k=2, u_sizes=(1, 1), v_sizes=(1, 2))

    def test_out_of_range(self, k2):
        with pytest.raises(IndexError):
            add_duplicate(k2, 5)


# ── Enumeration ──────────────────────────────────────────────────────────────


class TestEnumeration:
    def test_small_order(self):
        labels = [spec.label() for spec in enumerate_chain_specs(4)]
        assert labels == [
            "H(1)",
            "k=1:u=1:v=2",
            "k=1:u=2:v=1",
            "k=1:u=1:v=3",
            "k=1:u=2:v=2",
            "k=1:u=3:v=1",
            "H(2)",
        ]

    @pytest.mark.parametrize("n", range(2, 11))
    def test_count_per_total(self, n):
        specs = list(specs_with_total(n))
        assert len(specs) == 2 ** (n - 2)
        assert len(set(specs)) == len(specs)
        assert all(spec.n == n for spec in specs)

    def test_order_is_sorted(self):
        specs = list(enumerate_chain_specs(9))
        assert specs == sorted(specs, key=ChainGraphSpec.sort_key)

    def test_half_graphs_only(self):
        labels = [s.label() for s in enumerate_chain_specs(9, half_graphs_only=True)]
        assert labels == ["H(1)", "H(2)", "H(3)", "H(4)"]

    def test_max_n_too_small(self):
        with pytest.raises(ValueError):
            list(enumerate_chain_specs(1))
