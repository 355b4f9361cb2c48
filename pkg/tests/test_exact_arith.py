"""Tests for ℚ(√5) arithmetic, exact rank/kernel and exact multiplicities."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainlab.models.graph import ChainGraphSpec
from chainlab.services.exact_arith import (
    OMEGA,
    ONE,
    PHI,
    SQRT5,
    ZERO,
    ExactMatrix,
    QuadraticNumber,
    adjacency_exact,
    exact_eigenvector,
    exact_multiplicity,
    exact_nullspace,
    exact_rank,
    normalize_exact,
)
from chainlab.services.graph_core import build_chain_graph, enumerate_chain_specs, half_graph
from chainlab.services.theorems import period6_vector, period10_vector

small = st.integers(min_value=-6, max_value=6)
quadratics = st.builds(QuadraticNumber, small, small)
nonzero_quadratics = quadratics.filter(bool)


@st.composite
def matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    entries = draw(st.lists(st.lists(quadratics, min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return ExactMatrix.from_rows(entries)


# ── Field ────────────────────────────────────────────────────────────────────


class TestQuadraticNumber:
    def test_omega_squared(self):
        assert OMEGA * OMEGA == ONE - OMEGA

    def test_omega_defining_relation(self):
        assert (OMEGA * OMEGA + OMEGA - 1).is_zero()

    def test_minus_omega_does_not_satisfy_relation(self):
        w = -OMEGA
        assert not (w * w + w - 1).is_zero()

    def test_additive_inverse(self):
        assert (OMEGA + (-OMEGA)).is_zero()

    def test_golden_ratio_times_omega_is_one(self):
        assert PHI * OMEGA == 1

    def test_product_formula(self):
        x = QuadraticNumber(2, 3)
        y = QuadraticNumber(Fraction(1, 2), -1)
        # (ac + 5bd) + (ad + bc)√5
        assert x * y == QuadraticNumber(1 - 15, -2 + Fraction(3, 2))

    def test_canonical_fractions(self):
        x = QuadraticNumber(Fraction(2, 4), Fraction(-3, 6))
        assert x.a == Fraction(1, 2) and x.a.denominator == 2
        assert x.b == Fraction(-1, 2)

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            ZERO.inverse()

    def test_division_by_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            OMEGA / 0

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            QuadraticNumber.coerce(0.5)

    def test_equality_with_rationals(self):
        assert QuadraticNumber(3) == 3
        assert QuadraticNumber(Fraction(1, 3)) == Fraction(1, 3)
        assert SQRT5 != 0
        assert hash(QuadraticNumber(3)) == hash(3)

    def test_sign(self):
        assert OMEGA.sign() == 1
        assert (-OMEGA).sign() == -1
        assert QuadraticNumber(-3, 1).sign() == -1  # -3 + 2.236…
        assert QuadraticNumber(3, -1).sign() == 1
        assert ZERO.sign() == 0

    def test_float_value(self):
        assert float(OMEGA) == pytest.approx(0.6180339887498949)

    def test_str(self):
        assert str(OMEGA) == "w"
        assert str(-OMEGA) == "-w"
        assert str(QuadraticNumber(-1)) == "-1"
        assert str(SQRT5) == "sqrt5"

    def test_wire_form(self):
        assert OMEGA.to_wire() == {"a": [-1, 2], "b": [1, 2]}
        assert QuadraticNumber.from_wire(OMEGA.to_wire()) == OMEGA

    def test_power(self):
        assert OMEGA**2 == 1 - OMEGA
        assert OMEGA**-1 == PHI
        assert OMEGA**0 == 1

    @given(nonzero_quadratics, quadratics)
    def test_multiply_then_divide(self, x, y):
        assert (x * y) * x.inverse() == y

    @given(quadratics, quadratics, quadratics)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(quadratics, quadratics)
    def test_commutative(self, x, y):
        assert x + y == y + x
        assert x * y == y * x


# ── Rank and kernel ──────────────────────────────────────────────────────────


class TestExactRank:
    def test_identity(self):
        assert exact_rank(ExactMatrix.identity(2)) == 2

    def test_all_ones(self):
        assert exact_rank(ExactMatrix.from_rows([[1, 1], [1, 1]])) == 1

    def test_p4_minus_omega(self, p4):
        assert exact_rank(adjacency_exact(p4).shift(OMEGA)) == 3

    def test_irrational_dependency(self):
        m = ExactMatrix.from_rows([[ONE, PHI], [OMEGA, ONE]])
        # Second row is ω times the first.
        assert exact_rank(m) == 1

    def test_empty_dimensions_rejected(self):
        with pytest.raises(ValueError):
            ExactMatrix(0, 0, ())

    @settings(max_examples=60)
    @given(matrices(), st.randoms(use_true_random=False))
    def test_rank_invariant_under_row_permutation(self, m, rnd):
        order = list(range(m.rows))
        rnd.shuffle(order)
        assert exact_rank(m.permute_rows(order)) == exact_rank(m)

    @settings(max_examples=60)
    @given(matrices(), nonzero_quadratics, st.data())
    def test_rank_invariant_under_row_scaling(self, m, factor, data):
        i = data.draw(st.integers(min_value=0, max_value=m.rows - 1))
        assert exact_rank(m.scale_row(i, factor)) == exact_rank(m)

    @settings(max_examples=60)
    @given(matrices())
    def test_rank_nullity(self, m):
        kernel = exact_nullspace(m)
        assert exact_rank(m) + len(kernel) == m.cols
        for x in kernel:
            for row in m.entries:
                acc = ZERO
                for a, b in zip(row, x):
                    acc = acc + a * b
                assert acc.is_zero()


# ── Graph multiplicities ─────────────────────────────────────────────────────


class TestExactMultiplicity:
    def test_c4_zero(self, c4):
        assert exact_multiplicity(c4, 0) == 2

    def test_h7_one(self, h7):
        assert exact_multiplicity(h7, 1) == 1

    def test_h7_half_is_not_an_eigenvalue(self, h7):
        assert exact_multiplicity(h7, Fraction(1, 2)) == 0

    def test_p4_omega_values(self, p4):
        assert exact_multiplicity(p4, OMEGA) == 1
        assert exact_multiplicity(p4, -OMEGA) == 1
        assert exact_multiplicity(p4, PHI) == 1
        assert exact_multiplicity(p4, 1) == 0

    def test_bipartite_reduction_matches_full_rank(self):
        for spec in enumerate_chain_specs(7):
            g = build_chain_graph(spec)
            for lam in (ONE, -ONE, OMEGA, -OMEGA, QuadraticNumber(2)):
                full = g.n - exact_rank(adjacency_exact(g).shift(lam))
                assert exact_multiplicity(g, lam) == full, (spec.label(), str(lam))

    def test_zero_multiplicity_is_n_minus_2k(self):
        for spec in enumerate_chain_specs(8):
            g = build_chain_graph(spec)
            assert exact_multiplicity(g, 0) == spec.n - 2 * spec.k


class TestExactEigenvector:
    def test_h7_one_is_period6_pattern(self, h7):
        p = period6_vector(7)
        assert exact_eigenvector(h7, 1) == p.full_vector()

    def test_p4_minus_omega(self, p4):
        p = period10_vector(2)
        assert exact_eigenvector(p4, -OMEGA) == normalize_exact(p.full_vector())

    def test_not_an_eigenvalue(self, h7):
        assert exact_eigenvector(h7, 2) is None

    def test_repeated_eigenvalue(self, c4):
        assert exact_eigenvector(c4, 0) is None

    def test_h12_minus_omega_zeros(self):
        x = exact_eigenvector(half_graph(12), -OMEGA)
        zeros = [i % 12 + 1 for i, v in enumerate(x) if v.is_zero()]
        assert zeros == [3, 8, 3, 8]


class TestSpecFixtures:
    def test_c4_spec(self):
        spec = ChainGraphSpec(k=1, u_sizes=(2,), v_sizes=(2,))
        assert exact_multiplicity(build_chain_graph(spec), 2) == 1
