"""Sum rule and the explicit half-graph eigenvector families.

Two periodic patterns give eigenvectors ``(x, x)`` of ``H(k)`` with a
zero entry in every period, hence vertices that are not downer:

* period 6, entries ``(1, 0, −1, −1, 0, 1)``: eigenvalue 1 for k ≡ 1 (mod 6)
  and −1 for k ≡ 4 (mod 6);
* period 10, entries ``(ω, −1, 0, 1, −ω, −ω, 1, 0, −1, ω)``: eigenvalue ω
  for k ≡ 7 (mod 10) and −ω for k ≡ 2 (mod 10).

Both rest on prefix-sum identities of the pattern (the "tables"), which
:func:`pattern_table` recomputes exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Sequence

import numpy as np

from chainlab.models.verify import PatternTableRow, SumRuleResidual
from chainlab.services.exact_arith import OMEGA, ONE, ZERO, QuadraticNumber
from chainlab.services.graph_core import Graph, add_duplicate

logger = logging.getLogger(__name__)


class Family(StrEnum):
    PERIOD6 = "period6"
    PERIOD10 = "period10"


class SignLayout(StrEnum):
    SAME = "same"  # (x, x)
    FLIPPED = "flipped"  # (x, −x)


PERIOD6_ENTRIES: tuple[QuadraticNumber, ...] = tuple(
    QuadraticNumber(a) for a in (1, 0, -1, -1, 0, 1)
)
PERIOD10_ENTRIES: tuple[QuadraticNumber, ...] = (
    OMEGA, -ONE, ZERO, ONE, -OMEGA, -OMEGA, ONE, ZERO, -ONE, OMEGA,
)

# family -> (entries, {k mod period: eigenvalue}, (upper index offsets), (table multipliers))
_FAMILIES = {
    Family.PERIOD6: (
        PERIOD6_ENTRIES,
        {1: ONE, 4: -ONE},
        (5, 2),
        (-ONE, ONE),
    ),
    Family.PERIOD10: (
        PERIOD10_ENTRIES,
        {7: OMEGA, 2: -OMEGA},
        (8, 3),
        (OMEGA, -OMEGA),
    ),
}


@dataclass(frozen=True)
class PatternVector:
    """Pattern x assigned to both colour classes of ``H(k)``."""

    family: Family
    k: int
    entries: tuple[QuadraticNumber, ...]
    eigenvalue: QuadraticNumber
    sign_layout: SignLayout = SignLayout.SAME

    def full_vector(self) -> tuple[QuadraticNumber, ...]:
        """Vector on H(k) in canonical order: U entries, then V entries."""
        if self.sign_layout is SignLayout.SAME:
            return self.entries + self.entries
        return self.entries + tuple(-x for x in self.entries)

    def zero_positions(self) -> list[int]:
        """1-based positions i with x_i = 0."""
        return [i for i, x in enumerate(self.entries, start=1) if x.is_zero()]


@dataclass(frozen=True)
class PatternRefusal:
    family: Family
    k: int
    reason: str


# ── Sum rule ─────────────────────────────────────────────────────────────────


def _is_exact(value) -> bool:
    return isinstance(value, (QuadraticNumber, int, Fraction)) and not isinstance(value, bool)


def sum_rule_residual(g: Graph, x: Sequence, lam) -> SumRuleResidual:
    """Residual of ``λ·x(v) − Σ_{u∼v} x(u)`` over all vertices.

    Exact mode (x and λ over ℚ(√5) or ints) decides the zero test exactly;
    otherwise the residual is measured in floating point.
    """
    if len(x) != g.n:
        raise ValueError(f"vector has length {len(x)}, graph has {g.n} vertices")
    if _is_exact(lam) and all(_is_exact(v) for v in x):
        lam_q = QuadraticNumber.coerce(lam)
        xs = [QuadraticNumber.coerce(v) for v in x]
        worst, worst_abs, all_zero = None, 0.0, True
        for v in range(g.n):
            acc = ZERO
            for u in g.adjacency[v]:
                acc = acc + xs[u]
            r = lam_q * xs[v] - acc
            if not r.is_zero():
                all_zero = False
                if worst is None or abs(float(r)) > worst_abs:
                    worst, worst_abs = v, abs(float(r))
        return SumRuleResidual(exact=True, is_zero=all_zero, max_abs=worst_abs, worst_vertex=worst)

    xs = np.array([float(v) for v in x])
    adj = g.adjacency_matrix()
    residual = float(lam) * xs - adj @ xs if g.n else np.zeros(0)
    if residual.size == 0:
        return SumRuleResidual(exact=False, max_abs=0.0)
    worst = int(np.argmax(np.abs(residual)))
    return SumRuleResidual(
        exact=False, max_abs=float(np.abs(residual[worst])), worst_vertex=worst
    )


# ── Pattern families ─────────────────────────────────────────────────────────


def _pattern_vector(family: Family, k: int) -> PatternVector | PatternRefusal:
    if k < 1:
        raise ValueError("k must be ≥ 1")
    entries, eigenvalues, _, _ = _FAMILIES[family]
    period = len(entries)
    residue = k % period
    if residue not in eigenvalues:
        wanted = " or ".join(f"k ≡ {r} (mod {period})" for r in sorted(eigenvalues))
        return PatternRefusal(family, k, f"{wanted} required, got k ≡ {residue} (mod {period})")
    x = tuple(entries[(i - 1) % period] for i in range(1, k + 1))
    return PatternVector(family, k, x, eigenvalues[residue])


def period6_vector(k: int) -> PatternVector | PatternRefusal:
    """x_i = a_s for i ≡ s (mod 6); eigenvalue 1 if k ≡ 1, −1 if k ≡ 4 (mod 6)."""
    return _pattern_vector(Family.PERIOD6, k)


def period10_vector(k: int) -> PatternVector | PatternRefusal:
    """x_i = b_s for i ≡ s (mod 10); eigenvalue ω if k ≡ 7, −ω if k ≡ 2 (mod 10)."""
    return _pattern_vector(Family.PERIOD10, k)


def pattern_vector(family: Family, k: int) -> PatternVector | PatternRefusal:
    return _pattern_vector(family, k)


def negate_classes(p: PatternVector) -> PatternVector:
    """Negate one colour class; the eigenvalue changes sign.

    ``(x, x)`` for λ becomes ``(x, −x)`` for −λ. Applied to ``(x, −x)`` it
    negates the U side, giving ``(−x, −x)`` for λ again, stored as SAME
    with entries −x.
    """
    if p.sign_layout is SignLayout.SAME:
        return PatternVector(p.family, p.k, p.entries, -p.eigenvalue, SignLayout.FLIPPED)
    return PatternVector(
        p.family, p.k, tuple(-x for x in p.entries), -p.eigenvalue, SignLayout.SAME
    )


# ── Tables ───────────────────────────────────────────────────────────────────


def _reduce_index(i: int, period: int) -> int:
    """Index reduced mod period into {1, …, period}."""
    return (i - 1) % period + 1


def pattern_table(family: Family) -> list[PatternTableRow]:
    """Recompute the prefix-sum table of a pattern family exactly.

    Row s holds ``Σ_{i=1}^{o₁−s} p_i`` and ``Σ_{i=1}^{o₂−s} p_i`` with the
    upper indices reduced mod the period into {1, …, period}.
    """
    entries, _, (off1, off2), (mul1, mul2) = _FAMILIES[family]
    period = len(entries)
    prefix = [ZERO]
    for value in entries:
        prefix.append(prefix[-1] + value)
    rows = []
    for s in range(1, period + 1):
        upper1, upper2 = _reduce_index(off1 - s, period), _reduce_index(off2 - s, period)
        value = entries[s - 1]
        rows.append(
            PatternTableRow(
                s=s,
                value=value,
                upper1=upper1,
                sum1=prefix[upper1],
                upper2=upper2,
                sum2=prefix[upper2],
                expected1=mul1 * value,
                expected2=mul2 * value,
            )
        )
    return rows


def table_fixture_check(family: Family) -> bool:
    """All rows satisfy their identity and the period sums to zero."""
    entries = _FAMILIES[family][0]
    period_sum = ZERO
    for value in entries:
        period_sum = period_sum + value
    rows = pattern_table(family)
    ok = period_sum.is_zero() and all(row.holds for row in rows)
    if not ok:
        logger.error("%s table identities fail", family)
    return ok


# ── Duplicate extension ──────────────────────────────────────────────────────


def extend_by_duplicate(
    g: Graph, x: Sequence[QuadraticNumber], v: int
) -> tuple[Graph, tuple[QuadraticNumber, ...]]:
    """Add a duplicate of v and give it a zero entry.

    If x is an eigenvector with x(v) = 0, the extended vector is an
    eigenvector of the extended graph for the same eigenvalue.
    """
    if len(x) != g.n:
        raise ValueError(f"vector has length {len(x)}, graph has {g.n} vertices")
    bigger, new_id = add_duplicate(g, v)
    extended = list(x)
    extended.insert(new_id, ZERO)
    return bigger, tuple(QuadraticNumber.coerce(value) for value in extended)
