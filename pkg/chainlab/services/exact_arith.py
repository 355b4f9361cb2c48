"""Exact arithmetic over ℚ and ℚ(√5), plus exact rank / kernel computations.

Rationals are :class:`fractions.Fraction` (arbitrary precision, always in
lowest terms with a positive denominator). A :class:`QuadraticNumber`
``a + b√5`` is a pair of rationals; since √5 is irrational the pair is a
unique representation, so structural equality is field equality.

Elimination works on rows rescaled into ℤ[√5] (integer pairs) and uses a
fraction-free (Bareiss) update, which keeps every intermediate entry an
exact minor of the input. Row rescaling never changes rank or kernel.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from chainlab.services.graph_core import Graph

logger = logging.getLogger(__name__)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True, slots=True, eq=False)
class QuadraticNumber:
    """The element ``a + b·√5`` of ℚ(√5)."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _to_fraction(self.a))
        object.__setattr__(self, "b", _to_fraction(self.b))

    # ── construction ──────────────────────────────────────────────────

    @classmethod
    def coerce(cls, value) -> QuadraticNumber:
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"cannot use {type(value).__name__} as an element of Q(sqrt5)")

    @classmethod
    def from_wire(cls, data: dict) -> QuadraticNumber:
        """Inverse of :meth:`to_wire`."""
        (an, ad), (bn, bd) = data["a"], data["b"]
        return cls(Fraction(int(an), int(ad)), Fraction(int(bn), int(bd)))

    def to_wire(self) -> dict[str, list[int]]:
        return {
            "a": [self.a.numerator, self.a.denominator],
            "b": [self.b.numerator, self.b.denominator],
        }

    # ── predicates / conversions ──────────────────────────────────────

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 5.0**0.5

    def norm(self) -> Fraction:
        """Field norm ``a² − 5b²``; zero only for zero."""
        return self.a * self.a - 5 * self.b * self.b

    # ── arithmetic ────────────────────────────────────────────────────

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self.a, -self.b)

    def __add__(self, other) -> QuadraticNumber:
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(self.a + other, self.b)
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return QuadraticNumber(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> QuadraticNumber:
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(self.a - other, self.b)
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return QuadraticNumber(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> QuadraticNumber:
        return (-self) + other

    def __mul__(self, other) -> QuadraticNumber:
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(self.a * other, self.b * other)
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        # (a+b√5)(c+d√5) = (ac+5bd) + (ad+bc)√5
        return QuadraticNumber(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
        return QuadraticNumber(self.a / n, -self.b / n)

    def __truediv__(self, other) -> QuadraticNumber:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt5)")
            return QuadraticNumber(self.a / other, self.b / other)
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> QuadraticNumber:
        return QuadraticNumber.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> QuadraticNumber:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # ── equality / ordering helpers ───────────────────────────────────

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        # Matches hash(int)/hash(Fraction) for rational values.
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of the real number ``a + b√5``."""
        if self.is_zero():
            return 0
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sb == 0 or sa == sb:
            return sa or sb
        # Opposite signs: compare a² with 5b².
        return sa if self.a * self.a > 5 * self.b * self.b else sb

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self == OMEGA:
            return "w"
        if self == -OMEGA:
            return "-w"
        b_part = "sqrt5" if self.b == 1 else "-sqrt5" if self.b == -1 else f"{self.b}*sqrt5"
        if self.a == 0:
            return b_part
        sep = "" if b_part.startswith("-") else "+"
        return f"{self.a}{sep}{b_part}"

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.a!s}, {self.b!s})"


ZERO = QuadraticNumber(0)
ONE = QuadraticNumber(1)
SQRT5 = QuadraticNumber(0, 1)
# Positive root of w² + w − 1 = 0, i.e. (√5 − 1)/2.
OMEGA = QuadraticNumber(Fraction(-1, 2), Fraction(1, 2))
# Golden ratio (1 + √5)/2 = 1/ω.
PHI = QuadraticNumber(Fraction(1, 2), Fraction(1, 2))


# ── ExactMatrix ─────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix over ℚ(√5)."""

    rows: int
    cols: int
    entries: tuple[tuple[QuadraticNumber, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("ExactMatrix dimensions must be positive")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("ExactMatrix entries do not match its dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        entries = tuple(tuple(QuadraticNumber.coerce(x) for x in row) for row in rows)
        return cls(len(entries), len(entries[0]) if entries else 0, entries)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def shift(self, lam) -> ExactMatrix:
        """``self − λ·I`` (square matrices only)."""
        if self.rows != self.cols:
            raise ValueError("shift requires a square matrix")
        lam = QuadraticNumber.coerce(lam)
        return ExactMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(x - lam if i == j else x for j, x in enumerate(row))
                for i, row in enumerate(self.entries)
            ),
        )

    def permute_rows(self, order: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(self.rows, self.cols, tuple(self.entries[i] for i in order))

    def scale_row(self, i: int, factor) -> ExactMatrix:
        factor = QuadraticNumber.coerce(factor)
        rows = list(self.entries)
        rows[i] = tuple(x * factor for x in rows[i])
        return ExactMatrix(self.rows, self.cols, tuple(rows))


# ── ℤ[√5] integer-pair kernel used by elimination ──────────────────────────

_IntPair = tuple[int, int]


def _row_to_int_pairs(row: Sequence[QuadraticNumber]) -> list[_IntPair]:
    dens = [x.a.denominator for x in row] + [x.b.denominator for x in row]
    scale = reduce(lcm, dens, 1)
    return [
        (int(x.a * scale), int(x.b * scale))
        for x in row
    ]


def _pmul(x: _IntPair, y: _IntPair) -> _IntPair:
    return (x[0] * y[0] + 5 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _pdiv_exact(x: _IntPair, y: _IntPair) -> _IntPair:
    if y == (1, 0):
        return x
    norm = y[0] * y[0] - 5 * y[1] * y[1]
    num = _pmul(x, (y[0], -y[1]))
    qa, ra = divmod(num[0], norm)
    qb, rb = divmod(num[1], norm)
    if ra or rb:
        raise ArithmeticError("fraction-free elimination produced an inexact division")
    return (qa, qb)


def _echelon(rows: list[list[_IntPair]], ncols: int) -> tuple[list[list[_IntPair]], list[int]]:
    """Fraction-free row echelon form; pivot = first nonzero entry in column order."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    prev: _IntPair = (1, 0)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != (0, 0)), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][c]
        top = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, ncols):
                pij = _pmul(p, row[j])
                if f != (0, 0) and top[j] != (0, 0):
                    fr = _pmul(f, top[j])
                    pij = (pij[0] - fr[0], pij[1] - fr[1])
                row[j] = _pdiv_exact(pij, prev)
            row[c] = (0, 0)
        prev = p
        pivots.append(c)
        r += 1
    return rows, pivots


def _pair_to_number(x: _IntPair) -> QuadraticNumber:
    return QuadraticNumber(x[0], x[1])


def exact_rank(m: ExactMatrix) -> int:
    """Rank over ℚ(√5)."""
    _, pivots = _echelon([_row_to_int_pairs(r) for r in m.entries], m.cols)
    logger.debug("exact rank of %dx%d matrix: %d", m.rows, m.cols, len(pivots))
    return len(pivots)


def exact_nullspace(m: ExactMatrix) -> list[tuple[QuadraticNumber, ...]]:
    """Basis of the right kernel, one vector per free column (in column order)."""
    echelon, pivots = _echelon([_row_to_int_pairs(r) for r in m.entries], m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in (c for c in range(m.cols) if c not in pivot_set):
        x = [ZERO] * m.cols
        x[free] = ONE
        for t in reversed(range(len(pivots))):
            c = pivots[t]
            row = echelon[t]
            acc = ZERO
            for j in range(c + 1, m.cols):
                if row[j] != (0, 0) and x[j]:
                    acc = acc + _pair_to_number(row[j]) * x[j]
            x[c] = -acc / _pair_to_number(row[c])
        basis.append(tuple(x))
    return basis


def normalize_exact(x: Sequence[QuadraticNumber]) -> tuple[QuadraticNumber, ...]:
    """Scale so the first nonzero entry is 1."""
    lead = next((v for v in x if v), None)
    if lead is None:
        return tuple(x)
    return tuple(v / lead for v in x)


# ── Graph-level exact spectra ───────────────────────────────────────────────


def adjacency_exact(g: Graph) -> ExactMatrix:
    return ExactMatrix.from_rows(
        [[1 if j in g.adjacency[i] else 0 for j in range(g.n)] for i in range(g.n)]
    )


def _gram_shift(g: Graph, lam2: QuadraticNumber) -> ExactMatrix:
    """``BᵀB − λ²I`` for the U×V block B of a labelled-bipartite graph."""
    vs = g.class_indices("V")
    gram = [[len(g.adjacency[v] & g.adjacency[w]) for w in vs] for v in vs]
    return ExactMatrix.from_rows(gram).shift(lam2)


def exact_multiplicity(g: Graph, lam) -> int:
    """``mul(λ, g) = n − rank(A(g) − λI)``, computed over ℚ(√5).

    For λ ≠ 0 on a graph whose labelled classes carry every edge, the
    Schur complement of the ``−λI`` U-block gives the same number from the
    smaller matrix ``BᵀB − λ²I``: ``mul = |V| − rank(BᵀB − λ²I)``.
    """
    lam = QuadraticNumber.coerce(lam)
    if g.n == 0:
        return 0
    if lam and g.is_labelled_bipartite:
        vs = g.class_indices("V")
        if not vs or len(vs) == g.n:
            return 0
        return len(vs) - exact_rank(_gram_shift(g, lam * lam))
    return g.n - exact_rank(adjacency_exact(g).shift(lam))


def exact_eigenspace(g: Graph, lam) -> list[tuple[QuadraticNumber, ...]]:
    """Kernel basis of ``A(g) − λI`` (empty when λ is not an eigenvalue)."""
    return exact_nullspace(adjacency_exact(g).shift(QuadraticNumber.coerce(lam)))


def exact_eigenvector(g: Graph, lam) -> tuple[QuadraticNumber, ...] | None:
    """The eigenvector for a simple eigenvalue, first nonzero entry scaled to 1.

    Returns ``None`` when λ is not an eigenvalue or is not simple.
    """
    lam = QuadraticNumber.coerce(lam)
    if lam and g.is_labelled_bipartite and g.class_indices("V") and g.class_indices("U"):
        # Solve on the V side (BᵀB y = λ² y) then lift: x_U = B y / λ.
        us, vs = g.class_indices("U"), g.class_indices("V")
        kernel = exact_nullspace(_gram_shift(g, lam * lam))
        if len(kernel) != 1:
            return None
        y = dict(zip(vs, kernel[0]))
        x = [ZERO] * g.n
        for v, value in y.items():
            x[v] = value
        for u in us:
            acc = ZERO
            for w in g.adjacency[u]:
                acc = acc + y[w]
            x[u] = acc / lam
        return normalize_exact(x)
    basis = exact_eigenspace(g, lam)
    if len(basis) != 1:
        return None
    return normalize_exact(basis[0])
