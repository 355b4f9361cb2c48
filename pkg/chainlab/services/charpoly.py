"""Integer characteristic polynomials (Faddeev–LeVerrier) used as a desk oracle."""

from __future__ import annotations

import numpy as np

from chainlab.services.graph_core import Graph


def characteristic_polynomial(g: Graph) -> list[int]:
    """Coefficients ``[1, c₁, …, c_n]`` of ``det(λI − A(g))``, highest degree first.

    Faddeev–LeVerrier on Python integers: ``M₁ = I``, ``c_k = −tr(A M_k)/k``,
    ``M_{k+1} = A M_k + c_k I``. The division by k is exact for integer A.
    """
    n = g.n
    adj = [sorted(g.adjacency[i]) for i in range(n)]
    coeffs = [1]
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        # AM = A · M, using the sparse rows of A.
        am = [[sum(m[t][j] for t in adj[i]) for j in range(n)] for i in range(n)]
        trace = sum(am[i][i] for i in range(n))
        ck, rem = divmod(-trace, k)
        if rem:
            raise ArithmeticError(f"non-integral Faddeev–LeVerrier coefficient at k={k}")
        coeffs.append(ck)
        m = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def zero_root_multiplicity(coeffs: list[int]) -> int:
    count = 0
    for c in reversed(coeffs):
        if c != 0:
            break
        count += 1
    return count


def charpoly_roots(coeffs: list[int]) -> np.ndarray:
    """Real roots, descending, with the exact ``λ^m`` factor split off first.

    Nonzero roots of chain-graph polynomials are simple, so the remaining
    factor is well conditioned for a companion-matrix solve.
    """
    zeros = zero_root_multiplicity(coeffs)
    reduced = coeffs[: len(coeffs) - zeros]
    roots = np.roots(np.array(reduced, dtype=float)) if len(reduced) > 1 else np.zeros(0)
    values = np.concatenate([np.real(roots), np.zeros(zeros)])
    return np.sort(values)[::-1]
