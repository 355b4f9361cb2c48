"""Dense symmetric eigensolver (cyclic Jacobi) and spectrum bookkeeping.

Eigenvalues are kept sorted descending, eigenvectors as the matching
columns of an orthonormal matrix. Each eigenvector is sign-normalized so
its first entry of magnitude above ``zero_tol`` is positive, which makes
zero-component tests and reports reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from chainlab.config import Tolerances
from chainlab.models.spectrum import MultiplicityResult, PsdReport
from chainlab.services.graph_core import Graph

logger = logging.getLogger(__name__)


class ConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before the off-diagonal mass vanished."""


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # shape (n,), descending
    eigenvectors: np.ndarray  # shape (n, n), column j pairs with eigenvalues[j]
    group_tol: float = 1e-7

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    def clusters(self) -> list[list[int]]:
        """Single-linkage groups of eigenvalue indices (gap threshold group_tol)."""
        groups: list[list[int]] = []
        for i, lam in enumerate(self.eigenvalues):
            if groups and self.eigenvalues[groups[-1][-1]] - lam <= self.group_tol:
                groups[-1].append(i)
            else:
                groups.append([i])
        return groups

    def distinct(self) -> list[tuple[float, int]]:
        """(representative eigenvalue, multiplicity) per cluster, descending."""
        return [
            (float(np.mean(self.eigenvalues[group])), len(group)) for group in self.clusters()
        ]

    def nonzero_clusters(self) -> list[list[int]]:
        return [
            group for group in self.clusters()
            if abs(float(np.mean(self.eigenvalues[group]))) > self.group_tol
        ]

    def vector(self, j: int) -> np.ndarray:
        return self.eigenvectors[:, j]


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _sign_normalize(vectors: np.ndarray, zero_tol: float) -> np.ndarray:
    out = vectors.copy()
    for j in range(out.shape[1]):
        column = out[:, j]
        lead = np.flatnonzero(np.abs(column) > zero_tol)
        if lead.size and column[lead[0]] < 0:
            out[:, j] = -column
    return out


def eig_symmetric(a: np.ndarray, tol: Tolerances | None = None) -> Spectrum:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Converged when the off-diagonal Frobenius norm is at most
    ``jacobi_tol · (1 + ‖A‖_F)``. Sweep order is fixed (row-major upper
    triangle), so the result is deterministic for a given input.
    """
    tol = tol or Tolerances()
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > 1e-12:
        raise ValueError("matrix is not symmetric within 1e-12")
    n = a.shape[0]
    v = np.eye(n)
    threshold = tol.jacobi_tol * (1.0 + float(np.linalg.norm(a)))

    for sweep in range(tol.max_sweeps + 1):
        off = _off_diagonal_norm(a)
        if off <= threshold:
            logger.debug("jacobi converged: n=%d sweeps=%d off=%.3e", n, sweep, off)
            break
        if sweep == tol.max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {tol.max_sweeps} sweeps (off-diagonal {off:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return Spectrum(
        eigenvalues=values[order],
        eigenvectors=_sign_normalize(v[:, order], tol.zero_tol),
        group_tol=tol.group_tol,
    )


def graph_spectrum(g: Graph, tol: Tolerances | None = None) -> Spectrum:
    """Spectrum of the adjacency matrix A(g), indexed in g's vertex order."""
    tol = tol or Tolerances()
    if g.n == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)), tol.group_tol)
    return eig_symmetric(g.adjacency_matrix(), tol)


def reconstruction_residual(a: np.ndarray, s: Spectrum) -> float:
    if s.n == 0:
        return 0.0
    rebuilt = s.eigenvectors @ np.diag(s.eigenvalues) @ s.eigenvectors.T
    return float(np.max(np.abs(np.asarray(a, dtype=float) - rebuilt)))


def orthonormality_residual(s: Spectrum) -> float:
    if s.n == 0:
        return 0.0
    return float(np.max(np.abs(s.eigenvectors.T @ s.eigenvectors - np.eye(s.n))))


def symmetry_defect(s: Spectrum) -> float:
    """``max |λ_i + λ_{n+1−i}|``; zero for the spectrum of a bipartite graph."""
    if s.n == 0:
        return 0.0
    return float(np.max(np.abs(s.eigenvalues + s.eigenvalues[::-1])))


def float_multiplicity(s: Spectrum, lam: float, tol: Tolerances | None = None) -> MultiplicityResult:
    """Number of eigenvalues within ``group_tol`` of ``lam``.

    Flagged ambiguous when some eigenvalue sits in the band around the
    window edge, ``group_tol/f < |μ − λ| ≤ f·group_tol`` with
    ``f = ambiguity_factor``; such a count may flip under a small change
    of tolerance.
    """
    tol = tol or Tolerances()
    gtol = s.group_tol
    factor = tol.ambiguity_factor
    distances = np.abs(s.eigenvalues - float(lam))
    count = int(np.sum(distances <= gtol))
    ambiguous = bool(np.any((distances > gtol / factor) & (distances <= factor * gtol)))
    return MultiplicityResult(value=float(lam), multiplicity=count, ambiguous=ambiguous)


def check_interlacing(parent: Spectrum, child: Spectrum, tol: Tolerances | None = None) -> bool:
    """``λ_i ≥ μ_i ≥ λ_{n−m+i}`` for i = 1..m, with slack ``interlace_tol``."""
    tol = tol or Tolerances()
    n, m = parent.n, child.n
    if m >= n:
        raise ValueError(f"child has {m} eigenvalues, parent {n}; need m < n")
    lam, mu = parent.eigenvalues, child.eigenvalues
    slack = tol.interlace_tol
    for i in range(m):
        if lam[i] + slack < mu[i] or mu[i] + slack < lam[n - m + i]:
            logger.debug(
                "interlacing fails at i=%d: λ=%.12f μ=%.12f λ'=%.12f", i + 1, lam[i], mu[i],
                lam[n - m + i],
            )
            return False
    return True


# ── Staircase block of H(k) ──────────────────────────────────────────────────


def staircase_block(k: int) -> np.ndarray:
    """``C`` with ``C[i][j] = 1`` iff ``j ≥ i``: the U×V block of H(k) with V in reverse order.

    Reversing V keeps ``CCᵀ`` and makes ``C + Cᵀ = J + I``.
    """
    if k < 1:
        raise ValueError("k must be ≥ 1")
    i = np.arange(1, k + 1)[:, None]
    j = np.arange(1, k + 1)[None, :]
    return (j >= i).astype(np.int64)


def psd_identity_check(k: int, tol: Tolerances | None = None) -> PsdReport:
    """Check ``4CCᵀ − I − 2J = (2C − I)(2C − I)ᵀ`` exactly and bound ``λ_min(CCᵀ)``.

    The identity follows from ``C + Cᵀ = J + I``; it shows ``4CCᵀ − I`` is
    positive semidefinite, so every eigenvalue of ``CCᵀ`` is at least 1/4.
    """
    tol = tol or Tolerances()
    c = staircase_block(k)
    eye = np.eye(k, dtype=np.int64)
    ones = np.ones((k, k), dtype=np.int64)
    gram = c @ c.T
    two_c_minus_i = 2 * c - eye
    product = two_c_minus_i @ two_c_minus_i.T
    staircase_ok = bool(np.array_equal(c + c.T, ones + eye))
    expanded_ok = bool(np.array_equal(4 * gram - 2 * c - 2 * c.T + eye, product))
    reduced_ok = bool(np.array_equal(4 * gram - eye - 2 * ones, product))
    min_eig = float(eig_symmetric(gram.astype(float), tol).eigenvalues[-1])
    report = PsdReport(
        k=k,
        identity_ok=staircase_ok and expanded_ok and reduced_ok,
        min_gram_eigenvalue=min_eig,
        bound_ok=min_eig >= 0.25 - tol.gap_edge_tol,
    )
    if not (report.identity_ok and report.bound_ok):
        logger.error("PSD identity check failed for k=%d: %s", k, report)
    return report
