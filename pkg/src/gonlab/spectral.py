"""Algebraic connectivity via Jacobi rotations, and the spectral gonality bound.

Sign convention: the library's Laplacian carries negative valences on the
diagonal, so this module diagonalizes -L, which is positive semidefinite.
The flip is documented here once; every eigenvalue below refers to -L.

The solver reports a certified absolute error: when the off-diagonal
Frobenius norm has been rotated below `tol`, every eigenvalue lies within
`tol` of a diagonal entry (Weyl's inequality applied to the split
"diagonal + off-diagonal remainder").  The error bound therefore comes
from the achieved residual, not from an iteration count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gonlab.graph import Multigraph, laplacian


def _offdiag_norm(a: np.ndarray) -> float:
    return math.sqrt(2.0 * float(np.sum(np.tril(a, -1) ** 2)))


def jacobi_eigh(matrix: np.ndarray, tol: float = 1e-9, max_sweeps: int = 80):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (eigenvalues ascending, eigenvector columns, final off-diagonal
    Frobenius norm).  Stops once the off-diagonal norm is at most `tol`;
    rotations smaller than tol/(2n) are skipped, which still allows the
    target norm to be reached.  Deterministic for a fixed input.
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return np.array([float(a[0, 0])]), np.eye(1), 0.0
    vecs = np.eye(n)
    skip = tol / (2.0 * n)
    off = _offdiag_norm(a)
    for _ in range(max_sweeps):
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = vecs[:, p].copy()
                vec_q = vecs[:, q].copy()
                vecs[:, p] = c * vec_p - s * vec_q
                vecs[:, q] = s * vec_p + c * vec_q
        off = _offdiag_norm(a)
    else:
        raise RuntimeError(
            f"Jacobi sweeps did not reach off-norm {tol} in {max_sweeps} sweeps"
        )
    diag = np.diag(a).copy()
    order = np.argsort(diag, kind="stable")
    return diag[order], vecs[:, order], off


@dataclass(frozen=True)
class SpectralSummary:
    """Second-smallest Laplacian eigenvalue with a certified error interval."""

    n: int
    d_max: int
    lambda2: float
    error_bound: float
    connected: bool
    fiedler_vector: tuple[float, ...]

    @property
    def interval(self) -> tuple[float, float]:
        return (max(self.lambda2 - self.error_bound, 0.0), self.lambda2 + self.error_bound)


def algebraic_connectivity(g: Multigraph, tol: float = 1e-9) -> SpectralSummary:
    """lambda_2 of the positive-semidefinite Laplacian, |error| <= tol.

    The zero test for connectivity is combinatorial (graph search), never
    numeric: lambda2 of a disconnected graph is reported as the computed
    near-zero value but `connected` is authoritative.
    """
    if g.n < 2:
        raise ValueError("algebraic connectivity needs at least 2 vertices")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    psd = -laplacian(g).astype(float)
    values, vectors, off = jacobi_eigh(psd, tol=tol)
    return SpectralSummary(
        n=g.n,
        d_max=g.max_valence,
        lambda2=float(values[1]),
        error_bound=off,
        connected=g.is_connected(),
        fiedler_vector=tuple(float(x) for x in vectors[:, 1]),
    )


def separator_lower_bound(size_a: int, size_b: int, lambda2: float, d: int, n: int) -> float:
    """Minimum size of a set separating sides of the given sizes:
    4*lambda2*|A|*|B| / (d*n - lambda2*|A u B|).
    """
    if size_a < 1 or size_b < 1:
        raise ValueError("both sides must be non-empty")
    if size_a + size_b > n:
        raise ValueError("sides exceed the vertex count")
    if lambda2 <= 0:
        raise ValueError("lambda2 must be positive")
    denom = d * n - lambda2 * (size_a + size_b)
    if denom <= 0:
        raise ValueError(
            f"non-positive denominator {denom}; lambda2={lambda2} too large for valence {d}"
        )
    return 4.0 * lambda2 * size_a * size_b / denom


def gonality_bound_formula(lambda2: float, d: int, n: int) -> float:
    """(n / 2*lambda2) * [-(7*lambda2 + 9d) + 3*sqrt(9*lambda2^2 + 14*d*lambda2 + 9*d^2)].

    Tends to 0 as lambda2 -> 0+ (disconnected graphs need no separator).
    """
    if lambda2 <= 0.0:
        return 0.0
    root = math.sqrt(9.0 * lambda2 * lambda2 + 14.0 * d * lambda2 + 9.0 * d * d)
    return n / (2.0 * lambda2) * (-(7.0 * lambda2 + 9.0 * d) + 3.0 * root)


def support_quadratic(x: float, lambda2: float, d: int, n: int) -> float:
    """The quadratic whose positive root is the gonality bound:
    lambda2*x^2 + (7*lambda2 + 9d)*n*x - 8*lambda2*n^2.
    """
    return lambda2 * x * x + (7.0 * lambda2 + 9.0 * d) * n * x - 8.0 * lambda2 * n * n


@dataclass(frozen=True)
class SpectralBound:
    """Spectral gonality lower bound with interval certification.

    `low`/`high` bracket the true formula value through the lambda2 error
    interval; `ceiling` is the certified integer bound ceil(low) (gonality
    is an integer).
    """

    value: float
    low: float
    high: float
    ceiling: int
    lambda2: float
    lambda2_error: float
    d_max: int
    n: int


def spectral_gonality_bound(g: Multigraph, tol: float = 1e-9) -> SpectralBound:
    """Closed-form gonality lower bound from lambda2 and the maximum valence.

    Refuses disconnected graphs (lambda2 = 0 makes the expression
    degenerate).  The bound is evaluated across the certified lambda2
    interval; `ceiling` uses the interval's low end, so it is itself
    certified.
    """
    summary = algebraic_connectivity(g, tol=tol)
    if not summary.connected:
        raise ValueError("spectral gonality bound requires a connected graph")
    lam_lo, lam_hi = summary.interval
    d, n = summary.d_max, summary.n
    evals = [gonality_bound_formula(lam, d, n) for lam in (lam_lo, summary.lambda2, lam_hi)]
    slack = 1e-12 * max(1.0, abs(evals[1])) + 1e-15
    low = min(evals) - slack
    high = max(evals) + slack
    return SpectralBound(
        value=evals[1],
        low=low,
        high=high,
        ceiling=math.ceil(low),
        lambda2=summary.lambda2,
        lambda2_error=summary.error_bound,
        d_max=d,
        n=n,
    )
