"""Dense SPD kernel: Cholesky factorization, determinant, and solves.

Covariance matrices in this package are small (k <= 16) and must stay
symmetric positive definite for determinants and Mahalanobis distances to
make sense.  Everything here goes through a Cholesky factor; explicit
matrix inversion is deliberately absent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular


class NotPositiveDefinite(Exception):
    """Raised when a matrix has no Cholesky factor even after the ridge."""


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular L with L @ L.T equal to the factored matrix."""

    lower: np.ndarray

    @property
    def dim(self) -> int:
        return self.lower.shape[0]


def cholesky(m: np.ndarray, ridge: float = 0.0) -> CholeskyFactor:
    """Factor ``m + ridge * I`` as L @ L.T.

    ``m`` must be symmetric; ``ridge`` must be >= 0.  Raises
    NotPositiveDefinite if a pivot fails even with the ridge applied,
    which signals a degenerate cluster to the caller.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if ridge < 0.0:
        raise ValueError("ridge must be nonnegative")
    target = m if ridge == 0.0 else m + ridge * np.eye(m.shape[0])
    try:
        lower = np.linalg.cholesky(target)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
    if not np.all(np.diag(lower) > 0.0):
        raise NotPositiveDefinite("nonpositive pivot")
    return CholeskyFactor(lower)


def cholesky_regularized(m: np.ndarray) -> CholeskyFactor:
    """Factor ``m`` with an escalating ridge for near-singular inputs.

    Tries ridge = 0 first, then trace-scaled ridges from 1e-10 up to 1e-2
    in decade steps.  A zero trace (fully collapsed cluster) falls back to
    absolute ridges so a zero matrix is still lifted rather than crashing.
    """
    m = np.asarray(m, dtype=float)
    k = m.shape[0]
    trace = float(np.trace(m))
    scale = trace / k if trace > 0.0 else 1.0
    ridges = [0.0] + [scale * 10.0**e for e in range(-10, -1)]
    last_error: Exception | None = None
    for ridge in ridges:
        try:
            return cholesky(m, ridge)
        except NotPositiveDefinite as exc:
            last_error = exc
    raise NotPositiveDefinite(f"ridge ladder exhausted: {last_error}")


def determinant(f: CholeskyFactor) -> float:
    """det of the factored matrix, (prod diag L)^2; strictly positive."""
    return float(np.prod(np.diag(f.lower)) ** 2)


def log_determinant(f: CholeskyFactor) -> float:
    """log det of the factored matrix, overflow/underflow safe."""
    return float(2.0 * np.sum(np.log(np.diag(f.lower))))


def solve(f: CholeskyFactor, b: np.ndarray) -> np.ndarray:
    """Solve (L @ L.T) y = b by forward then back substitution."""
    b = np.asarray(b, dtype=float)
    z = solve_triangular(f.lower, b, lower=True)
    return solve_triangular(f.lower.T, z, lower=False)


def half_solve(f: CholeskyFactor, b: np.ndarray) -> np.ndarray:
    """Solve L z = b only; useful because ||z||^2 = b.T (L L.T)^-1 b."""
    return solve_triangular(f.lower, np.asarray(b, dtype=float), lower=True)
