"""External clustering quality metrics and multi-algorithm comparison."""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations

import numpy as np
from scipy.special import comb

from .core import Dataset, FitConfig, FitError, fit

# exact bijection search is cheap up to 8! permutations
_EXACT_MATCH_LIMIT = 8


class LengthMismatch(Exception):
    pass


def harden(w: np.ndarray) -> np.ndarray:
    """Per-row argmax labels; ties go to the lowest cluster index."""
    return np.argmax(np.asarray(w, dtype=float), axis=1)


def adjusted_rand_index(a, b) -> float:
    """Chance-corrected pair-counting agreement between two labelings."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise LengthMismatch(f"label lengths differ: {a.shape} vs {b.shape}")
    n = a.size
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    sum_cells = comb(table, 2).sum()
    sum_rows = comb(table.sum(axis=1), 2).sum()
    sum_cols = comb(table.sum(axis=0), 2).sum()
    pairs = comb(n, 2)
    expected = sum_rows * sum_cols / pairs if pairs else 0.0
    max_index = 0.5 * (sum_rows + sum_cols)
    if max_index == expected:
        return 1.0 if sum_cells == expected else 0.0
    return float((sum_cells - expected) / (max_index - expected))


def matched_accuracy(a, b, c: int) -> float:
    """Best agreement fraction over bijections of cluster indices.

    Exhaustive over all c! bijections for c <= 8, greedy above.
    """
    a = np.asarray(a, dtype=int)
    b = np.asarray(b, dtype=int)
    if a.shape != b.shape:
        raise LengthMismatch(f"label lengths differ: {a.shape} vs {b.shape}")
    table = np.zeros((c, c), dtype=np.int64)
    np.add.at(table, (a, b), 1)
    if c <= _EXACT_MATCH_LIMIT:
        best = max(
            sum(table[i, p[i]] for i in range(c)) for p in permutations(range(c))
        )
    else:
        work = table.astype(float)
        best = 0
        for _ in range(c):
            i, j = np.unravel_index(np.argmax(work), work.shape)
            best += table[i, j]
            work[i, :] = -1
            work[:, j] = -1
    return float(best) / a.size


@dataclass
class AlgorithmResult:
    ari: float | None = None
    matched_accuracy: float | None = None
    final_objective: float | None = None
    iterations: int | None = None
    converged: bool | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def compare(
    data: Dataset, algorithms: list[str], cfg: FitConfig
) -> dict[str, AlgorithmResult]:
    """Fit each algorithm with the same config/seed and score against labels."""
    if data.labels is None:
        raise ValueError("compare requires ground-truth labels")
    report: dict[str, AlgorithmResult] = {}
    for alg in algorithms:
        try:
            res = fit(data, replace(cfg, algorithm=alg))
        except FitError as exc:
            report[alg] = AlgorithmResult(error=str(exc))
            continue
        hard = harden(res.partition)
        report[alg] = AlgorithmResult(
            ari=adjusted_rand_index(data.labels, hard),
            matched_accuracy=matched_accuracy(
                _relabel(data.labels, cfg.n_clusters), hard, cfg.n_clusters
            ),
            final_objective=res.objective_trace[-1],
            iterations=res.iterations,
            converged=res.converged,
        )
    return report


def _relabel(labels: np.ndarray, c: int) -> np.ndarray:
    """Map arbitrary ground-truth labels onto [0, c) by sorted value."""
    _, inverse = np.unique(labels, return_inverse=True)
    if inverse.max() >= c:
        raise ValueError(f"labels contain more than {c} distinct values")
    return inverse
