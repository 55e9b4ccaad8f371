"""Alternating-optimization fuzzy clustering.

Implements four algorithms over a shared loop:

* ``fcm``  — fuzzy C-means, squared Euclidean distance.
* ``gk``   — Gustafson-Kessel, Mahalanobis distance scaled by
  ``(lambda_j * det C_j)^(1/k)``.
* ``ggk``  — generalized Gustafson-Kessel: each cluster carries a size
  parameter ``f_j`` on the simplex, and the dissimilarity becomes
  ``(V_j / f_j)^(2/k) * d_ij^2`` with ``V_j = sqrt(det C_j)``.  The
  closed-form ``f`` update lets clusters of very different volumes be
  recovered, which plain GK cannot do.
* ``gg``   — Gath-Geva, exponential maximum-likelihood dissimilarity.

All updates are pure functions of numpy arrays; ``fit`` wires them into
the deterministic alternating loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import spd

ALGORITHMS = ("fcm", "gk", "ggk", "gg")
INIT_METHODS = ("random-partition", "sampled-centers")

# exp() clamp for the Gath-Geva dissimilarity; keeps far points finite
_LOG_CAP = 700.0


class FitError(Exception):
    pass


class InvalidConfig(FitError):
    pass


class DegenerateCluster(FitError):
    """A cluster covariance stayed singular through the full ridge ladder."""

    def __init__(self, cluster: int, message: str = ""):
        self.cluster = cluster
        super().__init__(f"cluster {cluster} degenerate: {message}")


@dataclass(frozen=True)
class Dataset:
    """N points in R^k with optional ground-truth labels (evaluation only)."""

    points: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"points must be N x k with N,k >= 1, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=int)
            if lab.shape != (pts.shape[0],):
                raise ValueError("labels must have one entry per point")
            object.__setattr__(self, "labels", lab)

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class ClusterStats:
    """Per-cluster fuzzy cardinality n, volume V = sqrt(det C), density n/V."""

    cardinality: np.ndarray
    volume: np.ndarray

    @property
    def density(self) -> np.ndarray:
        return self.cardinality / self.volume


@dataclass
class FitConfig:
    algorithm: str = "ggk"
    n_clusters: int = 2
    alpha: float = 2.0
    lambdas: np.ndarray | None = None  # GK only
    tol: float = 1e-6
    max_iter: int = 300
    seed: int = 0
    init: str = "sampled-centers"

    def validate(self, n_points: int) -> None:
        if self.algorithm not in ALGORITHMS:
            raise InvalidConfig(f"unknown algorithm {self.algorithm!r}")
        if self.init not in INIT_METHODS:
            raise InvalidConfig(f"unknown init {self.init!r}")
        if self.n_clusters < 1:
            raise InvalidConfig("n_clusters must be >= 1")
        if self.n_clusters > n_points:
            raise InvalidConfig(
                f"n_clusters={self.n_clusters} exceeds number of points {n_points}"
            )
        if not self.alpha > 1.0:
            raise InvalidConfig("alpha must be strictly > 1")
        if self.tol <= 0.0 or self.max_iter < 1:
            raise InvalidConfig("tol must be > 0 and max_iter >= 1")
        if self.lambdas is not None:
            lam = np.asarray(self.lambdas, dtype=float)
            if lam.shape != (self.n_clusters,) or np.any(lam <= 0.0):
                raise InvalidConfig("lambdas must be n_clusters positive reals")


@dataclass
class ClusterModel:
    centers: np.ndarray  # (c, k)
    covariances: np.ndarray  # (c, k, k)
    sizes: np.ndarray  # (c,) the f_j, on the simplex
    stats: ClusterStats


@dataclass
class FitReport:
    model: ClusterModel
    partition: np.ndarray  # (N, c) memberships, rows sum to 1
    objective_trace: list[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False


# ---------------------------------------------------------------------------
# update formulas


def init_partition(data: Dataset, cfg: FitConfig) -> np.ndarray:
    """Seeded initial membership matrix.

    ``random-partition`` draws each row uniformly and normalizes it.
    ``sampled-centers`` picks c distinct points by greedy farthest-point
    selection and derives memberships from squared Euclidean distances
    (identity covariances).
    """
    cfg.validate(data.n_points)
    rng = np.random.default_rng(cfg.seed)
    n, c = data.n_points, cfg.n_clusters
    if cfg.init == "random-partition":
        w = rng.random((n, c))
        return w / w.sum(axis=1, keepdims=True)
    centers = data.points[_farthest_point_indices(data.points, c, rng)]
    d2 = ((data.points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return update_memberships(d2, cfg.alpha)


def _farthest_point_indices(points: np.ndarray, c: int, rng: np.random.Generator) -> list[int]:
    chosen = [int(rng.integers(points.shape[0]))]
    min_d2 = ((points - points[chosen[0]]) ** 2).sum(axis=1)
    while len(chosen) < c:
        nxt = int(np.argmax(min_d2))
        chosen.append(nxt)
        min_d2 = np.minimum(min_d2, ((points - points[nxt]) ** 2).sum(axis=1))
    return chosen


def update_centers(points: np.ndarray, w: np.ndarray, alpha: float) -> np.ndarray:
    """Weighted means m_j = sum_i w_ij^a x_i / sum_i w_ij^a."""
    wa = w**alpha
    col = wa.sum(axis=0)
    return (wa.T @ points) / col[:, None]


def empty_clusters(w: np.ndarray, alpha: float) -> np.ndarray:
    """Indices j whose weight column sum_i w_ij^a underflowed to zero."""
    return np.flatnonzero((w**alpha).sum(axis=0) == 0.0)


def fuzzy_covariance(
    points: np.ndarray, w: np.ndarray, centers: np.ndarray, alpha: float
) -> tuple[np.ndarray, list[spd.CholeskyFactor]]:
    """Membership-weighted scatter about each center, regularized to SPD.

    Returns the (symmetrized, possibly ridge-lifted) covariances together
    with their Cholesky factors.  Raises DegenerateCluster if the ridge
    ladder is exhausted for some cluster.
    """
    wa = w**alpha
    col = wa.sum(axis=0)
    c, k = centers.shape
    covs = np.empty((c, k, k))
    factors: list[spd.CholeskyFactor] = []
    for j in range(c):
        diff = points - centers[j]
        cov = (wa[:, j, None] * diff).T @ diff / col[j]
        cov = 0.5 * (cov + cov.T)
        try:
            factor = spd.cholesky_regularized(cov)
        except spd.NotPositiveDefinite as exc:
            raise DegenerateCluster(j, str(exc)) from None
        covs[j] = factor.lower @ factor.lower.T
        factors.append(factor)
    return covs, factors


def mahalanobis_sq(x: np.ndarray, m: np.ndarray, factor: spd.CholeskyFactor) -> float:
    """(x-m)^T C^-1 (x-m) through the Cholesky factor of C."""
    z = spd.half_solve(factor, np.asarray(x, dtype=float) - np.asarray(m, dtype=float))
    return float(z @ z)


def mahalanobis_sq_matrix(
    points: np.ndarray, centers: np.ndarray, factors: list[spd.CholeskyFactor]
) -> np.ndarray:
    """N x c matrix of squared Mahalanobis distances."""
    d2 = np.empty((points.shape[0], centers.shape[0]))
    for j, factor in enumerate(factors):
        z = spd.half_solve(factor, (points - centers[j]).T)
        d2[:, j] = (z**2).sum(axis=0)
    return d2


def cluster_stats(
    w: np.ndarray, factors: list[spd.CholeskyFactor], alpha: float
) -> ClusterStats:
    """n_j = sum_i w_ij^a and V_j = sqrt(det C_j)."""
    n = (w**alpha).sum(axis=0)
    v = np.array([np.sqrt(spd.determinant(f)) for f in factors])
    return ClusterStats(cardinality=n, volume=v)


def update_f(stats: ClusterStats, k: int) -> np.ndarray:
    """Closed-form simplex minimizer for the cluster size parameters.

    f_j proportional to (n_j^k * V_j^2)^(1/(k+2)), normalized to sum 1.
    Computed in log space so n_j^k cannot overflow.
    """
    logs = (k * np.log(stats.cardinality) + 2.0 * np.log(stats.volume)) / (k + 2)
    logs -= logs.max()
    f = np.exp(logs)
    return f / f.sum()


def update_f_density_form(stats: ClusterStats, k: int) -> np.ndarray:
    """Equivalent density form f_j prop. to rho_j^(k/(k+2)) * V_j.

    Exists as a cross-check of :func:`update_f`; the two must agree.
    """
    logs = (k / (k + 2)) * np.log(stats.density) + np.log(stats.volume)
    logs -= logs.max()
    f = np.exp(logs)
    return f / f.sum()


def dissimilarity_gk(d_sq, det_c, lambda_j, k: int):
    """GK scaled distance (lambda_j * det C_j)^(1/k) * d^2."""
    return (lambda_j * det_c) ** (1.0 / k) * d_sq


def dissimilarity_ggk(d_sq, volume, f, k: int):
    """Size-aware scaled distance (V_j / f_j)^(2/k) * d^2."""
    return (volume / f) ** (2.0 / k) * d_sq


def update_memberships(dis: np.ndarray, alpha: float) -> np.ndarray:
    """Row-stochastic memberships w_ij = 1 / sum_t (D_ij / D_it)^(1/(a-1)).

    A zero dissimilarity makes the ratio form singular; such rows get a
    crisp assignment split equally over their zero-dissimilarity columns.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = dis ** (-1.0 / (alpha - 1.0))
        w = inv / inv.sum(axis=1, keepdims=True)
    zero_rows = np.flatnonzero((dis == 0.0).any(axis=1))
    for i in zero_rows:
        hits = dis[i] == 0.0
        w[i] = np.where(hits, 1.0 / hits.sum(), 0.0)
    return w


def memberships_density_form(
    d_sq: np.ndarray, stats: ClusterStats, alpha: float, k: int
) -> np.ndarray:
    """Equivalent membership formula driven directly by cluster densities.

    w_ij prop. to (rho_j^(2/(k+2)) / d_ij^2)^(1/(a-1)).  Cross-check for
    update_memberships composed with the size-aware dissimilarity when f
    comes from update_f.
    """
    scale = stats.density ** (2.0 / (k + 2))
    with np.errstate(divide="ignore", invalid="ignore"):
        num = (scale[None, :] / d_sq) ** (1.0 / (alpha - 1.0))
        w = num / num.sum(axis=1, keepdims=True)
    zero_rows = np.flatnonzero((d_sq == 0.0).any(axis=1))
    for i in zero_rows:
        hits = d_sq[i] == 0.0
        w[i] = np.where(hits, 1.0 / hits.sum(), 0.0)
    return w


def objective(w: np.ndarray, dis: np.ndarray, alpha: float) -> float:
    """J = sum_ij w_ij^a D_ij."""
    return float(((w**alpha) * dis).sum())


def objective_closed_form(stats: ClusterStats, f: np.ndarray, k: int) -> float:
    """Equivalent objective sum_j (V_j/f_j)^(2/k) * k * n_j.

    Valid whenever the covariances were just recomputed from the current
    partition; used as a test oracle for :func:`objective`.
    """
    return float(((stats.volume / f) ** (2.0 / k) * k * stats.cardinality).sum())


# ---------------------------------------------------------------------------
# the alternating loop


def fit(
    data: Dataset,
    cfg: FitConfig,
    initial_partition: np.ndarray | None = None,
    fixed_sizes: np.ndarray | None = None,
) -> FitReport:
    """Run the alternating optimization until the partition stabilizes.

    ``initial_partition`` overrides the seeded initialization (diagnostic
    use).  ``fixed_sizes`` pins the GGK size parameters instead of
    updating them; with all sizes equal the GGK iterates coincide with GK
    at unit lambdas.
    """
    cfg.validate(data.n_points)
    X = data.points
    n, k = X.shape
    c = cfg.n_clusters
    alpha = cfg.alpha
    lambdas = (
        np.ones(c) if cfg.lambdas is None else np.asarray(cfg.lambdas, dtype=float)
    )
    avg_var = float(X.var(axis=0).mean()) or 1.0

    if initial_partition is not None:
        w = np.asarray(initial_partition, dtype=float)
        if w.shape != (n, c):
            raise InvalidConfig(f"initial partition must be {n} x {c}")
    else:
        w = init_partition(data, cfg)

    trace: list[float] = []
    converged = False
    iterations = 0
    centers = np.empty((c, k))
    covs = np.tile(np.eye(k), (c, 1, 1))
    factors = [spd.cholesky(np.eye(k)) for _ in range(c)]
    sizes = np.full(c, 1.0 / c)
    stats = ClusterStats(cardinality=np.full(c, n / c), volume=np.ones(c))

    for iterations in range(1, cfg.max_iter + 1):
        w_old = w

        empties = empty_clusters(w, alpha)
        centers = _centers_with_reseed(X, w, alpha, empties)

        if cfg.algorithm == "fcm":
            dis = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        else:
            covs, factors = _covariances_with_reseed(
                X, w, centers, alpha, empties, avg_var
            )
            d2 = mahalanobis_sq_matrix(X, centers, factors)
            stats = cluster_stats(w, factors, alpha)
            if empties.size:
                # a reseeded cluster notionally holds its orphan point
                card = stats.cardinality.copy()
                card[empties] = 1.0
                stats = ClusterStats(cardinality=card, volume=stats.volume)
            if cfg.algorithm == "gk":
                dets = stats.volume**2
                dis = dissimilarity_gk(d2, dets[None, :], lambdas[None, :], k)
            elif cfg.algorithm == "ggk":
                sizes = fixed_sizes if fixed_sizes is not None else update_f(stats, k)
                dis = dissimilarity_ggk(d2, stats.volume[None, :], sizes[None, :], k)
            else:  # gg
                log_det = 2.0 * np.log(stats.volume)
                priors = stats.cardinality / stats.cardinality.sum()
                log_dis = 0.5 * log_det[None, :] - np.log(priors)[None, :] + 0.5 * d2
                dis = np.exp(np.minimum(log_dis, _LOG_CAP))

        w = update_memberships(dis, alpha)
        trace.append(objective(w, dis, alpha))
        if np.abs(w - w_old).max() <= cfg.tol:
            converged = True
            break

    if cfg.algorithm == "fcm":
        # report covariances/stats for the final partition anyway, so the
        # model file and renderer have ellipses to show
        covs, factors = fuzzy_covariance(X, w, centers, alpha)
        stats = cluster_stats(w, factors, alpha)
    if cfg.algorithm != "ggk":
        sizes = np.full(c, 1.0 / c)
    elif fixed_sizes is not None:
        sizes = np.asarray(fixed_sizes, dtype=float)

    model = ClusterModel(centers=centers, covariances=covs, sizes=sizes, stats=stats)
    return FitReport(
        model=model,
        partition=w,
        objective_trace=trace,
        iterations=iterations,
        converged=converged,
    )


def predict_memberships(
    points: np.ndarray,
    model: ClusterModel,
    algorithm: str,
    alpha: float,
    lambdas: np.ndarray | None = None,
) -> np.ndarray:
    """Membership matrix of arbitrary points under a fitted model.

    Uses the same dissimilarity as the fitting loop, so evaluating the
    training points reproduces the fitted partition exactly.
    """
    points = np.asarray(points, dtype=float)
    c, k = model.centers.shape
    if algorithm == "fcm":
        dis = ((points[:, None, :] - model.centers[None, :, :]) ** 2).sum(axis=2)
        return update_memberships(dis, alpha)
    factors = [spd.cholesky_regularized(model.covariances[j]) for j in range(c)]
    d2 = mahalanobis_sq_matrix(points, model.centers, factors)
    if algorithm == "gk":
        lam = np.ones(c) if lambdas is None else np.asarray(lambdas, dtype=float)
        dis = dissimilarity_gk(d2, (model.stats.volume**2)[None, :], lam[None, :], k)
    elif algorithm == "ggk":
        dis = dissimilarity_ggk(
            d2, model.stats.volume[None, :], model.sizes[None, :], k
        )
    elif algorithm == "gg":
        priors = model.stats.cardinality / model.stats.cardinality.sum()
        log_dis = (
            np.log(model.stats.volume)[None, :] - np.log(priors)[None, :] + 0.5 * d2
        )
        dis = np.exp(np.minimum(log_dis, _LOG_CAP))
    else:
        raise InvalidConfig(f"unknown algorithm {algorithm!r}")
    return update_memberships(dis, alpha)


def _centers_with_reseed(
    X: np.ndarray, w: np.ndarray, alpha: float, empties: np.ndarray
) -> np.ndarray:
    wa = w**alpha
    col = wa.sum(axis=0)
    col_safe = np.where(col == 0.0, 1.0, col)
    centers = (wa.T @ X) / col_safe[:, None]
    if empties.size:
        # park each empty cluster on the worst-covered point
        orphan = int(np.argmin(w.max(axis=1)))
        centers[empties] = X[orphan]
    return centers


def _covariances_with_reseed(
    X: np.ndarray,
    w: np.ndarray,
    centers: np.ndarray,
    alpha: float,
    empties: np.ndarray,
    avg_var: float,
) -> tuple[np.ndarray, list[spd.CholeskyFactor]]:
    if not empties.size:
        return fuzzy_covariance(X, w, centers, alpha)
    k = X.shape[1]
    w_use = w.copy()
    w_use[:, empties] = 0.0  # avoid 0/0 in the scatter; overwritten below
    w_use[0, empties] = 1.0
    covs, factors = fuzzy_covariance(X, w_use, centers, alpha)
    restart = avg_var * np.eye(k)
    for j in empties:
        covs[j] = restart
        factors[j] = spd.cholesky(restart)
    return covs, factors
