"""Principal and residual subspace estimation for a single cluster.

The stable estimator averages residual projectors computed on many random
subsets (drawn without replacement) of the cluster. The direct-PCA and
Oracle estimators are the comparison baselines.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import RefineConfig, thread_count
from .errors import AllZero, ClusterTooSmall, EmptySelection, ShapeMismatch
from .linalg import as_data_matrix, svd

# Early stopping is never considered before this many iterations.
MIN_ITER_BEFORE_STOP = 10


def select_rank(singular_values, rho):
    """Smallest ``P`` whose leading singular values hold a ``rho`` share of the total.

    The share is measured on singular values themselves, not their squares.
    """
    s = np.asarray(singular_values, dtype=np.float64)
    if s.ndim != 1 or s.size == 0:
        raise ShapeMismatch("singular_values must be a non-empty vector")
    if not 0 < rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    total = s.sum()
    if not total > 0:
        raise AllZero("every singular value is zero")
    hits = np.flatnonzero(np.cumsum(s) / total >= rho)
    if hits.size:
        return int(hits[0]) + 1
    # rho == 1 can miss by one ulp; fall back to every nonzero direction.
    return int(np.flatnonzero(s > 0)[-1]) + 1


def principal_basis(points, rho):
    """Orthonormal basis (d x P) of the principal subspace of ``points``."""
    m = as_data_matrix(points, "points")
    u, s, _ = svd(m)
    rank = select_rank(s, rho)
    return u[:, :rank]


def _complement(basis):
    d = basis.shape[0]
    proj = np.eye(d) - basis @ basis.T
    return 0.5 * (proj + proj.T)


def residual_projection(points, rho):
    """Orthogonal projector onto the complement of the principal subspace."""
    return _complement(principal_basis(points, rho))


def direct_pca_residual_projection(points, rho):
    """Residual projector from PCA of the whole cluster, without sampling."""
    return residual_projection(points, rho)


def oracle_residual_projection(points, true_member_mask, rho):
    """Residual projector learned from the truly correct members only."""
    m = as_data_matrix(points, "points")
    mask = np.asarray(true_member_mask, dtype=bool)
    if mask.shape != (m.shape[1],):
        raise ShapeMismatch(f"mask length {mask.shape} does not match {m.shape[1]} points")
    if not mask.any():
        raise EmptySelection("mask selects no points")
    return residual_projection(m[:, mask], rho)


def subset_size(n_points, sample_fraction):
    return int(min(max(round(sample_fraction * n_points), 1), n_points))


def iteration_rng(seed, cluster_id, iteration):
    """Generator for one sampling iteration, independent of execution order."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(cluster_id, iteration)))


@dataclass
class StableProjection:
    projection: np.ndarray
    iterations_used: int
    deltas: list = field(default_factory=list)
    history: list | None = None


def sample_subset(n_points, size, seed, cluster_id, iteration):
    """Sorted column indices drawn without replacement for one iteration."""
    rng = iteration_rng(seed, cluster_id, iteration)
    return np.sort(rng.choice(n_points, size=size, replace=False))


def subset_residual_projection(points, cfg, seed, cluster_id, iteration):
    """Residual projector of the subset sampled at ``iteration`` (0-based)."""
    m = as_data_matrix(points, "points")
    size = subset_size(m.shape[1], cfg.sample_fraction)
    idx = sample_subset(m.shape[1], size, seed, cluster_id, iteration)
    return residual_projection(m[:, idx], cfg.energy_fraction)


def stable_residual_projection(
    points, cfg=None, seed=None, cluster_id=0, keep_history=False, threads=None
):
    """Average of residual projectors over random subsets of one cluster.

    Parameters
    ----------
    points : array_like, shape (d, N)
        Columns are the cluster's data points.
    cfg : RefineConfig, optional
        ``energy_fraction``, ``sample_fraction``, ``max_iter``,
        ``convergence_tol`` and ``min_cluster_size`` are used.
    seed : int, optional
        Master seed; defaults to ``cfg.seed``. Iteration ``i`` of cluster
        ``cluster_id`` draws its subset from a stream keyed on
        ``(seed, cluster_id, i)``, so the result does not depend on
        ``threads``.
    keep_history : bool
        Also return the running average after every iteration.
    threads : int, optional
        Worker threads; defaults to ``STABLE_SUBSPACE_THREADS``.

    Returns
    -------
    StableProjection
        Iteration stops early at ``i >= 10`` once the Frobenius change of the
        running average falls below ``convergence_tol``.
    """
    cfg = cfg or RefineConfig()
    seed = cfg.seed if seed is None else seed
    m = as_data_matrix(points, "points")
    n_points = m.shape[1]
    if n_points < max(cfg.min_cluster_size, 1):
        raise ClusterTooSmall(cluster_id, n_points, cfg.min_cluster_size)
    threads = thread_count() if threads is None else max(int(threads), 1)

    def compute(i):
        return subset_residual_projection(m, cfg, seed, cluster_id, i)

    total = np.zeros((m.shape[0], m.shape[0]))
    previous = None
    deltas = []
    history = [] if keep_history else None
    used = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        i = 0
        while i < cfg.max_iter:
            batch = range(i, min(i + threads, cfg.max_iter))
            if pool is None:
                projections = [compute(j) for j in batch]
            else:
                projections = list(pool.map(compute, batch))
            stop = False
            # reduce strictly in iteration order for bitwise reproducibility
            for proj in projections:
                total += proj
                used += 1
                average = total / used
                if history is not None:
                    history.append(average)
                if previous is not None:
                    delta = float(np.linalg.norm(average - previous))
                    deltas.append(delta)
                    if used >= MIN_ITER_BEFORE_STOP and delta < cfg.convergence_tol:
                        stop = True
                        break
                previous = average
            if stop:
                break
            i += len(batch)
    finally:
        if pool is not None:
            pool.shutdown()
    average = total / used
    return StableProjection(0.5 * (average + average.T), used, deltas, history)


@dataclass
class StableSubspaceSet:
    """One residual projector per cluster id; ``None`` marks a skipped cluster."""

    projections: list
    iterations_used: list
    convergence_trace: list
    skipped: list = field(default_factory=list)

    @property
    def n_clusters(self):
        return len(self.projections)


def learn_subspaces(data, labels, cfg=None, n_clusters=None, threads=None, skip_small=False):
    """Stable residual projector for every cluster of a labelled data matrix.

    With ``skip_small`` a cluster below ``cfg.min_cluster_size`` gets no
    projector and is listed in ``skipped``; otherwise it raises
    :class:`ClusterTooSmall`.
    """
    cfg = cfg or RefineConfig()
    m = as_data_matrix(data)
    labels = np.asarray(labels)
    if labels.shape != (m.shape[1],):
        raise ShapeMismatch(f"{labels.shape[0]} labels for {m.shape[1]} points")
    k = int(labels.max()) + 1 if n_clusters is None else n_clusters
    projections, used, traces, skipped = [], [], [], []
    for c in range(k):
        members = m[:, labels == c]
        if members.shape[1] < cfg.min_cluster_size:
            if not skip_small:
                raise ClusterTooSmall(c, members.shape[1], cfg.min_cluster_size)
            projections.append(None)
            used.append(0)
            traces.append([])
            skipped.append(c)
            continue
        result = stable_residual_projection(members, cfg, cluster_id=c, threads=threads)
        projections.append(result.projection)
        used.append(result.iterations_used)
        traces.append(result.deltas)
    return StableSubspaceSet(projections, used, traces, skipped)
