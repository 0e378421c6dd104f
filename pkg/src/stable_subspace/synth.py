"""Seeded synthetic data: an outlier-contaminated single cluster and a
labelled union of subspaces with controlled label corruption."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpecInvalid


def random_orthonormal(rng, rows, cols):
    """Haar-distributed ``rows x cols`` matrix with orthonormal columns."""
    q, r = np.linalg.qr(rng.standard_normal((rows, cols)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


@dataclass(frozen=True)
class SingleClusterSpec:
    n: int = 100
    d: int = 100
    true_dim: int = 10
    alpha: float = 0.05
    seed: int = 0
    outlier_energy_ratio: float | None = 1.6

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise SpecInvalid(f"n and d must be positive, got n={self.n}, d={self.d}")
        if not 1 <= self.true_dim < self.d:
            raise SpecInvalid(f"true_dim must lie in [1, d), got {self.true_dim} with d={self.d}")
        if not 0 <= self.alpha < 0.5:
            raise SpecInvalid(f"alpha must lie in [0, 0.5), got {self.alpha}")
        if self.seed < 0:
            raise SpecInvalid(f"seed must be nonnegative, got {self.seed}")
        ratio = self.outlier_energy_ratio
        if ratio is not None and not (ratio > 0 and ratio * self.alpha < 1):
            raise SpecInvalid(
                f"outlier_energy_ratio must be positive with ratio * alpha < 1, got {ratio}"
            )

    @property
    def n_inliers(self):
        # rounding guard: (1 - 0.05) * 100 must give 95, not 96
        return math.ceil(round((1 - self.alpha) * self.n, 9))


def _outlier_scale(inliers, outliers, spec):
    if spec.outlier_energy_ratio is None:
        return np.linalg.norm(inliers, axis=0).mean() / np.linalg.norm(outliers, axis=0).mean()
    share = spec.outlier_energy_ratio * spec.alpha
    mass_in = np.linalg.svd(inliers, compute_uv=False).sum()
    mass_out = np.linalg.svd(outliers, compute_uv=False).sum()
    return share / (1.0 - share) * mass_in / mass_out


def gen_single_cluster(spec):
    """One cluster of inliers on a random subspace plus uniform outliers.

    Inliers have standard normal coefficients on a ``true_dim`` orthonormal
    basis. Outliers are uniform on ``[-1, 1]^d`` and then rescaled: the
    outlier block carries ``outlier_energy_ratio * alpha`` of the combined
    singular-value mass of the two blocks. With ``outlier_energy_ratio=None``
    the mean outlier norm is matched to the mean inlier norm instead.
    Columns are shuffled and the whole matrix is left-multiplied by a random
    orthogonal matrix.

    Returns
    -------
    (ndarray of shape (d, n), ndarray of bool)
        The data matrix and the inlier mask.
    """
    rng = np.random.default_rng(spec.seed)
    n_in = spec.n_inliers
    basis = random_orthonormal(rng, spec.d, spec.true_dim)
    inliers = basis @ rng.standard_normal((spec.true_dim, n_in))
    outliers = rng.uniform(-1.0, 1.0, size=(spec.d, spec.n - n_in))
    if outliers.shape[1]:
        outliers *= _outlier_scale(inliers, outliers, spec)
    x = np.concatenate([inliers, outliers], axis=1)
    mask = np.zeros(spec.n, dtype=bool)
    mask[:n_in] = True
    order = rng.permutation(spec.n)
    rotation = random_orthonormal(rng, spec.d, spec.d)
    return rotation @ x[:, order], mask[order]


@dataclass(frozen=True)
class MultiSubspaceSpec:
    n_clusters: int = 3
    points_per_cluster: int = 60
    d: int = 30
    true_dim: int = 4
    noise_sigma: float = 0.01
    corruption_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.n_clusters < 1 or self.points_per_cluster < 1 or self.d < 1:
            raise SpecInvalid("n_clusters, points_per_cluster and d must be positive")
        if not 1 <= self.true_dim < self.d:
            raise SpecInvalid(f"true_dim must lie in [1, d), got {self.true_dim} with d={self.d}")
        if self.noise_sigma < 0:
            raise SpecInvalid(f"noise_sigma must be nonnegative, got {self.noise_sigma}")
        if not 0 <= self.corruption_fraction < 0.5:
            raise SpecInvalid(
                f"corruption_fraction must lie in [0, 0.5), got {self.corruption_fraction}"
            )
        if self.corruption_fraction > 0 and self.n_clusters < 2:
            raise SpecInvalid("label corruption needs at least two clusters")
        if self.seed < 0:
            raise SpecInvalid(f"seed must be nonnegative, got {self.seed}")

    @property
    def flips_per_cluster(self):
        return int(round(self.corruption_fraction * self.points_per_cluster))


def gen_multi_subspace(spec):
    """Union of random linear subspaces with true and corrupted labels.

    Every cluster gets its own random orthonormal basis and standard normal
    coefficients; isotropic Gaussian noise of scale ``noise_sigma`` is added.
    In each cluster a fixed share of labels is flipped to a uniformly chosen
    other cluster.

    Returns
    -------
    (ndarray of shape (d, K * m), ndarray, ndarray)
        Data, true labels and corrupted labels.
    """
    rng = np.random.default_rng(spec.seed)
    k, m = spec.n_clusters, spec.points_per_cluster
    blocks = []
    for _ in range(k):
        basis = random_orthonormal(rng, spec.d, spec.true_dim)
        blocks.append(basis @ rng.standard_normal((spec.true_dim, m)))
    x = np.concatenate(blocks, axis=1)
    if spec.noise_sigma > 0:
        x = x + spec.noise_sigma * rng.standard_normal(x.shape)
    truth = np.repeat(np.arange(k), m)
    corrupted = truth.copy()
    flips = spec.flips_per_cluster
    for c in range(k):
        idx = np.sort(rng.choice(np.flatnonzero(truth == c), size=flips, replace=False))
        # uniform over the other k - 1 ids
        shift = rng.integers(1, k, size=flips)
        corrupted[idx] = (c + shift) % k
    return x, truth, corrupted
