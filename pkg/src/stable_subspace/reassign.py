"""Residual scoring and dominant nearest-subspace reassignment."""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, InvalidLabels, ShapeMismatch
from .linalg import as_data_matrix


def as_labels(labels, n_clusters=None, allow_empty=False):
    """Validate a label vector with ids in ``0..K-1``; returns ``(labels, K)``."""
    arr = np.asarray(labels)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidLabels("labels must be a non-empty 1-D vector")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.mod(arr, 1) == 0):
            raise InvalidLabels("labels must be integers")
    arr = arr.astype(np.int64)
    if arr.min() < 0:
        raise InvalidLabels("labels must be nonnegative")
    k = int(arr.max()) + 1 if n_clusters is None else int(n_clusters)
    if arr.max() >= k:
        raise InvalidLabels(f"label {arr.max()} out of range for {k} clusters")
    if not allow_empty:
        missing = np.setdiff1d(np.arange(k), arr)
        if missing.size:
            raise InvalidLabels(f"clusters {missing.tolist()} are empty")
    return arr, k


def residual_scores(data, subspaces, p=1.5):
    """``l_p`` norm of every point's residual against every cluster.

    Parameters
    ----------
    data : array_like, shape (d, n)
    subspaces : StableSubspaceSet or sequence of (d, d) arrays
        A ``None`` entry (skipped cluster) scores ``inf`` for every point.
    p : float
        Norm order, ``p >= 1``.

    Returns
    -------
    ndarray, shape (n, K)
    """
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    m = as_data_matrix(data)
    projections = getattr(subspaces, "projections", subspaces)
    scores = np.empty((m.shape[1], len(projections)))
    for k, proj in enumerate(projections):
        if proj is None:
            scores[:, k] = np.inf
            continue
        proj = np.asarray(proj, dtype=np.float64)
        if proj.shape != (m.shape[0], m.shape[0]):
            raise DimensionMismatch(
                f"projection {k} has shape {proj.shape}, data dimension is {m.shape[0]}"
            )
        residuals = proj @ m
        scores[:, k] = np.linalg.norm(residuals, ord=p, axis=0)
    return scores


class Move(NamedTuple):
    index: int
    source: int
    target: int
    own_score: float
    best_other: float


@dataclass
class ReassignmentLog:
    moves: list = field(default_factory=list)
    untouched_count: int = 0
    emptied_clusters: list = field(default_factory=list)

    @property
    def moved_indices(self):
        return [mv.index for mv in self.moves]

    def to_dict(self):
        return {
            "moves": [
                {
                    "index": mv.index,
                    "from": mv.source,
                    "to": mv.target,
                    "own_score": mv.own_score,
                    "best_other": mv.best_other,
                }
                for mv in self.moves
            ],
            "untouched_count": self.untouched_count,
            "emptied_clusters": list(self.emptied_clusters),
        }


def dominant_reassign(labels, scores, eta=0.5, frozen=()):
    """Move points whose best foreign cluster fits markedly better than their own.

    A point in cluster ``k`` moves to ``j = argmin_{c != k} scores[i, c]``
    iff ``scores[i, j] <= eta * scores[i, k]``. All decisions use the input
    labels (no cascading). Ties in the foreign argmin go to the lowest
    cluster id. The foreign score must also be strictly below the own score,
    so a point tied with its own cluster (including ``0 == 0``) stays.

    Points currently in a ``frozen`` cluster never move, and no point moves
    into one.

    Returns
    -------
    (ndarray, ReassignmentLog)
    """
    if not 0 < eta <= 1:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 2:
        raise ShapeMismatch("scores must be an n x K matrix")
    labels, k = as_labels(labels, n_clusters=scores.shape[1], allow_empty=True)
    n = labels.shape[0]
    if scores.shape[0] != n:
        raise ShapeMismatch(f"{scores.shape[0]} score rows for {n} labels")
    frozen = set(int(c) for c in frozen)

    rows = np.arange(n)
    own = scores[rows, labels]
    foreign = scores.copy()
    foreign[rows, labels] = np.inf
    if frozen:
        foreign[:, sorted(frozen)] = np.inf
    target = np.argmin(foreign, axis=1)
    best = foreign[rows, target]
    gate = (best <= eta * own) & (best < own) & np.isfinite(best)
    if frozen:
        gate &= ~np.isin(labels, sorted(frozen))

    new = labels.copy()
    new[gate] = target[gate]
    moves = [
        Move(int(i), int(labels[i]), int(target[i]), float(own[i]), float(best[i]))
        for i in np.flatnonzero(gate)
    ]
    emptied = [c for c in range(k) if np.any(labels == c) and not np.any(new == c)]
    return new, ReassignmentLog(moves, n - len(moves), emptied)


def nearest_subspace(scores):
    """Plain nearest-subspace labels (row argmin, lowest id on ties)."""
    return np.argmin(np.asarray(scores, dtype=np.float64), axis=1)
