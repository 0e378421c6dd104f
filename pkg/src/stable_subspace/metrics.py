"""Clustering evaluation: matched error, NMI, reassignment accounting."""

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import LengthMismatch
from .linalg import frobenius_distance_sq


def _pair(pred, truth):
    pred = np.asarray(pred).astype(np.int64)
    truth = np.asarray(truth).astype(np.int64)
    if pred.ndim != 1 or truth.ndim != 1 or pred.shape != truth.shape:
        raise LengthMismatch(f"label vectors differ in shape: {pred.shape} vs {truth.shape}")
    if pred.size == 0:
        raise LengthMismatch("label vectors are empty")
    return pred, truth


def contingency(pred, truth):
    """Count table ``C[a, b] = #{i : pred_i = a, truth_i = b}`` over observed ids."""
    pred, truth = _pair(pred, truth)
    p_ids, p_inv = np.unique(pred, return_inverse=True)
    t_ids, t_inv = np.unique(truth, return_inverse=True)
    table = np.zeros((p_ids.size, t_ids.size), dtype=np.int64)
    np.add.at(table, (p_inv, t_inv), 1)
    return table, p_ids, t_ids


def best_mapping(pred, truth):
    """One-to-one map from predicted ids to truth ids maximizing agreement.

    Predicted ids left over when there are more predicted than true
    clusters are absent from the returned dict.
    """
    table, p_ids, t_ids = contingency(pred, truth)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return {int(p_ids[r]): int(t_ids[c]) for r, c in zip(rows, cols)}


def _matched(labels, truth, mapping):
    mapped = np.array([mapping.get(int(v), -1) for v in labels])
    return mapped == truth


def clustering_error(pred, truth):
    """Fraction of points mislabelled under the best one-to-one id matching."""
    pred, truth = _pair(pred, truth)
    table, _, _ = contingency(pred, truth)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return float(pred.size - table[rows, cols].sum()) / pred.size


def nmi(pred, truth):
    """Mutual information normalized by the geometric mean of the entropies.

    Natural logs. Two single-cluster partitions score 1; if only one side
    has zero entropy the score is 0.
    """
    pred, truth = _pair(pred, truth)
    table, _, _ = contingency(pred, truth)
    if table.shape == (1, 1):
        return 1.0
    if 1 in table.shape:
        return 0.0
    n = pred.size
    joint = table / n
    pa = table.sum(axis=1) / n
    pb = table.sum(axis=0) / n
    ha = -np.sum(pa * np.log(pa))
    hb = -np.sum(pb * np.log(pb))
    nz = joint > 0
    mi = np.sum(joint[nz] * np.log(joint[nz] / np.outer(pa, pb)[nz]))
    return float(min(max(mi / np.sqrt(ha * hb), 0.0), 1.0))


def reassignment_counts(before, after, truth):
    """Count correct and false moves between two labellings.

    Both labellings are judged under the best matching of ``after`` to
    ``truth``. A moved point is correct when it goes from mismatched to
    matched; every other move (including wrong-to-wrong) is false.
    """
    before, truth = _pair(before, truth)
    after, _ = _pair(after, truth)
    mapping = best_mapping(after, truth)
    moved = before != after
    ok_before = _matched(before, truth, mapping)
    ok_after = _matched(after, truth, mapping)
    correct = int(np.sum(moved & ~ok_before & ok_after))
    return correct, int(moved.sum()) - correct


def projection_error_curve(history, reference):
    """Squared Frobenius distance of every averaged projector to ``reference``."""
    return [frobenius_distance_sq(p, reference) for p in history]


@dataclass
class EvalReport:
    clustering_error: float
    nmi: float
    correct_reassignments: int = 0
    false_reassignments: int = 0

    def to_dict(self):
        return asdict(self)


def evaluate(pred, truth, before=None):
    """Error and NMI of ``pred``; move counts relative to ``before`` if given."""
    correct = false = 0
    if before is not None:
        correct, false = reassignment_counts(before, pred, truth)
    return EvalReport(float(clustering_error(pred, truth)), float(nmi(pred, truth)), correct, false)
