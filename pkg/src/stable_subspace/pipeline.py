"""The two-step refinement: learn stable subspaces, then reassign."""

import logging
from dataclasses import dataclass, field

import numpy as np

from .config import RefineConfig
from .linalg import as_data_matrix
from .metrics import EvalReport, evaluate
from .reassign import ReassignmentLog, as_labels, dominant_reassign, residual_scores
from .subspace import learn_subspaces

log = logging.getLogger(__name__)


@dataclass
class RoundResult:
    log: ReassignmentLog
    iterations_used: list
    skipped: list


@dataclass
class RefineReport:
    before: np.ndarray
    after: np.ndarray
    config: RefineConfig
    rounds: list = field(default_factory=list)
    scores: np.ndarray | None = None
    eval_before: EvalReport | None = None
    eval_after: EvalReport | None = None
    warnings: list = field(default_factory=list)

    @property
    def moves(self):
        return [mv for rnd in self.rounds for mv in rnd.log.moves]

    def replay(self):
        """Rebuild ``after`` from ``before`` and the logged moves."""
        labels = self.before.copy()
        for rnd in self.rounds:
            for mv in rnd.log.moves:
                labels[mv.index] = mv.target
        return labels

    def to_dict(self):
        out = {
            "config": self.config.to_dict(),
            "n_points": int(self.before.size),
            "n_clusters": int(self.scores.shape[1]) if self.scores is not None else None,
            "n_moved": int(np.sum(self.before != self.after)),
            "rounds": [
                {
                    "iterations_used": list(rnd.iterations_used),
                    "skipped_clusters": list(rnd.skipped),
                    **rnd.log.to_dict(),
                }
                for rnd in self.rounds
            ],
            "warnings": list(self.warnings),
            "scores": self.scores.tolist() if self.scores is not None else None,
        }
        if self.eval_before is not None:
            out["eval_before"] = self.eval_before.to_dict()
            out["eval_after"] = self.eval_after.to_dict()
        return out


def refine(data, labels, cfg=None, truth=None, threads=None):
    """Refine a preliminary clustering.

    Each round learns a stable residual projector per cluster from the
    current labels, scores every point against every projector and applies
    the dominant nearest-subspace rule. Clusters smaller than
    ``cfg.min_cluster_size`` are left out of that round: their points stay
    put and nothing moves into them.

    Parameters
    ----------
    data : array_like, shape (d, n)
    labels : array_like of int, length n
    cfg : RefineConfig, optional
    truth : array_like of int, optional
        Ground truth; enables ``eval_before`` / ``eval_after``.
    threads : int, optional
    """
    cfg = cfg or RefineConfig()
    m = as_data_matrix(data)
    before, k = as_labels(labels)
    if before.size != m.shape[1]:
        raise ValueError(f"{before.size} labels for {m.shape[1]} points")
    if truth is not None:
        truth, _ = as_labels(truth)
        if truth.size != before.size:
            raise ValueError(f"{truth.size} truth labels for {before.size} points")

    report = RefineReport(before=before, after=before.copy(), config=cfg)
    current = before
    for r in range(cfg.rounds):
        subspaces = learn_subspaces(m, current, cfg, n_clusters=k, threads=threads, skip_small=True)
        for c in subspaces.skipped:
            msg = (
                f"round {r + 1}: cluster {c} has {int(np.sum(current == c))} points "
                f"(< {cfg.min_cluster_size}); excluded from reassignment"
            )
            log.warning(msg)
            report.warnings.append(msg)
        scores = residual_scores(m, subspaces, cfg.p_norm)
        current, rlog = dominant_reassign(current, scores, cfg.eta, frozen=subspaces.skipped)
        for c in rlog.emptied_clusters:
            msg = f"round {r + 1}: cluster {c} was emptied by reassignment"
            log.warning(msg)
            report.warnings.append(msg)
        report.rounds.append(RoundResult(rlog, subspaces.iterations_used, subspaces.skipped))
        report.scores = scores
    report.after = current
    if truth is not None:
        report.eval_before = evaluate(before, truth)
        report.eval_after = evaluate(current, truth, before=before)
    return report
