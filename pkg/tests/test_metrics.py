import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stable_subspace.errors import LengthMismatch
from stable_subspace.metrics import (
    best_mapping,
    clustering_error,
    evaluate,
    nmi,
    projection_error_curve,
    reassignment_counts,
)


def brute_error(pred, truth):
    """Minimum mislabel rate over every injective relabelling of ``pred``."""
    p_ids = sorted(set(pred))
    t_ids = sorted(set(truth))
    targets = t_ids + [None] * max(0, len(p_ids) - len(t_ids))
    best = len(pred)
    for perm in itertools.permutations(targets, len(p_ids)):
        m = dict(zip(p_ids, perm))
        best = min(best, sum(m[a] != b for a, b in zip(pred, truth)))
    return best / len(pred)


def literal_nmi(pred, truth):
    n = len(pred)
    pa = {a: pred.count(a) / n for a in set(pred)}
    pb = {b: truth.count(b) / n for b in set(truth)}
    mi = 0.0
    for a in pa:
        for b in pb:
            pab = sum(1 for x, y in zip(pred, truth) if x == a and y == b) / n
            if pab > 0:
                mi += pab * math.log(pab / (pa[a] * pb[b]))
    ha = -sum(v * math.log(v) for v in pa.values())
    hb = -sum(v * math.log(v) for v in pb.values())
    return mi / math.sqrt(ha * hb)


class TestClusteringError:
    def test_perfect(self):
        assert clustering_error([0, 1, 1, 2], [0, 1, 1, 2]) == 0.0

    def test_permuted(self):
        truth = np.array([0, 0, 1, 1, 2, 2])
        assert clustering_error(np.array([2, 0, 1])[truth], truth) == 0.0

    @pytest.mark.parametrize("seed", range(8))
    def test_exhaustive_oracle(self, seed):
        rng = np.random.default_rng(seed)
        pred, truth = rng.integers(0, 3, 12).tolist(), rng.integers(0, 3, 12).tolist()
        assert clustering_error(pred, truth) == pytest.approx(brute_error(pred, truth), abs=1e-15)

    def test_more_predicted_than_true(self):
        assert clustering_error([0, 1, 2, 2], [0, 0, 1, 1]) == pytest.approx(0.25)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            clustering_error([0, 1], [0])


class TestNmi:
    def test_identical(self):
        assert nmi([0, 0, 1, 1, 2], [0, 0, 1, 1, 2]) == pytest.approx(1.0)

    def test_balanced_cross(self):
        assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-15)

    def test_degenerate(self):
        assert nmi([0, 0, 0], [1, 1, 1]) == 1.0
        assert nmi([0, 0, 0], [0, 1, 1]) == 0.0
        # marginals must not pick up rounding entropy from the joint table
        assert nmi([0, 0, 0, 2, 0, 1], [0] * 6) == 0.0

    def test_independent_large(self):
        rng = np.random.default_rng(0)
        assert nmi(rng.integers(0, 3, 20000), rng.integers(0, 3, 20000)) < 1e-3

    @pytest.mark.parametrize("seed", range(8))
    def test_literal_formula(self, seed):
        rng = np.random.default_rng(seed)
        pred, truth = rng.integers(0, 4, 15).tolist(), rng.integers(0, 3, 15).tolist()
        assert nmi(pred, truth) == pytest.approx(literal_nmi(pred, truth), abs=1e-12)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=30), st.permutations(range(4)))
def test_relabel_invariance(pairs, perm):
    pred = np.array([a for a, _ in pairs])
    truth = np.array([b for _, b in pairs])
    relabel = np.array(perm)[pred]
    assert clustering_error(relabel, truth) == pytest.approx(clustering_error(pred, truth))
    assert nmi(relabel, truth) == pytest.approx(nmi(pred, truth), abs=1e-12)
    assert 0 <= clustering_error(pred, truth) <= 1
    assert 0 <= nmi(pred, truth) <= 1 + 1e-12


class TestReassignmentCounts:
    def test_no_moves(self):
        labels = [0, 0, 1, 1]
        assert reassignment_counts(labels, labels, [0, 0, 1, 1]) == (0, 0)

    def test_planted_fix_and_break(self):
        truth = [0, 0, 0, 1, 1, 1]
        before = [0, 0, 1, 1, 1, 1]  # point 2 wrong
        after = [0, 0, 0, 1, 0, 1]  # point 2 fixed, point 4 broken
        assert reassignment_counts(before, after, truth) == (1, 1)

    def test_wrong_to_wrong_is_false(self):
        truth = [0, 0, 0, 1, 1, 1, 2, 2, 2]
        before = [0, 0, 1, 1, 1, 1, 2, 2, 2]
        after = [0, 0, 2, 1, 1, 1, 2, 2, 2]
        assert reassignment_counts(before, after, truth) == (0, 1)

    def test_two_class_table_pattern(self):
        # 2 subjects x 64 images: 8 errors before, 2 corrected, none broken
        truth = np.repeat([0, 1], 64)
        before = truth.copy()
        before[[1, 5, 9, 70, 80, 90, 100, 110]] ^= 1
        after = before.copy()
        after[[5, 90]] ^= 1
        assert reassignment_counts(before, after, truth) == (2, 0)
        assert clustering_error(before, truth) == pytest.approx(0.0625)
        assert clustering_error(after, truth) == pytest.approx(0.046875)

    def test_evaluate(self):
        truth = [0, 0, 0, 1, 1, 1]
        report = evaluate([0, 0, 0, 1, 1, 1], truth, before=[0, 0, 1, 1, 1, 1])
        assert report.clustering_error == 0.0 and report.nmi == pytest.approx(1.0)
        assert (report.correct_reassignments, report.false_reassignments) == (1, 0)

    def test_mapping_follows_after(self):
        assert best_mapping([1, 1, 0, 0], [0, 0, 1, 1]) == {0: 1, 1: 0}


def test_projection_error_curve(rng):
    trace = [rng.standard_normal((3, 3)) for _ in range(4)]
    assert projection_error_curve(trace[:1], trace[0]) == [0.0]
    curve = projection_error_curve(trace, np.eye(3))
    assert curve[2] == pytest.approx(np.sum((trace[2] - np.eye(3)) ** 2))
    assert all(projection_error_curve([m], m) == [0.0] for m in trace)
