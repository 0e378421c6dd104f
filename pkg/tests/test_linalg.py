import numpy as np
import pytest

from stable_subspace.errors import NonFinite, ShapeMismatch
from stable_subspace.linalg import ORTHONORMAL_TOL, frobenius_distance_sq, svd


def test_svd_identity():
    u, s, v = svd(np.eye(3))
    np.testing.assert_allclose(s, [1, 1, 1])
    # sign convention makes the basis a plain permutation of I
    assert np.all(np.sort(u, axis=0) == np.array([[0] * 3, [0] * 3, [1] * 3]))
    np.testing.assert_allclose(u @ np.diag(s) @ v.T, np.eye(3), atol=1e-12)


def test_svd_rank_one():
    u = np.array([2.0, 0.0, 0.0, 0.0])
    v = np.array([0.6, 0.8, 0.0])
    s = svd(np.outer(u, v)).singular_values
    assert s[0] == pytest.approx(2.0)
    np.testing.assert_allclose(s[1:], 0, atol=1e-12)


def test_svd_matches_eigen_oracle(rng):
    x = rng.standard_normal((8, 5))
    u, s, v = svd(x)
    assert u.shape == (8, 5) and v.shape == (5, 5)
    np.testing.assert_allclose(u @ np.diag(s) @ v.T, x, atol=1e-10)
    eig = np.sort(np.linalg.eigvalsh(x.T @ x))[::-1]
    np.testing.assert_allclose(s, np.sqrt(np.clip(eig, 0, None)), rtol=1e-10)
    assert np.all(np.diff(s) <= 0)
    assert np.linalg.norm(u.T @ u - np.eye(5)) <= ORTHONORMAL_TOL


def test_svd_sign_convention(rng):
    u, _, _ = svd(rng.standard_normal((6, 4)))
    pivots = u[np.argmax(np.abs(u), axis=0), np.arange(4)]
    assert np.all(pivots >= 0)


def test_svd_energy_identity(rng):
    x = rng.standard_normal((7, 12))
    s = svd(x).singular_values
    assert np.sum(s**2) == pytest.approx(np.sum(x**2), rel=1e-8)


def test_svd_deterministic(rng):
    x = rng.standard_normal((9, 6))
    a, b = svd(x), svd(x)
    assert np.array_equal(a.singular_values, b.singular_values)
    assert np.array_equal(a.left_basis, b.left_basis)


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_svd_rejects_non_finite(bad):
    x = np.ones((3, 3))
    x[1, 2] = bad
    with pytest.raises(NonFinite):
        svd(x)


def test_frobenius_distance_sq():
    a = np.arange(9.0).reshape(3, 3)
    assert frobenius_distance_sq(a, a) == 0.0
    assert frobenius_distance_sq(np.eye(2), np.zeros((2, 2))) == 2.0


def test_frobenius_distance_sq_loop_oracle(rng):
    a, b = rng.standard_normal((2, 4, 4))
    expected = 0.0
    for i in range(4):
        for j in range(4):
            expected += (a[i, j] - b[i, j]) ** 2
    assert frobenius_distance_sq(a, b) == pytest.approx(expected, rel=1e-14)
    assert frobenius_distance_sq(a, b) == frobenius_distance_sq(b, a)


def test_frobenius_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        frobenius_distance_sq(np.eye(2), np.eye(3))
