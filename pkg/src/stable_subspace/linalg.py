"""Dense matrix primitives shared by the rest of the package."""

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, NonFinite, ShapeMismatch

# Numeric tolerances used throughout the package and its tests.
ORTHONORMAL_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-8


class SvdResult(NamedTuple):
    left_basis: np.ndarray
    singular_values: np.ndarray
    right_basis: np.ndarray


def as_data_matrix(x, name="data"):
    """Validate and return ``x`` as a finite float64 ``d x n`` array."""
    m = np.asarray(x, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeMismatch(f"{name} must be a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite(f"{name} contains NaN or Inf entries")
    return m


def svd(m):
    """Thin singular value decomposition with a deterministic sign convention.

    Each left singular vector is flipped so that its largest-magnitude entry
    is nonnegative; the matching right singular vector is flipped with it.

    Parameters
    ----------
    m : array_like, shape (d, n)

    Returns
    -------
    SvdResult
        ``U`` of shape (d, r), ``s`` of length r and ``V`` of shape (n, r)
        with ``r = min(d, n)`` and ``m == U @ diag(s) @ V.T``.
    """
    m = as_data_matrix(m, "matrix")
    try:
        u, s, vt = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    pivot = np.argmax(np.abs(u), axis=0)
    signs = np.where(u[pivot, np.arange(u.shape[1])] < 0, -1.0, 1.0)
    return SvdResult(u * signs, s, vt.T * signs)


def frobenius_distance_sq(a, b):
    """Squared Frobenius norm of ``a - b``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    diff = a - b
    return float(np.sum(diff * diff))
