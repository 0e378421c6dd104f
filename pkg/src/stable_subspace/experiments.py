"""Synthetic single-cluster experiments: convergence of the stable projector
and the effect of the subset size."""

import numpy as np

from .config import RefineConfig
from .metrics import projection_error_curve
from .linalg import frobenius_distance_sq
from .subspace import (
    direct_pca_residual_projection,
    oracle_residual_projection,
    stable_residual_projection,
)
from .synth import gen_single_cluster


def _fractions(spec, energy_fraction, sample_fraction):
    correct = 1.0 - spec.alpha
    return (
        correct if energy_fraction is None else energy_fraction,
        correct if sample_fraction is None else sample_fraction,
    )


def convergence_curve(spec, max_iter=100, energy_fraction=None, sample_fraction=None, threads=None):
    """Per-iteration errors of the stable and direct-PCA projectors.

    Both errors are squared Frobenius distances to the Oracle projector.
    Energy and sample fractions default to the true inlier share ``1 - alpha``.
    Early stopping is disabled so every curve has ``max_iter`` points.

    Returns
    -------
    dict
        ``iter``, ``stable_error_vs_oracle`` (lists) and
        ``pca_error_vs_oracle`` (float).
    """
    energy, sample = _fractions(spec, energy_fraction, sample_fraction)
    x, mask = gen_single_cluster(spec)
    oracle = oracle_residual_projection(x, mask, energy)
    pca = direct_pca_residual_projection(x, energy)
    cfg = RefineConfig(
        energy_fraction=energy,
        sample_fraction=sample,
        max_iter=max_iter,
        convergence_tol=0.0,
        min_cluster_size=1,
        seed=spec.seed,
    )
    result = stable_residual_projection(x, cfg, keep_history=True, threads=threads)
    return {
        "iter": list(range(1, result.iterations_used + 1)),
        "stable_error_vs_oracle": projection_error_curve(result.history, oracle),
        "pca_error_vs_oracle": frobenius_distance_sq(pca, oracle),
    }


def parse_grid(text):
    """``"start:step:stop"`` (stop inclusive) or a comma list into floats."""
    if ":" in text:
        start, step, stop = (float(v) for v in text.split(":"))
        if step <= 0 or stop < start:
            raise ValueError(f"bad grid {text!r}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    return [float(v) for v in text.split(",") if v.strip()]


def steady_state_error(x, oracle, energy, sample, max_iter, seed, threads=None):
    """Distance to ``oracle`` of the stable projector after ``max_iter`` iterations."""
    cfg = RefineConfig(
        energy_fraction=energy,
        sample_fraction=sample,
        max_iter=max_iter,
        convergence_tol=0.0,
        min_cluster_size=1,
        seed=seed,
    )
    result = stable_residual_projection(x, cfg, threads=threads)
    return frobenius_distance_sq(result.projection, oracle)


def fraction_sweep(spec, grid, max_iter=100, energy_fraction=None, threads=None):
    """Steady-state error to the Oracle for each subset fraction in ``grid``.

    By default the energy fraction follows the subset fraction at every grid
    point (one shared ``rho``); pass ``energy_fraction`` to hold it fixed.
    The Oracle always uses the true inlier share ``1 - alpha``. The same
    data set and master seed are used at every grid point.
    """
    oracle_energy = 1.0 - spec.alpha
    x, mask = gen_single_cluster(spec)
    oracle = oracle_residual_projection(x, mask, oracle_energy)
    out = []
    for frac in grid:
        energy = frac if energy_fraction is None else energy_fraction
        out.append((frac, steady_state_error(x, oracle, energy, frac, max_iter, spec.seed, threads)))
    return out
