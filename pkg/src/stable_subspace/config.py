"""Algorithm configuration and the parallelism knob."""

import os
from dataclasses import asdict, dataclass

from .errors import ConfigInvalid

THREADS_ENV = "STABLE_SUBSPACE_THREADS"


@dataclass(frozen=True)
class RefineConfig:
    """Knobs for stable subspace learning and dominant reassignment.

    ``energy_fraction`` picks the principal rank of every sampled subset,
    ``sample_fraction`` sets the subset size relative to the cluster. They
    are kept separate so either can be swept alone.
    """

    energy_fraction: float = 0.9
    sample_fraction: float = 0.9
    eta: float = 0.5
    p_norm: float = 1.5
    max_iter: int = 100
    convergence_tol: float = 1e-6
    min_cluster_size: int = 3
    seed: int = 0
    rounds: int = 1

    def __post_init__(self):
        if not 0 < self.energy_fraction <= 1:
            raise ConfigInvalid(f"energy_fraction must lie in (0, 1], got {self.energy_fraction}")
        if not 0 < self.sample_fraction <= 1:
            raise ConfigInvalid(f"sample_fraction must lie in (0, 1], got {self.sample_fraction}")
        if not 0 < self.eta <= 1:
            raise ConfigInvalid(f"eta must lie in (0, 1], got {self.eta}")
        if not self.p_norm >= 1:
            raise ConfigInvalid(f"p_norm must be >= 1, got {self.p_norm}")
        if self.max_iter < 1:
            raise ConfigInvalid(f"max_iter must be >= 1, got {self.max_iter}")
        if self.convergence_tol < 0:
            raise ConfigInvalid(f"convergence_tol must be >= 0, got {self.convergence_tol}")
        if self.min_cluster_size < 1:
            raise ConfigInvalid(f"min_cluster_size must be >= 1, got {self.min_cluster_size}")
        if self.rounds < 1:
            raise ConfigInvalid(f"rounds must be >= 1, got {self.rounds}")
        if self.seed < 0:
            raise ConfigInvalid(f"seed must be nonnegative, got {self.seed}")

    def to_dict(self):
        return asdict(self)


def thread_count():
    """Worker threads allowed by ``STABLE_SUBSPACE_THREADS`` (all cores if unset)."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigInvalid(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ConfigInvalid(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value
