import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def low_rank_points(rng, d, rank, n):
    basis, _ = np.linalg.qr(rng.standard_normal((d, rank)))
    return basis @ rng.standard_normal((rank, n)), basis


_ACCEPTANCE = pytest.StashKey()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; printed in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(name, passed, detail):
        lines.append(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
