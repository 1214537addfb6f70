import numpy as np
import pytest

from footrule_rho.generators import random_ds_shuffle, random_shuffle
from footrule_rho.reduction import reduce_to_diagonals

ACCEPTANCE_RESULTS = {}


def record(criterion, passed, detail=""):
    """Store the outcome of one acceptance criterion for the summary."""
    ACCEPTANCE_RESULTS[criterion] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {key:2d}: {detail}")


def shuffles(count, seed, max_pieces=40):
    rng = np.random.default_rng(seed)
    return [random_shuffle(rng, max_pieces) for _ in range(count)]


def reduced_ds_shuffles(count, seed):
    """Random doubly symmetric shuffles and the end points of their reductions."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        s = random_ds_shuffle(rng)
        out.append((s, reduce_to_diagonals(s)[0]))
    return out


@pytest.fixture(scope="session")
def random_shuffles_1000():
    return shuffles(1000, 20261016)
