import itertools
import sys

import numpy as np
import pytest

from awgn_ep import Labeling, validate
from awgn_ep import library


@pytest.fixture
def asym():
    return library.three_point_asymmetric()


@pytest.fixture
def pam3():
    return validate([-1.0, 0.0, 1.0], [1 / 3, 1 / 3, 1 / 3])


def random_labeling(rng, m):
    perm = rng.permutation(2**m)
    return Labeling(tuple(format(int(k), f"0{m}b") for k in perm))


def random_1d_bundle(rng, M, labeled=False):
    """Random 1-D bundle with gaps in [0.5, 2] and Dirichlet priors bounded away from 0."""
    gaps = rng.uniform(0.5, 2.0, size=M - 1)
    pts = np.concatenate([[0.0], np.cumsum(gaps)])
    pts -= pts.mean()
    p = rng.dirichlet(np.full(M, 2.0))
    p = 0.5 * p + 0.5 / M
    p /= p.sum()
    labels = random_labeling(rng, int(np.log2(M))) if labeled else None
    return validate(pts, p, labels)


def lattice_points(rng, M, N):
    """M distinct points of the integer lattice (many MED pairs), randomly scaled."""
    side = 3 if N > 1 else M + 2
    cells = np.array(list(itertools.product(range(side), repeat=N)), dtype=float)
    while len(cells) < M:
        side += 1
        cells = np.array(list(itertools.product(range(side), repeat=N)), dtype=float)
    pick = rng.choice(len(cells), size=M, replace=False)
    return cells[pick] * rng.uniform(0.5, 2.0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
