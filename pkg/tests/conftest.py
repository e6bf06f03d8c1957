import numpy as np
import pytest

from nonextreme.scalarization import WsProblem


class CountingProblem(WsProblem):
    """Wraps a backend and counts weighted-sum solves."""

    def __init__(self, inner: WsProblem):
        self.inner = inner
        self.calls = 0
        self.weights = []

    @property
    def n_objectives(self):
        return self.inner.n_objectives

    def solve_ws(self, w):
        self.calls += 1
        self.weights.append(np.array(w))
        return self.inner.solve_ws(w)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def brute_force_nondominated(points):
    """O(n^2) reference: indices of points no other point dominates."""
    pts = [tuple(map(float, p)) for p in points]
    keep = []
    for a, p in enumerate(pts):
        dominated = False
        for b, q in enumerate(pts):
            if b != a and all(x <= y for x, y in zip(q, p)) and any(x < y for x, y in zip(q, p)):
                dominated = True
                break
        if not dominated:
            keep.append(a)
    return keep
