"""Shared fixtures and assertion helpers."""

import numpy as np
import pytest

from holonomy_lab.core import principal_angle


def assert_angle_close(a: float, b: float, tol: float = 1e-10) -> None:
    """Assert two angles agree modulo 2*pi."""
    gap = abs(principal_angle(float(a) - float(b)))
    assert gap < tol, f"angles differ by {gap:.3e} (mod 2*pi): {a} vs {b}"


def random_triad(rng, n, min_overlap=0.05):
    """Random triad with pairwise overlaps bounded away from degeneracy."""
    from holonomy_lab.core import inner, random_state

    while True:
        t = [random_state(n, rng) for _ in range(3)]
        ovs = [abs(inner(t[0], t[1])), abs(inner(t[1], t[2])),
               abs(inner(t[2], t[0]))]
        if min(ovs) >= min_overlap and max(ovs) <= 1.0 - 1e-6:
            return t


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


@pytest.fixture
def octant():
    """The quarter-sphere triad whose phase is -pi/4."""
    r = 1.0 / np.sqrt(2.0)
    return [np.array([1.0, 0.0], dtype=complex),
            np.array([r, r], dtype=complex),
            np.array([r, r * 1j], dtype=complex)]
