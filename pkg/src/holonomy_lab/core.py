"""Complex Hilbert-space primitives.

States are plain 1-d complex numpy arrays.  The inner product is
conjugate-linear in its first argument.  Basis ordering is fixed once and
for all: index k of a dimension-n vector is the spin component M = J - k
with J = (n - 1)/2, so index 0 is the highest-weight direction.
"""

from __future__ import annotations

import numpy as np

from .config import TAU_DEG

TWO_PI = 2.0 * np.pi


class DegenerateTriadError(ValueError):
    """Some cyclic overlap of the input states is numerically zero."""


def as_state(psi) -> np.ndarray:
    """Coerce input to a complex 1-d array without copying when possible."""
    arr = np.asarray(psi, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a state must be a nonempty 1-d complex array")
    return arr


def inner(phi, psi) -> complex:
    """Inner product (phi, psi), conjugate-linear in the first argument."""
    phi = as_state(phi)
    psi = as_state(psi)
    if phi.shape != psi.shape:
        raise ValueError(f"dimension mismatch: {phi.size} vs {psi.size}")
    return complex(np.vdot(phi, psi))


def norm(psi) -> float:
    return float(np.linalg.norm(as_state(psi)))


def normalize(psi) -> np.ndarray:
    psi = as_state(psi)
    n = np.linalg.norm(psi)
    if n == 0.0 or not np.isfinite(n):
        raise ValueError("cannot normalize a zero or non-finite vector")
    return psi / n


def projector(psi) -> np.ndarray:
    """Rank-1 projector onto the ray of psi."""
    psi = normalize(psi)
    return np.outer(psi, psi.conj())


def principal_angle(x: float) -> float:
    """Wrap a phase to the principal branch (-pi, pi]."""
    y = float(np.remainder(x, TWO_PI))
    if y >= TWO_PI:  # catches rounding of tiny negatives
        y = 0.0
    if y > np.pi:
        y -= TWO_PI
    return y


def wrap_angle_positive(x: float) -> float:
    """Wrap a phase into [0, 2*pi)."""
    y = float(np.remainder(x, TWO_PI))
    if y >= TWO_PI:
        y = 0.0
    return y


def angle_distance(a: float, b: float) -> float:
    """Wrap-aware distance between two phases, in [0, pi]."""
    return abs(principal_angle(a - b))


def ray_representative(psi, tol: float = 1e-9) -> np.ndarray:
    """Canonical unit representative of the ray through psi.

    The first amplitude with modulus above ``tol`` is made real positive,
    so equal rays yield identical arrays up to roundoff.
    """
    psi = normalize(psi)
    idx = np.flatnonzero(np.abs(psi) > tol)
    if idx.size == 0:
        raise ValueError("no amplitude above tolerance; cannot fix the phase")
    pivot = psi[idx[0]]
    return psi * (abs(pivot) / pivot)


def rays_equal(phi, psi, tol: float = 1e-12) -> bool:
    """Whether two vectors define the same ray (equal up to a unit scalar)."""
    a = ray_representative(phi)
    b = ray_representative(psi)
    return a.shape == b.shape and bool(np.max(np.abs(a - b)) < tol)


def bargmann(states, tau_deg: float = TAU_DEG) -> complex:
    """Cyclic product of inner products of k >= 3 states.

    For three states this equals the trace of the product of their ray
    projectors, so it is a function on ray space.  Raises
    :class:`DegenerateTriadError` when any cyclic overlap is degenerate
    relative to the norms involved.
    """
    states = [as_state(s) for s in states]
    if len(states) < 3:
        raise ValueError("need at least three states")
    dims = {s.size for s in states}
    if len(dims) != 1:
        raise ValueError("all states must share one dimension")
    result = 1.0 + 0.0j
    for i, cur in enumerate(states):
        nxt = states[(i + 1) % len(states)]
        ov = inner(cur, nxt)
        floor = tau_deg * np.linalg.norm(cur) * np.linalg.norm(nxt)
        if abs(ov) <= floor:
            raise DegenerateTriadError(
                f"overlap of states {i} and {(i + 1) % len(states)} is degenerate"
            )
        result *= ov
    return result


def bi_phase(psi1, psi2, psi3, tau_deg: float = TAU_DEG) -> float:
    """Geometric phase of a triad: minus the argument of the invariant.

    Reported on the principal branch (-pi, pi].
    """
    delta = bargmann([psi1, psi2, psi3], tau_deg=tau_deg)
    return principal_angle(-np.angle(delta))


def assert_unitary(u, tol: float = 1e-12) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("unitary must be a square matrix")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > tol:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
    return u


def apply_unitary(u, psi) -> np.ndarray:
    psi = as_state(psi)
    u = np.asarray(u, dtype=complex)
    if u.shape != (psi.size, psi.size):
        raise ValueError(
            f"dimension mismatch: matrix {u.shape} on vector of size {psi.size}"
        )
    return u @ psi


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_state(n: int, seed=None) -> np.ndarray:
    """Haar-uniform random unit vector: normalized complex Gaussian."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    rng = _as_rng(seed)
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return normalize(z)


def random_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    rng = _as_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    # fix the phase ambiguity of QR so the distribution is Haar
    d = np.diagonal(r)
    return q * (d / np.abs(d))
