"""Inner products, cyclic invariants and wrapping utilities."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import assert_angle_close, random_triad
from holonomy_lab import core
from holonomy_lab.core import DegenerateTriadError


class TestAngleWrapping:
    def test_principal_range_boundaries(self):
        assert core.principal_angle(np.pi) == pytest.approx(np.pi)
        assert core.principal_angle(-np.pi) == pytest.approx(np.pi)
        assert core.principal_angle(2 * np.pi) == 0.0
        assert core.principal_angle(0.0) == 0.0

    @given(st.floats(-1e6, 1e6))
    def test_principal_is_equivalent_angle_in_range(self, x):
        y = core.principal_angle(x)
        assert -np.pi < y <= np.pi
        assert abs(np.exp(1j * y) - np.exp(1j * x)) < 1e-9

    @given(st.floats(-1e6, 1e6))
    def test_positive_wrap_range(self, x):
        y = core.wrap_angle_positive(x)
        assert 0.0 <= y < 2 * np.pi
        assert abs(np.exp(1j * y) - np.exp(1j * x)) < 1e-9

    def test_angle_distance_wraps(self):
        assert core.angle_distance(0.1, 2 * np.pi - 0.1) == pytest.approx(0.2)


class TestInner:
    def test_conjugate_linear_in_first_argument(self, rng):
        a = core.random_state(4, rng)
        b = core.random_state(4, rng)
        z = 0.3 - 1.2j
        assert core.inner(z * a, b) == pytest.approx(np.conjugate(z) * core.inner(a, b))
        assert core.inner(a, z * b) == pytest.approx(z * core.inner(a, b))

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="dimension"):
            core.inner(np.ones(2), np.ones(3))

    def test_norm_and_normalize(self):
        v = np.array([3.0, 4.0j])
        assert core.norm(v) == pytest.approx(5.0)
        assert core.norm(core.normalize(v)) == pytest.approx(1.0)

    def test_normalize_rejects_zero(self):
        with pytest.raises(ValueError):
            core.normalize(np.zeros(3))

    def test_projector_is_rank_one_hermitian(self, rng):
        p = core.projector(core.random_state(3, rng))
        assert np.trace(p) == pytest.approx(1.0)
        assert np.allclose(p, p.conj().T)
        assert np.allclose(p @ p, p)


class TestRays:
    def test_representative_has_real_positive_pivot(self, rng):
        psi = core.random_state(5, rng)
        rep = core.ray_representative(psi)
        pivot = rep[np.flatnonzero(np.abs(rep) > 1e-9)[0]]
        assert pivot.imag == pytest.approx(0.0, abs=1e-14)
        assert pivot.real > 0

    def test_phase_change_gives_same_representative(self, rng):
        psi = core.random_state(4, rng)
        rep1 = core.ray_representative(psi)
        rep2 = core.ray_representative(np.exp(0.7j) * psi)
        assert np.allclose(rep1, rep2)

    def test_rays_equal_ignores_phase_only(self, rng):
        psi = core.random_state(4, rng)
        assert core.rays_equal(psi, np.exp(1.9j) * psi)
        assert not core.rays_equal(psi, core.random_state(4, rng))

    def test_tiny_leading_component_is_skipped(self):
        psi = np.array([1e-12, 1.0j])
        rep = core.ray_representative(psi)
        assert rep[1].real == pytest.approx(1.0)


class TestBargmann:
    def test_octant_value(self, octant):
        delta = core.bargmann(octant)
        assert delta == pytest.approx(0.25 + 0.25j)
        assert core.bi_phase(*octant) == pytest.approx(-np.pi / 4)

    def test_matches_projector_trace(self, rng):
        triad = random_triad(rng, 4)
        p1, p2, p3 = (core.projector(t) for t in triad)
        assert core.bargmann(triad) == pytest.approx(np.trace(p1 @ p2 @ p3))

    def test_cyclic_shift_changes_nothing_but_rounding(self, rng):
        t = random_triad(rng, 3)
        assert core.bargmann(t) == pytest.approx(
            core.bargmann([t[1], t[2], t[0]]), abs=1e-15)

    def test_reversal_conjugates(self, rng):
        t = random_triad(rng, 3)
        assert core.bargmann(t[::-1]) == pytest.approx(
            np.conjugate(core.bargmann(t)))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**9))
    def test_gauge_and_unitary_invariance(self, seed):
        gen = np.random.default_rng(seed)
        triad = random_triad(gen, 3)
        before = core.bargmann(triad)
        phased = [np.exp(1j * gen.uniform(0, 2 * np.pi)) * v for v in triad]
        assert core.bargmann(phased) == pytest.approx(before, abs=1e-12)
        u = core.random_unitary(3, gen)
        rotated = [u @ v for v in triad]
        assert core.bargmann(rotated) == pytest.approx(before, abs=1e-12)

    def test_higher_order_product(self, rng):
        states = [core.random_state(3, rng) for _ in range(5)]
        want = 1.0 + 0.0j
        for i in range(5):
            want *= core.inner(states[i], states[(i + 1) % 5])
        assert core.bargmann(states) == pytest.approx(want)

    def test_too_few_states_rejected(self, rng):
        with pytest.raises(ValueError):
            core.bargmann([core.random_state(2, rng)] * 2)

    def test_orthogonal_link_is_degenerate(self):
        e1 = np.array([1.0, 0.0], dtype=complex)
        e2 = np.array([0.0, 1.0], dtype=complex)
        plus = core.normalize(np.array([1.0, 1.0], dtype=complex))
        with pytest.raises(DegenerateTriadError):
            core.bargmann([e1, e2, plus])

    def test_phase_lies_in_principal_range(self, rng):
        for _ in range(20):
            t = random_triad(rng, 3)
            p = core.bi_phase(*t)
            assert -np.pi < p <= np.pi
            assert_angle_close(p, -np.angle(core.bargmann(t)), 1e-12)


class TestRandomSampling:
    def test_random_state_is_unit_and_seeded(self):
        a = core.random_state(6, 42)
        b = core.random_state(6, 42)
        assert np.allclose(a, b)
        assert core.norm(a) == pytest.approx(1.0)

    def test_random_unitary_is_unitary_and_seeded(self):
        u = core.random_unitary(5, 7)
        v = core.random_unitary(5, 7)
        assert np.allclose(u, v)
        core.assert_unitary(u)

    def test_assert_unitary_rejects_stretch(self):
        with pytest.raises(ValueError):
            core.assert_unitary(np.diag([1.0, 2.0]))

    def test_apply_unitary_checks_dimensions(self, rng):
        u = core.random_unitary(3, rng)
        with pytest.raises(ValueError):
            core.apply_unitary(u, np.ones(4))
