import numpy as np
import pytest
from hypothesis import given, strategies as st

from mongefoil import robin_exp_map, robin_function, robin_value, symmetrize
from mongefoil.errors import InvalidArgumentError, OutsideParameterDiskError
from mongefoil.extremal import PointAtInfinity
from mongefoil.robin import (boundary_scale, forgetful_map, indicatrix_contains,
                             indicatrix_sample, indicatrix_slice)
from mongefoil.vk import robin_ball

from conftest import heptagon, hexagon, rectangle, square, triangle, unit_ball

seeds = st.integers(0, 2**32 - 1)
BODIES = {"square": square, "triangle": triangle, "hexagon": hexagon, "ball": unit_ball}


def rand_dir(rng, n=2):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def triangle_robin(w):
    """Robin function of the unit simplex, pulled back from the real disk by squaring."""
    return float(np.log(2 * (abs(w[0]) + abs(w[1]) + abs(w[0] + w[1]))))


class TestExamples:
    def test_ball_closed_form(self):
        assert robin_value(unit_ball(), [1, 1j]) == pytest.approx(np.log(2))

    def test_square_segment(self):
        r = robin_function(square(), [1, 0])
        assert r.value == pytest.approx(np.log(2)) and r.rho_used == pytest.approx(0.5)

    def test_zero_vector(self):
        with pytest.raises(InvalidArgumentError):
            robin_value(square(), [0, 0])

    def test_indicatrix_membership(self):
        B = unit_ball()
        assert indicatrix_contains(B, [0.3, 0.3j])
        assert not indicatrix_contains(B, [1, 1j])
        assert indicatrix_contains(B, [0, 0])
        s = indicatrix_sample(square(), [0.5, 0])
        assert s.on_boundary and s.boundary_scale == pytest.approx(1)

    def test_boundary_scale(self):
        assert boundary_scale(unit_ball(), [1, 1j]) == pytest.approx(0.5)
        assert boundary_scale(square(), [1, 0]) == pytest.approx(0.5)

    def test_exp_map(self):
        np.testing.assert_allclose(robin_exp_map(square(), [0.5, 0], 1), [1, 0], atol=1e-12)
        B = unit_ball()
        for th in np.linspace(0, 2 * np.pi, 7):
            z = robin_exp_map(B, 0.5 * np.array([1, 1j]), np.exp(1j * th))
            np.testing.assert_allclose(z, [np.cos(th), np.sin(th)], atol=1e-12)
        assert isinstance(robin_exp_map(B, [0.5, 0.5j], 0), PointAtInfinity)
        with pytest.raises(OutsideParameterDiskError):
            robin_exp_map(B, [0.5, 0.5j], 1.1)

    def test_exp_map_precondition(self):
        B = unit_ball()
        z = robin_exp_map(B, np.array([0.5, 0.5j]) * (1 + 1e-4), 1)
        np.testing.assert_allclose(z, [1, 0], atol=1e-12)
        with pytest.raises(InvalidArgumentError):
            robin_exp_map(B, [1, 1j], 1)

    def test_exp_map_symmetric_real_part(self):
        u = np.array([0.5, 0.5j]) * np.exp(0.3j)
        v = u * boundary_scale(square(), u)
        np.testing.assert_allclose(robin_exp_map(square(), v, 1), 2 * v.real, atol=1e-12)

    def test_forgetful_map(self):
        np.testing.assert_allclose(forgetful_map(square(), [0.5, 0], 1j), 0, atol=1e-12)
        v = np.array([0.5, 0.2 + 0.3j])
        v = v * boundary_scale(hexagon(), v)
        np.testing.assert_allclose(forgetful_map(hexagon(), v, 0.7j),
                                   robin_exp_map(hexagon(), v, 0.7j, center=[0, 0]))

    def test_forgetful_image_inside_symmetrization(self):
        T = triangle()
        S = symmetrize(T)
        rng = np.random.default_rng(5)
        for _ in range(20):
            v = rand_dir(rng)
            v = v * boundary_scale(T, v)
            z = forgetful_map(T, v, np.exp(1j * rng.uniform(0, 2 * np.pi)))
            assert np.max(np.abs(z.imag)) <= 1e-12
            assert S.contains(z.real, tol=1e-6)

    def test_slice(self):
        rows = indicatrix_slice(unit_ball(), [1, 0], [0, 1j], [0, 1], [0, 1])
        assert rows[0][2] == -np.inf
        assert rows[3] == pytest.approx((1, 1, np.log(2)))


class TestInvariants:
    @given(seeds, st.sampled_from(sorted(BODIES)))
    def test_circle_action(self, seed, name):
        rng = np.random.default_rng(seed)
        K, v = BODIES[name](), rand_dir(rng)
        th = rng.uniform(0, 2 * np.pi)
        assert robin_value(K, np.exp(1j * th) * v) == pytest.approx(robin_value(K, v),
                                                                   abs=1e-10)

    @given(seeds, st.sampled_from(sorted(BODIES)))
    def test_log_homogeneity(self, seed, name):
        rng = np.random.default_rng(seed)
        K, v = BODIES[name](), rand_dir(rng)
        lam = complex(*rng.normal(size=2))
        assert robin_value(K, lam * v) - robin_value(K, v) == pytest.approx(
            np.log(abs(lam)), abs=1e-9)

    @given(seeds, st.sampled_from(sorted(BODIES)))
    def test_conjugation(self, seed, name):
        K, v = BODIES[name](), rand_dir(np.random.default_rng(seed))
        assert robin_value(K, np.conj(v)) == pytest.approx(robin_value(K, v), abs=1e-12)

    @given(seeds, st.sampled_from(sorted(BODIES)))
    def test_boundary_scale_lands_on_boundary(self, seed, name):
        K, v = BODIES[name](), rand_dir(np.random.default_rng(seed))
        assert abs(robin_value(K, boundary_scale(K, v) * v)) <= 1e-8

    @given(seeds)
    def test_ball_formula(self, seed):
        v = rand_dir(np.random.default_rng(seed))
        assert robin_value(unit_ball(), v) == pytest.approx(robin_ball(v), abs=1e-7)

    @given(seeds)
    def test_triangle_pullback_formula(self, seed):
        v = rand_dir(np.random.default_rng(seed))
        assert robin_value(triangle(), v) == pytest.approx(triangle_robin(v), abs=1e-9)

    @given(seeds, st.sampled_from(["square", "hexagon", "ball"]))
    def test_real_slice_is_half_boundary(self, seed, name):
        K = BODIES[name]()
        u = np.random.default_rng(seed).normal(size=2)
        u /= np.linalg.norm(u)
        t = boundary_scale(K, u)
        # t u lies on half the boundary: the support line in direction u is hit
        # at distance 2t along u from the centre
        r_max = 1.0 / max(np.abs(K.hpoly.normals @ u) / K.hpoly.offsets) if name != "ball" \
            else 1.0
        assert 2 * t == pytest.approx(r_max, abs=1e-6)

    def test_non_strict_convexity_witness(self):
        for t in (-1, -0.5, 0, 0.5, 1):
            assert abs(robin_value(unit_ball(), [0.5, 0.5j * t])) <= 1e-8


class TestSymmetrization:
    """The difference body and K share the Robin function only in special cases."""

    @given(seeds, st.sampled_from(["rectangle", "square", "hexagon"]))
    def test_equal_for_centrally_symmetric_bodies(self, seed, name):
        K = {"rectangle": rectangle, "square": square, "hexagon": hexagon}[name]()
        v = rand_dir(np.random.default_rng(seed))
        assert robin_value(K, v) == pytest.approx(robin_value(symmetrize(K), v), abs=1e-7)

    @given(seeds, st.sampled_from(["triangle", "heptagon"]))
    def test_difference_body_never_larger(self, seed, name):
        K = {"triangle": triangle, "heptagon": heptagon}[name]()
        v = rand_dir(np.random.default_rng(seed))
        assert robin_value(symmetrize(K), v) <= robin_value(K, v) + 1e-9
        x = v.real
        assert robin_value(symmetrize(K), x) == pytest.approx(robin_value(K, x), abs=1e-9)

    def test_triangle_circle_direction_differs(self):
        v = np.array([1, 1j])
        assert robin_value(triangle(), v) == pytest.approx(np.log(2 * (2 + np.sqrt(2))))
        assert robin_value(symmetrize(triangle()), v) == pytest.approx(np.log(4 * np.sqrt(2)))
