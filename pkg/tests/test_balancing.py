"""Sign balancing: exact search, heuristic, worst-case bounds, formulas."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import latgauss as lg
from latgauss.balancing import ELLIPSOID_FORMULA_CONVENTION


def _ball(n):
    return lg.Ball(1.0, dim=n)


class TestBalanceExhaustive:
    def test_duplicate_vector_cancels(self):
        r = lg.balance_exhaustive([[1.0, 0.0], [1.0, 0.0]], _ball(2))
        assert r.radius == 0.0
        assert r.signs.signs == (1, -1)

    def test_orthonormal_pair_all_sums_equal(self):
        # 4-pattern enumeration: every signed sum has euclidean norm sqrt(2)
        vecs = np.eye(2)
        for signs in itertools.product((1, -1), repeat=2):
            s = signs[0] * vecs[0] + signs[1] * vecs[1]
            assert np.linalg.norm(s) == pytest.approx(math.sqrt(2.0))
        r = lg.balance_exhaustive(vecs, _ball(2))
        assert r.radius == pytest.approx(math.sqrt(2.0))

    def test_scalar_against_centered_unit_cube(self):
        r = lg.balance_exhaustive([[1.0]], lg.AxisBox([0.5]))
        assert r.radius == pytest.approx(2.0)

    def test_result_invariant(self):
        rng = np.random.default_rng(0)
        vecs = rng.standard_normal((6, 3))
        r = lg.balance_exhaustive(vecs, _ball(3))
        assert _ball(3).gauge(r.signed_sum()) == pytest.approx(r.radius, abs=1e-9)

    def test_matches_full_enumeration_oracle(self):
        rng = np.random.default_rng(1)
        body = lg.AxisBox([0.5, 0.8, 1.1])
        for _ in range(10):
            vecs = rng.standard_normal((5, 3))
            best = min(body.gauge(np.array(s) @ vecs)
                       for s in itertools.product((1, -1), repeat=5))
            assert lg.balance_exhaustive(vecs, body).radius == pytest.approx(best, abs=1e-12)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            lg.balance_exhaustive(np.zeros((25, 2)), _ball(2))

    @given(st.floats(min_value=0.05, max_value=20.0))
    @settings(max_examples=60, derandomize=True)
    def test_input_scaling(self, c):
        vecs = np.array([[0.6, -0.2], [0.1, 0.9], [0.5, 0.5]])
        base = lg.balance_exhaustive(vecs, _ball(2)).radius
        scaled = lg.balance_exhaustive(c * vecs, _ball(2)).radius
        assert scaled == pytest.approx(c * base, rel=1e-9)

    @given(st.floats(min_value=0.05, max_value=20.0))
    @settings(max_examples=60, derandomize=True)
    def test_body_scaling(self, c):
        vecs = np.array([[0.6, -0.2], [0.1, 0.9]])
        base = lg.balance_exhaustive(vecs, lg.Ball(1.0, dim=2)).radius
        scaled = lg.balance_exhaustive(vecs, lg.Ball(c, dim=2)).radius
        assert scaled == pytest.approx(base / c, rel=1e-9)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(6)
        vecs = rng.standard_normal((7, 2))
        base = lg.balance_exhaustive(vecs, _ball(2)).radius
        for _ in range(5):
            perm = rng.permutation(7)
            assert lg.balance_exhaustive(vecs[perm], _ball(2)).radius == \
                pytest.approx(base, abs=1e-12)


class TestBalanceHeuristic:
    def test_cancellation_found(self):
        r = lg.balance_heuristic([[1.0, 0.0], [1.0, 0.0]], _ball(2), restarts=1, seed=0)
        assert r.radius == 0.0

    def test_dominates_exhaustive(self):
        rng = np.random.default_rng(3)
        for k in (4, 8, 12):
            vecs = rng.standard_normal((k, 3))
            ex = lg.balance_exhaustive(vecs, _ball(3)).radius
            he = lg.balance_heuristic(vecs, _ball(3), restarts=6, seed=1).radius
            assert he >= ex - 1e-12

    def test_within_factor_two_on_unit_vectors(self):
        rng = np.random.default_rng(5)
        body = lg.Ball(1.0, dim=10)
        for trial in range(100):
            vecs = rng.standard_normal((10, 10))
            vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
            ex = lg.balance_exhaustive(vecs, body).radius
            he = lg.balance_heuristic(vecs, body, restarts=8, seed=trial).radius
            assert he <= 2.0 * ex + 1e-9 or ex < 1e-9

    def test_deterministic(self):
        rng = np.random.default_rng(8)
        vecs = rng.standard_normal((9, 2))
        a = lg.balance_heuristic(vecs, _ball(2), restarts=4, seed=5)
        b = lg.balance_heuristic(vecs, _ball(2), restarts=4, seed=5)
        assert a.radius == b.radius and a.signs == b.signs


class TestBetaSearch:
    def test_1d_ball_vs_cube(self):
        radius, witness = lg.beta_lower_bound_search(1, _ball(1), lg.AxisBox([0.5]),
                                                     restarts=6, seed=3)
        assert radius == pytest.approx(2.0, abs=1e-9)
        assert abs(abs(witness[0, 0]) - 1.0) < 1e-9

    def test_2d_ball_vs_ball(self):
        # oracle: discretized pairs on the circle peak at orthonormal pairs
        angles = np.linspace(0.0, math.pi, 200, endpoint=False)
        best = 0.0
        for da in angles:
            u1 = np.array([1.0, 0.0])
            u2 = np.array([math.cos(da), math.sin(da)])
            best = max(best, lg.balance_exhaustive([u1, u2], _ball(2)).radius)
        assert best == pytest.approx(math.sqrt(2.0), abs=1e-3)
        radius, _ = lg.beta_lower_bound_search(2, _ball(2), _ball(2), restarts=24, seed=3)
        assert radius == pytest.approx(math.sqrt(2.0), abs=1e-4)
        assert radius <= math.sqrt(2.0) + 1e-9  # lower bound never overshoots

    def test_deterministic(self):
        r1, _ = lg.beta_lower_bound_search(2, _ball(2), lg.AxisBox([0.5, 0.5]),
                                           restarts=4, seed=11)
        r2, _ = lg.beta_lower_bound_search(2, _ball(2), lg.AxisBox([0.5, 0.5]),
                                           restarts=4, seed=11)
        assert r1 == r2


class TestEllipsoidFormulas:
    def test_printed_values(self):
        assert lg.beta_ellipsoid_formula([3.0, 4.0]) == pytest.approx(5.0)
        assert lg.beta_ellipsoid_formula([1.0]) == pytest.approx(1.0)
        assert lg.alpha_ellipsoid_formula([3.0, 4.0]) == pytest.approx(2.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            lg.beta_ellipsoid_formula([1.0, -2.0])

    def test_1d_convention_oracle(self):
        # The decisive check: for a 1-d ellipsoid with coefficient alpha the
        # brute-force balancing radius equals alpha itself exactly when the
        # coefficient multiplies the coordinate (body semiaxis = 1/alpha).
        for alpha in (0.4, 1.0, 2.7):
            body = lg.ellipsoid_for_formula([alpha])
            assert body.semiaxes[0] == pytest.approx(1.0 / alpha)
            brute = min(body.gauge(np.array([s * 1.0]))
                        for s in (1, -1))  # worst input u = +-1 on the ball boundary
            assert brute == pytest.approx(lg.beta_ellipsoid_formula([alpha]), rel=1e-12)
        assert "reciprocal semiaxes" in ELLIPSOID_FORMULA_CONVENTION

    def test_search_consistent_with_formula_2d(self):
        alphas = [0.8, 1.3]
        body = lg.ellipsoid_for_formula(alphas)
        radius, _ = lg.beta_lower_bound_search(2, _ball(2), body, restarts=24, seed=1)
        formula = lg.beta_ellipsoid_formula(alphas)
        assert radius <= formula + 1e-9
        assert radius >= 0.95 * formula


class TestAlphaSearch:
    def test_1d_ratio_is_one(self):
        ratio, lat = lg.alpha_lower_bound_search(1, _ball(1), lg.AxisBox([0.5]),
                                                 restarts=4, seed=2)
        assert ratio == pytest.approx(1.0, abs=1e-9)

    def test_every_1d_lattice_gives_one(self):
        for t in (0.3, 1.0, 4.2):
            lower, upper = lg.covering_radius(lg.Lattice([[t]]), lg.AxisBox([0.5]), 4)
            lam = lg.nth_minimum(lg.Lattice([[t]]), _ball(1))
            assert lower / lam == pytest.approx(1.0, rel=1e-12)

    def test_alpha_below_beta_on_same_pair(self):
        u, v = _ball(2), lg.AxisBox([0.5, 0.5])
        alpha, _ = lg.alpha_lower_bound_search(2, u, v, restarts=6, seed=4, resolution=8)
        beta, _ = lg.beta_lower_bound_search(2, u, v, restarts=24, seed=4)
        assert alpha <= beta + 1e-6

    def test_corollary_bound_when_measure_at_least_half(self):
        # calibrated cube: gaussian measure 1/2, so the ratio obeys 1/theta
        s = lg.calibrate_scale(lg.AxisBox([0.5, 0.5]), 0.5, tol=1e-12)
        v = lg.AxisBox([0.5 * s, 0.5 * s])
        ratio, _ = lg.alpha_lower_bound_search(2, _ball(2), v, restarts=6, seed=1,
                                               resolution=8)
        assert ratio <= 1.0 / lg.theta() + 1e-9
