"""Information-matrix checks against independent oracles.

The frozen values below come from scripts/gen_fisher_oracle.py: scores by
symbolic differentiation of the log-density, expectations by high-precision
quadrature. The in-suite Monte Carlo and finite-difference oracles re-derive
the same quantities through yet another route.
"""

import math

import numpy as np
import pytest
from scipy import integrate

from maxstab.fisher import (
    are_overall,
    ci_length_ratio,
    info_block_max,
    info_for_params,
    return_level,
    return_level_gradient,
    stability_jacobian,
    standard_info_K,
)
from maxstab.gev import GevParams, gev_logpdf, gev_quantile, gev_sample, max_stability_map

# upper-triangle order: (mm, ms, mx, ss, sx, xx)
QUAD_ORACLE_K = {
    -0.45: [2.8778360787305501555, 4.4199282909490751816, 8.3683497950668643559,
            10.37086115122774078, 17.728060739679160446, 36.583082347340163014],
    -0.4: [1.6527037363195690992, 1.8979709675796970943, 3.5372985046157163229,
           5.4104564859011786018, 7.864666834553710851, 16.905985266216684179],
    -0.2: [0.95308303924020295, 0.10849634129980123, 0.70543397196520805,
           2.2578874319929387, 1.5345901098340244, 4.4907318198387614],
    0.0: [1.0, -0.42278433509846714, 0.41184033042643969,
          1.8236806608528794, 0.33248490716027406, 2.4236060551770285],
    0.2: [1.2776598972044284, -0.87928703162357842, 0.47974709386376671,
          1.8513728861250738, -0.24303248681642043, 1.7380192363593447],
    0.5: [2.25, -1.841319223641726, 0.92694247857852284,
          2.3652768945669038, -0.91029919211781807, 1.4748118336151745],
    1.0: [8.0, -6.0, 3.1544313298030657,
          5.0, -2.5772156649015329, 1.9781119906559451],
}

QUAD_ORACLE_SCALED = {
    (1.5, 2.0, 0.2): [0.3194149743011071, -0.2198217579058946, 0.23987354693188335,
                      0.46284322153126844, -0.12151624340821022, 1.7380192363593447],
    (-3.0, 0.5, -0.3): [4.3475927057650689172, 2.3767925811730237243, 2.6285081484219114305,
                        11.983142699319392415, 6.133987651567068339, 7.4232364610350198603],
}


def upper_triangle(mat):
    return [mat[0, 0], mat[0, 1], mat[0, 2], mat[1, 1], mat[1, 2], mat[2, 2]]


def fd_scores(x, p, h=1e-6):
    """Central-difference score vectors, independent of any closed form."""
    out = []
    for i in range(3):
        bump = np.zeros(3)
        bump[i] = h
        hi = GevParams(p.mu + bump[0], p.sigma + bump[1], p.xi + bump[2])
        lo = GevParams(p.mu - bump[0], p.sigma - bump[1], p.xi - bump[2])
        out.append((gev_logpdf(x, hi) - gev_logpdf(x, lo)) / (2 * h))
    return np.array(out)


class TestStandardK:
    @pytest.mark.parametrize("xi", sorted(QUAD_ORACLE_K))
    def test_frozen_quadrature_oracle(self, xi):
        got = upper_triangle(standard_info_K(xi))
        rtol = 2e-9 if xi == -0.45 else 1e-11
        assert np.allclose(got, QUAD_ORACLE_K[xi], rtol=rtol)

    def test_symmetry(self):
        k = standard_info_K(0.3)
        assert np.array_equal(k, k.T)

    @pytest.mark.parametrize("xi", [-0.49, -0.3, -0.1, 0.0, 0.1, 0.7, 1.5])
    def test_positive_definite(self, xi):
        np.linalg.cholesky(standard_info_K(xi))

    @pytest.mark.parametrize("xi", [-0.5, -0.6, -2.0])
    def test_domain_error(self, xi):
        with pytest.raises(ValueError):
            standard_info_K(xi)

    def test_mc_score_outer_products(self):
        # spec-level oracle: average of score outer products over 10^6 draws
        p = GevParams(0.0, 1.0, 0.2)
        rng = np.random.default_rng(42)
        x = gev_sample(p, 1_000_000, rng)
        s = fd_scores(x, p)
        k = standard_info_K(0.2)
        for a in range(3):
            for b in range(a, 3):
                prod = s[a] * s[b]
                se = prod.std() / math.sqrt(prod.size)
                assert abs(prod.mean() - k[a, b]) < 3 * se

    def test_expected_hessian_by_quadrature(self):
        # E[-d2 logf/dtheta2] via quad in x and central differences in theta
        p0 = GevParams(0.0, 1.0, 0.2)
        lo = gev_quantile(1e-12, p0)
        hi = gev_quantile(1 - 1e-9, p0)
        pts = [gev_quantile(q, p0) for q in (0.05, 0.5, 0.95)]

        def expected_loglik(mu, sg, xi):
            q = GevParams(mu, sg, xi)
            val, _ = integrate.quad(
                lambda t: gev_logpdf(t, q) * math.exp(gev_logpdf(t, p0)),
                lo, hi, points=pts, limit=400,
            )
            return val

        h = 1e-4
        theta = np.array([0.0, 1.0, 0.2])
        hess = np.zeros((3, 3))
        base = expected_loglik(*theta)
        for i in range(3):
            for j in range(i, 3):
                ei = np.eye(3)[i] * h
                ej = np.eye(3)[j] * h
                if i == j:
                    val = (expected_loglik(*(theta + ei)) - 2 * base
                           + expected_loglik(*(theta - ei))) / h**2
                else:
                    val = (expected_loglik(*(theta + ei + ej))
                           - expected_loglik(*(theta + ei - ej))
                           - expected_loglik(*(theta - ei + ej))
                           + expected_loglik(*(theta - ei - ej))) / (4 * h**2)
                hess[i, j] = hess[j, i] = val
        assert np.allclose(-hess, standard_info_K(0.2), atol=1e-4)

    def test_series_closed_form_crossover(self):
        # the two evaluation branches must agree where they meet
        for xi in (0.02, -0.02, 0.0201, -0.0201, 0.0199, -0.0199):
            from maxstab.fisher import _k_entries_closed, _k_entries_series

            # 5e-9 headroom: the closed form itself carries ~1.5e-9 float
            # cancellation noise at |xi| ~ 0.02 (the series branch is exact there)
            assert np.allclose(_k_entries_series(xi), _k_entries_closed(xi),
                               rtol=5e-9, atol=1e-11)


class TestScaledInfo:
    def test_sigma_one_reduces_to_K(self):
        p = GevParams(5.0, 1.0, 0.3)
        assert np.allclose(info_for_params(p), standard_info_K(0.3), atol=0)

    def test_entry_scaling(self):
        base = info_for_params(GevParams(0, 1, 0.1))
        scaled = info_for_params(GevParams(0, 2.5, 0.1))
        assert scaled[0, 0] == pytest.approx(base[0, 0] / 2.5**2, rel=1e-12)
        assert scaled[2, 2] == pytest.approx(base[2, 2], rel=1e-12)

    @pytest.mark.parametrize("theta", sorted(QUAD_ORACLE_SCALED))
    def test_frozen_scaled_oracle(self, theta):
        got = upper_triangle(info_for_params(GevParams(*theta)))
        assert np.allclose(got, QUAD_ORACLE_SCALED[theta], rtol=1e-9)


class TestBlockMaxInfo:
    def test_m1_identity(self):
        p = GevParams(0.3, 1.4, -0.1)
        assert np.allclose(info_block_max(p, 1), info_for_params(p), atol=1e-14)

    @pytest.mark.parametrize("xi", [-0.4, -0.2, 0.0, 0.2, 0.5])
    @pytest.mark.parametrize("m", [2, 5, 12])
    def test_determinant_identity(self, xi, m):
        p = GevParams(0.0, 1.0, xi)
        ratio = np.linalg.det(info_block_max(p, m)) / np.linalg.det(m * info_for_params(p))
        assert ratio == pytest.approx(m ** -(3.0 + 2.0 * xi), rel=1e-8)

    @pytest.mark.parametrize("xi", [-0.3, 0.0, 0.4])
    def test_jacobian_matches_finite_differences(self, xi):
        p = GevParams(0.7, 1.3, xi)
        m = 9
        h = 1e-6
        jac = stability_jacobian(p, m)
        for j, (dmu, dsg, dxi) in enumerate(np.eye(3) * h):
            hi = max_stability_map(GevParams(p.mu + dmu, p.sigma + dsg, p.xi + dxi), m)
            lo = max_stability_map(GevParams(p.mu - dmu, p.sigma - dsg, p.xi - dxi), m)
            fd = np.array([
                (hi.mu - lo.mu) / (2 * h),
                (hi.sigma - lo.sigma) / (2 * h),
                (hi.xi - lo.xi) / (2 * h),
            ])
            assert np.allclose(jac[:, j], fd, atol=1e-6)


class TestAreOverall:
    def test_m1(self):
        assert are_overall(0.3, 1) == 1.0

    def test_gumbel_halving(self):
        assert are_overall(0.0, 2) == pytest.approx(0.5, abs=1e-14)

    def test_lower_boundary_limit(self):
        for m in (2, 5, 12):
            assert abs(are_overall(-0.5 + 1e-10, m) - m ** (-2 / 3)) < 1e-9

    def test_matches_determinant_ratio_cubed(self):
        p = GevParams(0, 1, 0.25)
        m = 7
        det_ratio = (np.linalg.det(info_block_max(p, m))
                     / np.linalg.det(m * info_for_params(p)))
        assert are_overall(0.25, m) == pytest.approx(det_ratio ** (1 / 3), rel=1e-9)


class TestCiLengthRatio:
    def test_m1_is_one(self):
        for target in ("mu", "sigma", "xi"):
            assert ci_length_ratio(target, 0.1, 1) == pytest.approx(1.0, abs=1e-12)
        assert ci_length_ratio("return_level", 0.1, 1, period=20) == pytest.approx(1.0, abs=1e-12)

    def test_sigma_spot_values(self):
        # pinned against an independent quadrature of FD-score outer products
        # under the max-of-two density 2 F f (and its m=12 analogue)
        assert ci_length_ratio("sigma", 0.0, 2) == pytest.approx(0.548456374, abs=1e-6)
        assert ci_length_ratio("sigma", 0.0, 12) == pytest.approx(0.12, abs=0.02)

    def test_xi_ratio_independent_of_xi(self):
        for m in (2, 5, 12):
            a = ci_length_ratio("xi", -0.2, m)
            b = ci_length_ratio("xi", 0.3, m)
            assert abs(a - b) < 1e-8
            assert a == pytest.approx(m ** -0.5, rel=1e-8)

    def test_return_level_20_band(self):
        for xi in (-0.2, 0.0, 0.2):
            r = ci_length_ratio("return_level", xi, 12, period=20)
            assert 0.7 <= r <= 0.8

    @pytest.mark.parametrize("target", ["mu", "sigma", "xi", "return_level"])
    def test_nonincreasing_in_m(self, target):
        for xi in (-0.2, 0.0, 0.3):
            vals = [
                ci_length_ratio(target, xi, m, period=50)
                for m in (1, 2, 4, 8, 12)
            ]
            assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            ci_length_ratio("median", 0.0, 2)


class TestReturnLevel:
    def test_gradient_matches_finite_differences(self):
        p = GevParams(1.0, 2.0, 0.15)
        h = 1e-6
        grad = return_level_gradient(p, 50)
        fd = []
        for dmu, dsg, dxi in np.eye(3) * h:
            hi = return_level(GevParams(p.mu + dmu, p.sigma + dsg, p.xi + dxi), 50)
            lo = return_level(GevParams(p.mu - dmu, p.sigma - dsg, p.xi - dxi), 50)
            fd.append((hi - lo) / (2 * h))
        assert np.allclose(grad, fd, rtol=1e-6)

    def test_is_the_quantile(self):
        p = GevParams(0.5, 1.5, -0.1)
        assert return_level(p, 20) == pytest.approx(gev_quantile(1 - 1 / 20, p), abs=1e-12)
