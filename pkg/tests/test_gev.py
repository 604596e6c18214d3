"""Distribution-level checks: closed forms, quadrature oracles, and properties."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from maxstab.gev import (
    GevParams,
    beta_m1_pivot,
    extremal_index_map,
    gev_cdf,
    gev_logcdf,
    gev_logpdf,
    gev_pdf,
    gev_quantile,
    gev_sample,
    max_stability_map,
    truncated_gev_sample,
)

param_strategy = st.builds(
    GevParams,
    mu=st.floats(-10, 10),
    sigma=st.floats(0.1, 10),
    xi=st.floats(-0.45, 1.0),
)


class TestCdf:
    def test_gumbel_at_location(self):
        assert gev_cdf(0.0, GevParams(0, 1, 0)) == pytest.approx(math.exp(-1), abs=1e-12)

    def test_xi_branch_continuity_at_zero(self):
        tiny = GevParams(0, 1, 1e-12)
        zero = GevParams(0, 1, 0)
        assert abs(gev_cdf(0.0, tiny) - gev_cdf(0.0, zero)) < 1e-9

    def test_cdf_matches_pdf_quadrature(self):
        p = GevParams(0, 1, 0.1)
        val, err = integrate.quad(lambda t: gev_pdf(t, p), -1 / 0.1, 2.0, limit=200)
        assert gev_cdf(2.0, p) == pytest.approx(val, abs=1e-8)

    def test_exact_zero_one_outside_support(self):
        heavy = GevParams(0, 1, 0.5)  # lower endpoint -2
        assert gev_cdf(-2.0, heavy) == 0.0
        assert gev_cdf(-5.0, heavy) == 0.0
        bounded = GevParams(0, 1, -0.5)  # upper endpoint 2
        assert gev_cdf(2.0, bounded) == 1.0
        assert gev_cdf(10.0, bounded) == 1.0

    @given(p=param_strategy, x=st.floats(-50, 50))
    def test_monotone_in_x(self, p, x):
        assert gev_cdf(x, p) <= gev_cdf(x + 0.5, p) + 1e-15


class TestPdf:
    @pytest.mark.parametrize("xi", [-0.4, -0.1, 0.0, 0.1, 0.5, 1.0])
    def test_normalization(self, xi):
        p = GevParams(0.3, 1.7, xi)
        a = gev_quantile(1e-13, p)
        b = gev_quantile(1 - 1e-7, p)
        val, err = integrate.quad(
            lambda t: gev_pdf(t, p),
            a,
            b,
            points=[gev_quantile(q, p) for q in (0.05, 0.5, 0.9, 0.999)],
            limit=400,
        )
        assert val == pytest.approx(1.0, abs=1e-6)

    def test_logpdf_outside_support(self):
        p = GevParams(0, 1, 0.5)
        assert gev_logpdf(-3.0, p) == -math.inf
        assert gev_pdf(-3.0, p) == 0.0

    def test_pdf_is_cdf_derivative(self):
        p = GevParams(0, 1, 0.2)
        h = 1e-5
        fd = (gev_cdf(1.0 + h, p) - gev_cdf(1.0 - h, p)) / (2 * h)
        assert gev_pdf(1.0, p) == pytest.approx(fd, rel=1e-6)

    @given(p=param_strategy, x=st.floats(-20, 20))
    @settings(max_examples=60)
    def test_pdf_matches_cdf_slope_everywhere(self, p, x):
        lo, hi = p.support()
        h = 1e-5 * max(1.0, abs(x))
        if not (lo + 10 * h < x < hi - 10 * h):
            return
        fd = (gev_cdf(x + h, p) - gev_cdf(x - h, p)) / (2 * h)
        assert gev_pdf(x, p) == pytest.approx(fd, rel=1e-5, abs=1e-12)


class TestQuantile:
    def test_gumbel_median_like_point(self):
        assert gev_quantile(math.exp(-1), GevParams(3.0, 2.0, 0)) == pytest.approx(3.0)

    def test_gumbel_closed_form(self):
        want = -math.log(-math.log(0.95))
        assert gev_quantile(0.95, GevParams(0, 1, 0)) == pytest.approx(want, abs=1e-12)
        assert want == pytest.approx(2.9702, abs=1e-4)

    def test_round_trip_random_params(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            p = GevParams(rng.uniform(-5, 5), rng.uniform(0.2, 5), rng.uniform(-0.45, 1))
            for q in (0.01, 0.5, 0.99):
                assert gev_cdf(gev_quantile(q, p), p) == pytest.approx(q, abs=1e-10)

    @pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.3])
    def test_domain_error(self, q):
        with pytest.raises(ValueError):
            gev_quantile(q, GevParams(0, 1, 0.1))

    @given(p=param_strategy, q=st.floats(1e-6, 1 - 1e-6))
    @settings(max_examples=80)
    def test_round_trip_property(self, p, q):
        assert gev_cdf(gev_quantile(q, p), p) == pytest.approx(q, abs=1e-8)


class TestMaxStabilityMap:
    def test_identity_at_one(self):
        p = GevParams(1.2, 0.7, -0.3)
        assert max_stability_map(p, 1.0) == p

    def test_direct_evaluation_m10(self):
        mapped = max_stability_map(GevParams(0, 1, 0.1), 10)
        assert mapped.mu == pytest.approx((10**0.1 - 1) / 0.1, abs=1e-9)
        assert mapped.sigma == pytest.approx(10**0.1, abs=1e-9)
        assert mapped.xi == 0.1

    @pytest.mark.parametrize("xi", [-0.3, 0.0, 0.4])
    def test_defining_identity(self, xi):
        p = GevParams(0.5, 2.0, xi)
        m = 7
        mapped = max_stability_map(p, m)
        rng = np.random.default_rng(0)
        x = gev_quantile(rng.uniform(0.01, 0.99, size=50), p)
        assert np.allclose(gev_cdf(x, p) ** m, gev_cdf(x, mapped), atol=1e-10)

    @given(
        p=param_strategy,
        m1=st.floats(0.5, 40),
        m2=st.floats(0.5, 40),
    )
    def test_group_property(self, p, m1, m2):
        twice = max_stability_map(max_stability_map(p, m1), m2)
        once = max_stability_map(p, m1 * m2)
        assert twice.mu == pytest.approx(once.mu, abs=1e-10 * max(1, abs(once.mu)))
        assert twice.sigma == pytest.approx(once.sigma, rel=1e-10)


class TestExtremalIndexMap:
    def test_identity(self):
        p = GevParams(0, 1, 0.2)
        assert extremal_index_map(p, 1.0) == p

    def test_gumbel_half_then_two(self):
        p = GevParams(0, 1, 0)
        composed = extremal_index_map(max_stability_map(p, 2), 0.5)
        assert composed.mu == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("theta", [0.0, -0.5, 1.5])
    def test_domain_error(self, theta):
        with pytest.raises(ValueError):
            extremal_index_map(GevParams(0, 1, 0), theta)


class TestTruncatedSampling:
    def test_unrestricted_reduces_to_plain_gev(self):
        p = GevParams(0, 1, 0.1)
        rng = np.random.default_rng(11)
        draws = truncated_gev_sample(p, -math.inf, math.inf, rng, size=10_000)
        ks = stats.kstest(draws, lambda t: gev_cdf(t, p))
        assert ks.pvalue > 0.01

    def test_bounds_respected(self):
        p = GevParams(0, 1, -0.2)
        rng = np.random.default_rng(3)
        draws = truncated_gev_sample(p, 0.5, 2.0, rng, size=2000)
        assert np.all(draws >= 0.5) and np.all(draws <= 2.0)

    def test_truncated_mean_matches_quadrature(self):
        p = GevParams(0, 1, 0.15)
        lo, hi = gev_quantile(0.5, p), gev_quantile(0.9, p)
        val, _ = integrate.quad(lambda t: t * gev_pdf(t, p) / 0.4, lo, hi, limit=200)
        rng = np.random.default_rng(5)
        draws = truncated_gev_sample(p, lo, hi, rng, size=100_000)
        mc_se = draws.std() / math.sqrt(draws.size)
        assert abs(draws.mean() - val) < 3 * mc_se

    def test_empty_interval_error(self):
        p = GevParams(0, 1, -0.5)  # support ends at 2
        with pytest.raises(ValueError):
            truncated_gev_sample(p, 5.0, 6.0, np.random.default_rng(0))


class TestBetaPivot:
    def test_m1_is_cdf(self):
        p = GevParams(0.4, 1.1, 0.3)
        assert beta_m1_pivot(1.0, p, 1) == pytest.approx(gev_cdf(1.0, p), abs=1e-14)

    def test_equals_cdf_of_mapped_params(self):
        p = GevParams(0, 1, -0.2)
        mapped = max_stability_map(p, 9)
        x = np.linspace(-2, 4, 25)
        assert np.allclose(beta_m1_pivot(x, p, 9), gev_cdf(x, mapped), atol=1e-12)

    def test_simulated_block_maxima_pivot_uniform(self):
        p = GevParams(0, 1, 0.1)
        m, n = 6, 5000
        rng = np.random.default_rng(17)
        maxima = gev_sample(p, (n, m), rng).max(axis=1)
        ks = stats.kstest(beta_m1_pivot(maxima, p, m), "uniform")
        assert ks.pvalue > 0.01


class TestBranchContinuity:
    def test_all_operations_continuous_in_xi(self):
        x = np.linspace(-3, 5, 17)
        qs = np.linspace(0.05, 0.95, 10)
        for sign in (+1.0, -1.0):
            near = GevParams(0, 1, sign * 1e-12)
            zero = GevParams(0, 1, 0)
            assert np.allclose(gev_cdf(x, near), gev_cdf(x, zero), atol=1e-8)
            assert np.allclose(gev_pdf(x, near), gev_pdf(x, zero), atol=1e-8)
            assert np.allclose(gev_logpdf(x, near), gev_logpdf(x, zero), atol=1e-8)
            assert np.allclose(gev_logcdf(x, near), gev_logcdf(x, zero), atol=1e-8)
            assert np.allclose(gev_quantile(qs, near), gev_quantile(qs, zero), atol=1e-8)
            mapped_near = max_stability_map(near, 12)
            mapped_zero = max_stability_map(zero, 12)
            assert mapped_near.mu == pytest.approx(mapped_zero.mu, abs=1e-8)
            assert mapped_near.sigma == pytest.approx(mapped_zero.sigma, abs=1e-8)

    def test_large_m_pivot_stability(self):
        # log-space evaluation keeps F^m meaningful for m in the hundreds
        p = GevParams(0, 1, 0.1)
        big = max_stability_map(p, 400)
        x = gev_quantile(0.5, big)
        assert beta_m1_pivot(x, p, 400) == pytest.approx(0.5, abs=1e-9)


class TestParamsValidation:
    def test_sigma_positive(self):
        with pytest.raises(ValueError):
            GevParams(0, 0, 0.1)
        with pytest.raises(ValueError):
            GevParams(0, -1, 0.1)

    def test_support_membership(self):
        p = GevParams(0, 2, 0.5)  # support (-4, inf)
        assert bool(p.in_support(0.0))
        assert not bool(p.in_support(-5.0))
        assert np.array_equal(p.in_support([-5.0, 0.0]), [False, True])
