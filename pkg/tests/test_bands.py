"""Tests for the bootstrap-calibrated simultaneous PP-plot bands."""

import dataclasses

import numpy as np
import pytest
from scipy.stats import binom, ks_2samp

from maxstab import (
    BlockFrame,
    DataTreatment,
    GevParams,
    alpha_b,
    band_covers,
    default_positions,
    ecdf_at,
    fit_gev,
    fit_null,
    gev_cdf,
    gev_quantile,
    gev_sample,
    impute_rounded,
    max_stability_map,
    parametric_band,
    pivot_series,
    simultaneous_band,
)

GUMBEL = GevParams(0.0, 1.0, 0.0)


class TestAlphaB:
    def test_single_point_hand_value(self):
        # ECDF(0.5) = 1: H(1;1,.5) = 1 and 1 - H(0;1,.5) = 0.5, doubled then clamped
        assert alpha_b([0.5], [0.5]) == 1.0

    def test_matches_literal_formula(self):
        rng = np.random.default_rng(1)
        pos = default_positions(40)
        for _ in range(5):
            v = rng.uniform(size=40)
            brute = 1.0
            for nu in pos:
                count = int(np.sum(v <= nu))
                brute = min(brute, binom.cdf(count, 40, nu), 1 - binom.cdf(count - 1, 40, nu))
            assert alpha_b(v, pos) == pytest.approx(min(1.0, 2.0 * brute), abs=1e-12)

    def test_bounded_in_unit_interval(self):
        rng = np.random.default_rng(2)
        pos = default_positions(25)
        for _ in range(50):
            a = alpha_b(rng.uniform(size=25), pos)
            assert 0.0 < a <= 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            alpha_b([], [0.5])
        with pytest.raises(ValueError):
            alpha_b([0.5], [0.0])
        with pytest.raises(ValueError):
            alpha_b([0.5], [1.0])


class TestPositionsAndEcdf:
    def test_default_positions(self):
        pos = default_positions(250)
        assert pos.size == 100
        assert pos[0] == pytest.approx(1 / 101)
        assert pos[-1] == pytest.approx(100 / 101)
        assert default_positions(7).size == 7

    def test_ecdf_matches_brute_force(self):
        rng = np.random.default_rng(3)
        v = rng.uniform(size=30)
        pos = default_positions(12)
        want = [np.mean(v <= nu) for nu in pos]
        assert np.allclose(ecdf_at(pos, v), want)


class TestSimultaneousBand:
    def test_pointwise_binomial_interval(self):
        band = simultaneous_band(100, positions=np.array([0.5]), alpha=0.05, B=300,
                                 rng=np.random.default_rng(4))
        assert band.pointwise_lo[0] == pytest.approx(0.40)
        assert band.pointwise_hi[0] == pytest.approx(0.60)

    def test_contains_pointwise_band(self):
        band = simultaneous_band(80, alpha=0.1, B=400, rng=np.random.default_rng(5))
        assert band.alpha_star <= band.alpha
        assert np.all(band.simultaneous_lo <= band.pointwise_lo)
        assert np.all(band.simultaneous_hi >= band.pointwise_hi)

    def test_true_uniform_coverage_near_half(self):
        rng = np.random.default_rng(6)
        band = simultaneous_band(100, alpha=0.5, B=1000, rng=rng)
        hits = sum(band_covers(band, rng.uniform(size=100)) for _ in range(300))
        assert 0.40 <= hits / 300 <= 0.61

    def test_alpha_star_decreases_with_more_positions(self):
        stars = []
        for N in (10, 50, 99):
            pos = np.arange(1, N + 1) / (N + 1.0)
            band = simultaneous_band(100, positions=pos, alpha=0.05, B=1000,
                                     rng=np.random.default_rng(7))
            stars.append(band.alpha_star)
        assert stars[0] > stars[2]
        assert stars[0] >= stars[1] - 0.003
        assert stars[1] >= stars[2] - 0.003

    def test_validation(self):
        rng = np.random.default_rng(8)
        with pytest.raises(ValueError):
            simultaneous_band(100, B=100, rng=rng)
        with pytest.raises(ValueError):
            simultaneous_band(0, rng=rng)
        with pytest.raises(ValueError):
            simultaneous_band(100, B=300, rng=None)


class TestImputeRounded:
    def test_zero_delta_identity(self):
        assert impute_rounded(1.7, GUMBEL, 0.0, -np.inf, np.random.default_rng(9)) == 1.7

    def test_draws_inside_interval(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            y = impute_rounded(1.0, GUMBEL, 0.5, 0.9, rng)
            assert 0.9 <= y <= 1.25

    def test_empty_interval_raises(self):
        with pytest.raises(ValueError):
            impute_rounded(1.0, GUMBEL, 0.5, 2.0, np.random.default_rng(11))

    def test_matches_probability_scale_imputation(self):
        # the band internals impute on the probability scale; both paths must
        # draw from the same truncated law
        rng = np.random.default_rng(12)
        direct = np.array([impute_rounded(1.0, GUMBEL, 1.0, -np.inf, rng)
                           for _ in range(2000)])
        lo, hi = gev_cdf(0.5, GUMBEL), gev_cdf(1.5, GUMBEL)
        w = lo + rng.uniform(size=2000) * (hi - lo)
        via_prob = gev_quantile(w, GUMBEL)
        assert ks_2samp(direct, via_prob).pvalue > 0.01


class TestPivotSeries:
    def test_plain_pivots_are_cdf_values(self):
        x = gev_sample(GUMBEL, 60, np.random.default_rng(13))
        fit = fit_gev(x, want_cov=False)
        series = pivot_series(x, fit)
        assert np.allclose(series.values, np.sort(gev_cdf(x, fit.params)))
        assert series.n_retained == 60
        assert series.kind == "all_observations"

    def test_censored_pivots_left_truncated(self):
        x = gev_sample(GUMBEL, 200, np.random.default_rng(14))
        u = float(np.quantile(x, 0.35))
        t = DataTreatment(u=u)
        fit = fit_gev(x, t, want_cov=False)
        series = pivot_series(x, fit, treatment=t)
        kept = x[x > u]
        fu = gev_cdf(u, fit.params)
        want = np.sort((gev_cdf(kept, fit.params) - fu) / (1 - fu))
        assert series.n_retained == kept.size < 200
        assert np.allclose(series.values, want)

    def test_block_maximum_kind_uses_stability_map(self):
        frame = BlockFrame(gev_sample(GUMBEL, (50, 4), np.random.default_rng(15)))
        fit = fit_null(frame, want_cov=False)
        series = pivot_series(frame, fit, kind="block_maximum")
        law = max_stability_map(fit.params, 4)
        assert np.allclose(series.values, np.sort(gev_cdf(frame.maxima, law)))
        assert series.n_retained == 50

    def test_validation(self):
        x = gev_sample(GUMBEL, 30, np.random.default_rng(16))
        fit = fit_gev(x, want_cov=False)
        with pytest.raises(ValueError):
            pivot_series(x, fit, kind="maxima")
        with pytest.raises(ValueError):
            pivot_series(np.round(x), fit, treatment=DataTreatment(delta=1.0), rng=None)


class TestParametricBand:
    def test_bit_reproducible(self):
        x = gev_sample(GUMBEL, 60, np.random.default_rng(17))
        a_band, a_piv = parametric_band(x, B=200, rng=np.random.default_rng(18))
        b_band, b_piv = parametric_band(x, B=200, rng=np.random.default_rng(18))
        assert a_band.alpha_star == b_band.alpha_star
        assert np.array_equal(a_band.simultaneous_lo, b_band.simultaneous_lo)
        assert np.array_equal(a_piv.values, b_piv.values)

    def test_estimated_pivots_raise_calibrated_level(self):
        # super-uniform pivots stay inside pointwise bands too easily, so the
        # bootstrap sets alpha_star above alpha (narrower band than naive)
        x = gev_sample(GUMBEL, 100, np.random.default_rng(19))
        band, _ = parametric_band(x, B=200, rng=np.random.default_rng(20))
        assert band.alpha_star > band.alpha
        assert band.B == 200

    def test_censored_keeps_n_positions(self):
        rng = np.random.default_rng(21)
        x = gev_sample(GUMBEL, 120, rng)
        u = float(np.quantile(x, 0.3))
        band, piv = parametric_band(x, treatment=DataTreatment(u=u), N=40, B=200,
                                    rng=np.random.default_rng(22))
        assert piv.n_retained < 120
        assert band.positions.size == 40
        assert band.n == piv.n_retained

    def test_rounded_frame_runs(self):
        raw = gev_sample(GevParams(10.0, 2.0, 0.1), (40, 3), np.random.default_rng(23))
        frame = BlockFrame(np.round(raw), DataTreatment(delta=1.0))
        band, piv = parametric_band(frame, kind="block_maximum", B=200,
                                    rng=np.random.default_rng(24))
        assert piv.n_retained == 40
        assert np.all(band.simultaneous_lo <= band.simultaneous_hi)

    def test_validation(self):
        x = gev_sample(GUMBEL, 50, np.random.default_rng(25))
        rng = np.random.default_rng(26)
        with pytest.raises(ValueError):
            parametric_band(x, B=150, rng=rng)
        with pytest.raises(ValueError):
            parametric_band(x, B=200, rng=None)
        with pytest.raises(ValueError):
            parametric_band(x, kind="rows", B=200, rng=rng)
        bad_fit = dataclasses.replace(fit_gev(x, want_cov=False), converged=False)
        with pytest.raises(ValueError):
            parametric_band(x, fit=bad_fit, B=200, rng=rng)


class TestBandCsvRows:
    def test_schema_and_values(self):
        from maxstab.bands import band_csv_rows
        x = gev_sample(GUMBEL, 60, np.random.default_rng(27))
        band, piv = parametric_band(x, B=200, rng=np.random.default_rng(28))
        header, rows = band_csv_rows(band, piv)
        assert header == ["nu", "point_lo", "point_hi", "simul_lo", "simul_hi", "ecdf_observed"]
        assert len(rows) == band.positions.size
        e = ecdf_at(band.positions, piv.values)
        assert rows[3][5] == pytest.approx(e[3])
        assert rows[0][0] == pytest.approx(band.positions[0])
