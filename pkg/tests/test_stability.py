"""Tests for the max-stability likelihood-ratio tests and block selection."""

import json

import numpy as np
import pytest
from scipy.stats import chi2, kstest

from maxstab import (
    BlockFrame,
    DataTreatment,
    GevParams,
    blocked_frame,
    blocked_rebase,
    gev_sample,
    lr_test,
    max_stability_map,
    sequential_selection,
    test_blocksize,
    truncated_gev_sample,
)
from maxstab.stability import TestReport

TRUTH = GevParams(0.0, 1.0, 0.1)


def null_frame(shape, seed) -> BlockFrame:
    return BlockFrame(gev_sample(TRUTH, shape, np.random.default_rng(seed)))


class TestReportType:
    def test_validation(self):
        rep = lr_test(null_frame((40, 3), 1), "a1")
        import dataclasses
        with pytest.raises(ValueError):
            dataclasses.replace(rep, statistic=-0.5)
        with pytest.raises(ValueError):
            dataclasses.replace(rep, df=4)
        with pytest.raises(ValueError):
            dataclasses.replace(rep, p_value=1.5)

    def test_json_schema(self):
        rep = lr_test(null_frame((40, 3), 2), "a2", m=5)
        d = json.loads(json.dumps(rep.to_dict()))
        assert set(d) == {"m", "c", "alternative", "statistic", "df", "p_value",
                          "null_params", "alt_params", "warnings"}
        assert d["m"] == 5 and d["c"] == 3 and d["alternative"] == "a2"
        assert set(d["null_params"]) == {"mu", "sigma", "xi"}
        assert set(d["alt_params"]) == {"mu", "sigma", "xi", "nu", "phi"}
        assert d["warnings"] == []

    def test_dep_param_names_by_kind(self):
        frame = null_frame((40, 3), 3)
        assert "omega" in lr_test(frame, "a1").to_dict()["alt_params"]
        assert "zeta" in lr_test(frame, "a3").to_dict()["alt_params"]


class TestLrTest:
    def test_pvalue_is_chisq_tail(self):
        frame = null_frame((60, 4), 11)
        for kind, df in (("a1", 1), ("a2", 2), ("a3", 3)):
            rep = lr_test(frame, kind)
            assert rep.df == df
            assert rep.p_value == pytest.approx(float(chi2.sf(rep.statistic, df)))
            assert rep.statistic >= 0.0
            assert rep.factor_c == 4 and rep.m == 1

    def test_alternative_nesting(self):
        for seed in range(5):
            frame = null_frame((50, 3), 100 + seed)
            s1 = lr_test(frame, "a1").statistic
            s2 = lr_test(frame, "a2").statistic
            s3 = lr_test(frame, "a3").statistic
            assert s3 >= s2 - 1e-6
            assert s3 >= s1 - 1e-6

    def test_statistic_affine_invariant(self):
        x = gev_sample(TRUTH, (80, 4), np.random.default_rng(12))
        for kind in ("a1", "a2", "a3"):
            a = lr_test(BlockFrame(x), kind).statistic
            b = lr_test(BlockFrame(2.5 * x - 4.0), kind).statistic
            assert a == pytest.approx(b, abs=1e-8)

    def test_detects_shifted_maximum(self):
        # maxima displaced from the stability map by +0.8: every family rejects
        rng = np.random.default_rng(13)
        n, m = 300, 4
        pm = max_stability_map(TRUTH, m)
        maxima = gev_sample(GevParams(pm.mu + 0.8, pm.sigma, pm.xi), n, rng)
        rows = np.empty((n, m))
        for i in range(n):
            rows[i, :-1] = truncated_gev_sample(TRUTH, -np.inf, maxima[i], rng, size=m - 1)
            rows[i, -1] = maxima[i]
        for kind in ("a1", "a2", "a3"):
            assert lr_test(BlockFrame(rows), kind).p_value < 1e-6

    def test_null_pvalues_approximately_uniform(self):
        rng = np.random.default_rng(11)
        ps = [lr_test(BlockFrame(gev_sample(TRUTH, (60, 5), rng)), "a1").p_value
              for _ in range(150)]
        assert kstest(ps, "uniform").statistic < 0.12


class TestBlockedRebase:
    def test_identity_when_c_is_one(self):
        frame = null_frame((10, 3), 21)
        assert blocked_rebase(frame, 1) is frame

    def test_grouping_arithmetic(self):
        frame = null_frame((10, 3), 22)
        with pytest.warns(UserWarning, match="dropped 2"):
            sup = blocked_rebase(frame, 4)
        assert sup.blocks.shape == (2, 12)

    def test_rows_are_sorted_pools_of_constituents(self):
        frame = null_frame((9, 3), 23)
        sup = blocked_rebase(frame, 3)
        for i in range(3):
            pooled = np.sort(frame.blocks[3 * i:3 * i + 3].ravel())
            assert np.array_equal(sup.blocks[i], pooled)

    def test_super_maxima_match_running_maxima_of_series(self):
        rng = np.random.default_rng(24)
        raw = gev_sample(TRUTH, 60, rng)
        frame = BlockFrame(raw.reshape(20, 3))
        sup = blocked_rebase(frame, 5)
        assert np.allclose(sup.maxima, raw.reshape(4, 15).max(axis=1))

    def test_too_few_super_blocks(self):
        with pytest.raises(ValueError):
            blocked_rebase(null_frame((5, 2), 25), 3)

    def test_treatment_preserved(self):
        t = DataTreatment(delta=0.5, u=-1.0)
        frame = BlockFrame(gev_sample(TRUTH, (8, 2), np.random.default_rng(26)), t)
        assert blocked_rebase(frame, 2).treatment == t


class TestBlockedFrame:
    def test_hand_computed_layout(self):
        series = np.arange(24.0)
        frame, dropped = blocked_frame(series, m=2, c=3)
        assert dropped == 0
        want = np.array([[1, 3, 5], [7, 9, 11], [13, 15, 17], [19, 21, 23]], dtype=float)
        assert np.array_equal(frame.blocks, want)

    def test_dropped_count(self):
        frame, dropped = blocked_frame(np.arange(25.0), m=2, c=3)
        assert frame.blocks.shape == (4, 3)
        assert dropped == 1
        frame, dropped = blocked_frame(np.arange(29.0), m=2, c=3)
        assert dropped == 5  # one spare sub-block maximum plus one raw value

    def test_m_one_uses_raw_values(self):
        series = np.array([3.0, 1.0, 2.0, 5.0, 0.0, 4.0])
        frame, _ = blocked_frame(series, m=1, c=2)
        assert np.array_equal(frame.blocks, [[1, 3], [2, 5], [0, 4]])

    def test_treatment_passthrough(self):
        t = DataTreatment(delta=1.0)
        frame, _ = blocked_frame(np.arange(12.0), m=1, c=2, treatment=t)
        assert frame.treatment == t

    def test_validation(self):
        with pytest.raises(ValueError):
            blocked_frame(np.ones((3, 4)), 1, 2)
        with pytest.raises(ValueError):
            blocked_frame(np.arange(20.0), 0, 2)
        with pytest.raises(ValueError):
            blocked_frame(np.arange(20.0), 2, 1)
        with pytest.raises(ValueError):
            blocked_frame(np.arange(7.0), 2, 2)  # shorter than 2 super-blocks


class TestTestBlocksize:
    def test_matches_manual_frame(self):
        series = gev_sample(TRUTH, 600, np.random.default_rng(31))
        rep = test_blocksize(series, m=3, c=2, alt_kind="a2")
        frame, _ = blocked_frame(series, 3, 2)
        manual = lr_test(frame, "a2", m=3)
        assert rep.statistic == manual.statistic
        assert rep.p_value == manual.p_value
        assert rep.m == 3 and rep.factor_c == 2

    def test_dropped_observations_reported(self):
        series = gev_sample(TRUTH, 603, np.random.default_rng(32))
        rep = test_blocksize(series, m=3, c=2)
        assert any("dropped 3" in w for w in rep.warnings)

    def test_null_series_usually_accepts(self):
        series = gev_sample(TRUTH, 1000, np.random.default_rng(33))
        rep = test_blocksize(series, m=2, c=2)
        assert 0.0 <= rep.p_value <= 1.0


class TestSequentialSelection:
    def test_null_selects_smallest_grid_value(self):
        rng = np.random.default_rng(21)
        picks = [sequential_selection(gev_sample(TRUTH, 400, rng), [1, 2, 4], c=2).selected
                 for _ in range(60)]
        assert np.mean([p == 1 for p in picks]) >= 0.85

    def test_trail_stops_at_acceptance(self):
        series = gev_sample(TRUTH, 800, np.random.default_rng(41))
        sel = sequential_selection(series, [1, 2, 4], c=2)
        assert sel.accepted
        assert sel.reports[-1].m == sel.selected
        assert all(r.p_value < sel.level for r in sel.reports[:-1])

    def test_none_accepted_marker(self):
        # a level this strict rejects everything on continuous data
        series = gev_sample(TRUTH, 400, np.random.default_rng(42))
        sel = sequential_selection(series, [1, 2], c=2, level=1 - 1e-9)
        assert sel.selected is None
        assert not sel.accepted
        assert len(sel.reports) == 2

    def test_validation(self):
        series = gev_sample(TRUTH, 100, np.random.default_rng(43))
        with pytest.raises(ValueError):
            sequential_selection(series, [], c=2)
        with pytest.raises(ValueError):
            sequential_selection(series, [2, 2], c=2)
        with pytest.raises(ValueError):
            sequential_selection(series, [1, 2, 64], c=2)  # 64*2*2 > 100
        with pytest.raises(ValueError):
            sequential_selection(series, [1, 2], c=2, level=0.0)
