"""Parametric-bootstrap simultaneous confidence bands for PP plots.

Pivots F(x; fitted params) of a correct model are approximately uniform,
but plugging in estimates makes them super-uniform, so binomial bands
calibrated on true uniform samples over-cover badly.  The bootstrap here
recalibrates the simultaneous level by refitting on each replicate, and
handles rounded or left-censored data by imputation and left-truncated
pivots with a random retained count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binom

from .fitting import FitResult, fit_gev, fit_null
from .gev import GevParams, gev_cdf, gev_quantile, gev_sample, max_stability_map, truncated_gev_sample
from .likelihood import BlockFrame, DataTreatment

__all__ = [
    "EcdfBand",
    "PivotSeries",
    "alpha_b",
    "band_covers",
    "default_positions",
    "ecdf_at",
    "impute_rounded",
    "parametric_band",
    "pivot_series",
    "simultaneous_band",
]

PIVOT_KINDS = ("all_observations", "block_maximum")


@dataclass(frozen=True)
class EcdfBand:
    """Pointwise and simultaneous acceptance bands for an ECDF on (0,1)."""

    positions: np.ndarray
    pointwise_lo: np.ndarray
    pointwise_hi: np.ndarray
    simultaneous_lo: np.ndarray
    simultaneous_hi: np.ndarray
    alpha: float
    alpha_star: float
    n: int
    B: int

    def __post_init__(self) -> None:
        # alpha_star may exceed alpha for estimated pivots: super-uniformity
        # shrinks the calibrated band below the naive pointwise one, which
        # is exactly how the bootstrap undoes the 97.6%-style over-coverage
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 1 or pos.size == 0 or np.any(pos <= 0.0) or np.any(pos >= 1.0):
            raise ValueError("positions must be a non-empty vector inside (0, 1)")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.alpha_star <= 1.0:
            raise ValueError(f"alpha_star must lie in (0, 1], got {self.alpha_star}")
        for name in ("pointwise_lo", "pointwise_hi", "simultaneous_lo", "simultaneous_hi"):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != pos.shape:
                raise ValueError(f"{name} must match positions in shape")
        if np.any(self.pointwise_lo > self.pointwise_hi) or \
                np.any(self.simultaneous_lo > self.simultaneous_hi):
            raise ValueError("band bounds must be ordered")


@dataclass(frozen=True)
class PivotSeries:
    """Uniform-scale pivots of the retained observations."""

    values: np.ndarray
    kind: str
    n_retained: int = field(default=-1)

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if self.kind not in PIVOT_KINDS:
            raise ValueError(f"kind must be one of {PIVOT_KINDS}, got {self.kind!r}")
        if vals.ndim != 1 or np.any(vals < 0.0) or np.any(vals > 1.0) or np.any(np.isnan(vals)):
            raise ValueError("pivot values must lie in [0, 1]")
        if self.n_retained == -1:
            object.__setattr__(self, "n_retained", vals.size)
        elif self.n_retained != vals.size:
            raise ValueError("n_retained must equal the number of pivot values")


def default_positions(n: int, cap: int = 100) -> np.ndarray:
    """N = min(n, cap) equally spaced positions i/(N+1)."""
    if n < 1:
        raise ValueError(f"need a positive sample size, got {n}")
    N = min(int(n), int(cap))
    return np.arange(1, N + 1) / (N + 1.0)


def ecdf_at(positions, values) -> np.ndarray:
    """Empirical distribution function of `values` at each position."""
    v = np.sort(np.asarray(values, dtype=float))
    return np.searchsorted(v, np.asarray(positions, dtype=float), side="right") / max(v.size, 1)


def alpha_b(v, positions) -> float:
    """Smallest level whose pointwise binomial band the whole ECDF escapes.

    2 min over positions of min{H(count), 1 - H(count - 1)} with H the
    binomial(n, position) CDF, clamped into (0, 1].
    """
    v = np.asarray(v, dtype=float)
    pos = np.asarray(positions, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("need a non-empty 1-d sample")
    if pos.size == 0 or np.any(pos <= 0.0) or np.any(pos >= 1.0):
        raise ValueError("positions must be non-empty and inside (0, 1)")
    counts = np.searchsorted(np.sort(v), pos, side="right")
    low = binom.cdf(counts, v.size, pos)
    high = binom.sf(counts - 1, v.size, pos)
    return float(min(1.0, 2.0 * np.min(np.minimum(low, high))))


def _binom_band(level: float, n: int, positions: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lo = np.maximum(binom.ppf(level / 2.0, n, positions), 0.0) / n
    hi = binom.ppf(1.0 - level / 2.0, n, positions) / n
    return lo, hi


def simultaneous_band(n: int, positions=None, alpha: float = 0.05, B: int = 1000,
                      rng: np.random.Generator | None = None) -> EcdfBand:
    """Calibrate a simultaneous ECDF band on true uniform samples of size n.

    alpha_star is the empirical alpha-quantile of alpha_b over B uniform
    samples; the band evaluates binomial quantile intervals at that level.
    """
    if rng is None:
        raise ValueError("pass an explicit numpy Generator for reproducibility")
    if B < 200:
        raise ValueError(f"need B >= 200 bootstrap samples for a stable quantile, got {B}")
    if n < 1:
        raise ValueError(f"need a positive sample size, got {n}")
    pos = default_positions(n) if positions is None else np.asarray(positions, dtype=float)
    alphas = [alpha_b(rng.uniform(size=n), pos) for _ in range(B)]
    # on true uniforms multiplicity guarantees alpha_star <= alpha up to MC
    # noise; clamping keeps the simultaneous band at least pointwise-wide
    return _assemble_band(alphas, pos, alpha, n, clamp=True)


def _assemble_band(alphas, positions, alpha: float, n: int, clamp: bool = False) -> EcdfBand:
    alpha_star = float(np.quantile(alphas, alpha))
    if clamp:
        alpha_star = min(alpha, alpha_star)
    point_lo, point_hi = _binom_band(alpha, n, positions)
    sim_lo, sim_hi = _binom_band(alpha_star, n, positions)
    return EcdfBand(positions=positions, pointwise_lo=point_lo, pointwise_hi=point_hi,
                    simultaneous_lo=sim_lo, simultaneous_hi=sim_hi,
                    alpha=float(alpha), alpha_star=alpha_star, n=int(n), B=len(alphas))


def band_covers(band: EcdfBand, values) -> bool:
    """Whether the ECDF of `values` stays inside the simultaneous band."""
    e = ecdf_at(band.positions, values)
    return bool(np.all(e >= band.simultaneous_lo - 1e-12) and
                np.all(e <= band.simultaneous_hi + 1e-12))


def impute_rounded(x: float, p: GevParams, delta: float, u: float,
                   rng: np.random.Generator) -> float:
    """Draw the latent continuous value behind a rounded observation.

    Truncated GEV draw on [max(u, x - delta/2), x + delta/2]; delta = 0
    returns x unchanged.
    """
    if delta < 0.0 or not np.isfinite(delta):
        raise ValueError(f"delta must be finite and >= 0, got {delta}")
    if delta == 0.0:
        return float(x)
    lower = max(u, x - delta / 2.0)
    upper = x + delta / 2.0
    if not lower < upper:
        raise ValueError(f"rounding interval [{lower}, {upper}] is empty")
    return truncated_gev_sample(p, lower, upper, rng)


def _uniform_pivots(blocks: np.ndarray, params: GevParams, treatment: DataTreatment,
                    kind: str, rng: np.random.Generator) -> np.ndarray:
    """Map a (possibly rounded/censored) block matrix to uniform pivots.

    Works on the probability scale: the imputed latent value is
    F^{-1}(w) for w uniform on [F(lo), F(hi)], so its pivot is w itself
    and the row maximum pivot is (max w)^m.  Censored entries are dropped;
    retained pivots are left-truncated at the threshold.
    """
    x = np.asarray(blocks, dtype=float)
    n, m = x.shape
    observed = x > treatment.u
    if treatment.delta > 0.0:
        half = treatment.delta / 2.0
        lo = gev_cdf(np.maximum(x - half, treatment.u), params)
        hi = gev_cdf(x + half, params)
        w = lo + rng.uniform(size=x.shape) * (hi - lo)
    else:
        w = gev_cdf(x, params)
    if kind == "all_observations":
        vals = w[observed]
        floor = float(gev_cdf(treatment.u, params))
    else:
        keep = observed[:, -1]  # block maximum above the threshold
        vals = np.where(observed, w, 0.0).max(axis=1)[keep] ** m
        floor = float(gev_cdf(treatment.u, params)) ** m
    if floor > 0.0:
        vals = (vals - floor) / (1.0 - floor)
    return np.clip(vals, 0.0, 1.0)


def pivot_series(data, fit: FitResult, treatment: DataTreatment | None = None,
                 kind: str = "all_observations",
                 rng: np.random.Generator | None = None) -> PivotSeries:
    """Observed-data pivots for overplotting on a band.

    Rounded data need `rng` for the imputation draw; repeated calls give
    different plotting positions, so overlay several to show that spread.
    """
    frame = _coerce_frame(data, treatment)
    if kind not in PIVOT_KINDS:
        raise ValueError(f"kind must be one of {PIVOT_KINDS}, got {kind!r}")
    if frame.treatment.delta > 0.0 and rng is None:
        raise ValueError("rounded data need an rng for imputation")
    vals = _uniform_pivots(frame.blocks, fit.params, frame.treatment, kind, rng)
    return PivotSeries(values=np.sort(vals), kind=kind)


def _coerce_frame(data, treatment: DataTreatment | None) -> BlockFrame:
    if isinstance(data, BlockFrame):
        if treatment is not None and treatment != data.treatment:
            raise ValueError("pass the treatment inside the BlockFrame")
        return data
    x = np.asarray(data, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    return BlockFrame(x, treatment if treatment is not None else DataTreatment())


def _refit(frame: BlockFrame, init: GevParams) -> FitResult:
    if frame.m == 1:
        return fit_gev(frame.blocks[:, 0], frame.treatment, init=init, want_cov=False)
    return fit_null(frame, init=init, want_cov=False)


def parametric_band(data, fit: FitResult | None = None,
                    treatment: DataTreatment | None = None,
                    kind: str = "all_observations", alpha: float = 0.05,
                    B: int = 1000, N: int | None = None,
                    rng: np.random.Generator | None = None) -> tuple[EcdfBand, PivotSeries]:
    """Bootstrap-calibrated simultaneous band plus the observed pivots.

    Each replicate simulates from the fitted law, applies the same
    rounding/censoring, refits with the same estimator, and records the
    escape level of its own pivots; the band level is the alpha-quantile
    of those.  Replicates whose refit fails are redrawn, up to 2B
    attempts.
    """
    if rng is None:
        raise ValueError("pass an explicit numpy Generator for reproducibility")
    if kind not in PIVOT_KINDS:
        raise ValueError(f"kind must be one of {PIVOT_KINDS}, got {kind!r}")
    if B < 200:
        raise ValueError(f"need B >= 200 bootstrap replicates, got {B}")
    frame = _coerce_frame(data, treatment)
    if fit is None:
        fit = (fit_gev(frame.blocks[:, 0], frame.treatment, want_cov=False)
               if frame.m == 1 else fit_null(frame, want_cov=False))
    if not fit.converged:
        raise ValueError("the fit supplied for the band did not converge")

    observed = pivot_series(frame, fit, kind=kind, rng=rng)
    if observed.n_retained == 0:
        raise ValueError("no observations retained above the censoring threshold")
    n_band = observed.n_retained
    if N is None:
        positions = default_positions(n_band)
    else:
        if int(N) < 1:
            raise ValueError(f"N must be a positive position count, got {N}")
        positions = np.arange(1, int(N) + 1) / (int(N) + 1.0)

    alphas = _bootstrap_alphas(frame, fit, kind, B, positions, rng)
    band = _assemble_band(alphas, positions, alpha, n_band)
    return band, observed


def _bootstrap_alphas(frame: BlockFrame, fit: FitResult, kind: str, B: int,
                      positions: np.ndarray, rng: np.random.Generator) -> list[float]:
    """Escape levels of B simulate-refit-pivot replicates."""
    n, m = frame.n, frame.m
    delta = frame.treatment.delta
    alphas: list[float] = []
    attempts = 0
    while len(alphas) < B and attempts < 2 * B:
        attempts += 1
        sim = np.sort(gev_sample(fit.params, (n, m), rng), axis=1)
        if delta > 0.0:
            sim = np.round(sim / delta) * delta
        try:
            sim_frame = BlockFrame(sim, frame.treatment)
            refit = _refit(sim_frame, init=fit.params)
        except ValueError:
            continue
        if not refit.converged:
            continue
        piv = _uniform_pivots(sim_frame.blocks, refit.params, frame.treatment, kind, rng)
        if piv.size == 0:
            continue
        alphas.append(alpha_b(piv, positions))
    if len(alphas) < B:
        raise RuntimeError(f"only {len(alphas)} of {B} bootstrap refits succeeded "
                           f"within {attempts} attempts")
    return alphas


def band_csv_rows(band: EcdfBand, series: PivotSeries) -> tuple[list[str], list[list[float]]]:
    """Rows for the band artifact: one line per plotting position."""
    header = ["nu", "point_lo", "point_hi", "simul_lo", "simul_hi", "ecdf_observed"]
    e = ecdf_at(band.positions, series.values)
    rows = [[float(band.positions[i]), float(band.pointwise_lo[i]), float(band.pointwise_hi[i]),
             float(band.simultaneous_lo[i]), float(band.simultaneous_hi[i]), float(e[i])]
            for i in range(band.positions.size)]
    return header, rows
