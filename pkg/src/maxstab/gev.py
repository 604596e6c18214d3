"""Numerically robust GEV distribution functions, max-stability maps, and sampling.

The generalized extreme value distribution is parametrized by location mu,
scale sigma > 0 and shape xi, with distribution function

    F(x) = exp[-(1 + xi (x - mu) / sigma)^(-1/xi)]   on 1 + xi (x - mu) / sigma > 0,

and the Gumbel form exp[-exp{-(x - mu)/sigma}] at xi = 0. All evaluations go
through log F so that pivots such as F^m stay accurate for large multipliers m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Below this |xi| the Gumbel branch is used; avoids catastrophic cancellation
# in expm1(xi * log m)/xi and (1 + xi z)^(-1/xi).
XI_TOL = 1e-8


@dataclass(frozen=True)
class GevParams:
    """Location/scale/shape triple of a GEV distribution."""

    mu: float
    sigma: float
    xi: float = 0.0

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        for name in ("mu", "sigma", "xi"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def support(self) -> tuple[float, float]:
        """Open support interval (lower, upper)."""
        if self.xi > XI_TOL:
            return (self.mu - self.sigma / self.xi, math.inf)
        if self.xi < -XI_TOL:
            return (-math.inf, self.mu - self.sigma / self.xi)
        return (-math.inf, math.inf)

    def in_support(self, x) -> np.ndarray | bool:
        lo, hi = self.support()
        return (np.asarray(x) > lo) & (np.asarray(x) < hi)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(value: np.ndarray, scalar: bool):
    return float(value) if scalar else value


def gev_logcdf(x, p: GevParams):
    """log F(x; p), equal to -(1 + xi z)^(-1/xi) inside the support.

    Returns -inf below the lower support endpoint (xi > 0) and exactly 0 at or
    above the upper endpoint (xi < 0).
    """
    arr, scalar = _as_array(x)
    z = (arr - p.mu) / p.sigma
    if abs(p.xi) < XI_TOL:
        out = -np.exp(-z)
    else:
        zi = p.xi * z
        inside = zi > -1.0
        logt = -np.log1p(np.where(inside, zi, 0.0)) / p.xi
        out = -np.exp(logt)
        out = np.where(inside, out, -np.inf if p.xi > 0 else 0.0)
    return _ret(out, scalar)


def gev_cdf(x, p: GevParams):
    """F(x; p); exactly 0/1 outside the support."""
    arr, scalar = _as_array(x)
    out = np.exp(gev_logcdf(arr, p))
    return _ret(out, scalar)


def gev_logpdf(x, p: GevParams):
    """log density; -inf outside the support."""
    arr, scalar = _as_array(x)
    z = (arr - p.mu) / p.sigma
    if abs(p.xi) < XI_TOL:
        out = -math.log(p.sigma) - z - np.exp(-z)
    else:
        zi = p.xi * z
        inside = zi > -1.0
        logt = -np.log1p(np.where(inside, zi, 0.0)) / p.xi
        out = np.where(
            inside,
            -math.log(p.sigma) + (1.0 + p.xi) * logt - np.exp(logt),
            -np.inf,
        )
    return _ret(out, scalar)


def gev_pdf(x, p: GevParams):
    """Density of F; 0 outside the support."""
    arr, scalar = _as_array(x)
    out = np.exp(gev_logpdf(arr, p))
    return _ret(out, scalar)


def gev_quantile(q, p: GevParams):
    """Inverse of gev_cdf on (0, 1)."""
    arr, scalar = _as_array(q)
    if np.any((arr <= 0) | (arr >= 1)):
        raise ValueError("quantile level must lie strictly inside (0, 1)")
    loglog = np.log(-np.log(arr))
    if abs(p.xi) < XI_TOL:
        out = p.mu - p.sigma * loglog
    else:
        out = p.mu + p.sigma * np.expm1(-p.xi * loglog) / p.xi
    return _ret(out, scalar)


def max_stability_map(p: GevParams, m_eff: float) -> GevParams:
    """Parameters of the maximum of m_eff copies: F(x; p)^m = F(x; result).

    mu_m = mu + sigma (m^xi - 1)/xi (or mu + sigma log m at xi = 0) and
    sigma_m = sigma m^xi; the shape is unchanged. m_eff may be any positive
    real, so non-integer multipliers such as m*theta compose cleanly.
    """
    if not m_eff > 0:
        raise ValueError(f"m_eff must be positive, got {m_eff}")
    logm = math.log(m_eff)
    if abs(p.xi) < XI_TOL:
        return GevParams(p.mu + p.sigma * logm, p.sigma, p.xi)
    return GevParams(
        p.mu + p.sigma * math.expm1(p.xi * logm) / p.xi,
        p.sigma * math.exp(p.xi * logm),
        p.xi,
    )


def extremal_index_map(p: GevParams, theta: float) -> GevParams:
    """Block-maximum law under extremal index theta: multiplier theta in (0, 1]."""
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    return max_stability_map(p, theta)


def beta_m1_pivot(x, p: GevParams, m: float):
    """F(x; p)^m, the uniform-scale pivot of an m-block maximum.

    Computed as exp(m log F) so the pivot stays accurate for large m.
    """
    arr, scalar = _as_array(x)
    out = np.exp(m * gev_logcdf(arr, p))
    return _ret(out, scalar)


def gev_sample(p: GevParams, size, rng: np.random.Generator):
    """iid draws by inverse-CDF."""
    return gev_quantile(rng.uniform(size=size), p)


def truncated_gev_sample(
    p: GevParams,
    lower: float,
    upper: float,
    rng: np.random.Generator,
    size=None,
):
    """Draws from the GEV restricted to (lower, upper), by inverse-CDF.

    Exact and branch-free for any truncation window that intersects the
    support; raises when the window carries no probability mass.
    """
    if not lower < upper:
        raise ValueError("need lower < upper")
    f_lo = gev_cdf(lower, p) if math.isfinite(lower) else 0.0
    f_hi = gev_cdf(upper, p) if math.isfinite(upper) else 1.0
    if not f_hi > f_lo:
        raise ValueError(
            f"truncation interval ({lower}, {upper}) carries zero probability"
        )
    u = f_lo + (f_hi - f_lo) * rng.uniform(size=size)
    # guard against u hitting exactly 0 or 1 through rounding
    u = np.clip(u, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
    draw = gev_quantile(u, p)
    return np.clip(draw, lower, upper) if size is not None else min(max(draw, lower), upper)
