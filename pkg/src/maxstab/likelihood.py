"""Blocked GEV log-likelihoods.

Each block of ``m`` observations is reduced to its order statistics.  The
joint likelihood factorizes into the density of the block maximum and, given
the maximum, the density of the remaining ``m - 1`` values, which form an
independent sample truncated above at the maximum.  The maximum may follow a
different GEV than the rest of the block; the three alternatives below
parametrize that departure.  Rounding and left-censoring enter through
interval probabilities with per-observation weights.  Additive parameter-free
constants are dropped throughout, so values are comparable only across
parameters, not across data treatments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gev import GevParams, gev_logcdf, gev_logpdf, max_stability_map

__all__ = [
    "AltHypothesis",
    "BlockFrame",
    "DataTreatment",
    "alt_max_params",
    "loglik_censored_rounded",
    "loglik_joint",
    "loglik_marginal",
]


@dataclass(frozen=True)
class DataTreatment:
    """How raw measurements map to likelihood contributions.

    ``delta`` is the rounding width: a recorded value x stands for a latent
    value in [x - delta/2, x + delta/2].  ``u`` is the left-censoring bound:
    values at or below u are only known to lie below it.
    """

    delta: float = 0.0
    u: float = -np.inf

    def __post_init__(self) -> None:
        if not (np.isfinite(self.delta) and self.delta >= 0.0):
            raise ValueError(f"rounding width must be finite and >= 0, got {self.delta}")
        if np.isnan(self.u) or self.u == np.inf:
            raise ValueError(f"censoring bound must be finite or -inf, got {self.u}")

    @property
    def is_plain(self) -> bool:
        """True when values are exact and nothing is censored."""
        return self.delta == 0.0 and self.u == -np.inf


@dataclass(frozen=True, eq=False)
class BlockFrame:
    """``n`` blocks of ``m`` order statistics, rows sorted nondecreasing.

    Rows are sorted on construction, so any within-row ordering of the input
    is accepted.  Censored entries keep their stored value as a placeholder
    and are identified by the ``censored`` mask; only their count per block
    enters the likelihood.
    """

    blocks: np.ndarray
    treatment: DataTreatment = field(default_factory=DataTreatment)

    def __post_init__(self) -> None:
        arr = np.array(self.blocks, dtype=float)
        if arr.ndim != 2:
            raise ValueError("blocks must be a 2-d array (rows = blocks)")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"need at least one block and one value per block, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("block values must be finite")
        arr = np.sort(arr, axis=1)
        arr.flags.writeable = False
        object.__setattr__(self, "blocks", arr)

    @property
    def n(self) -> int:
        return self.blocks.shape[0]

    @property
    def m(self) -> int:
        return self.blocks.shape[1]

    @property
    def maxima(self) -> np.ndarray:
        return self.blocks[:, -1]

    @property
    def censored(self) -> np.ndarray:
        """Boolean mask of entries at or below the censoring bound."""
        return self.blocks <= self.treatment.u


_ALT_DF = {"a1": 1, "a2": 2, "a3": 3}
_NULL_POINT = {"a1": (1.0,), "a2": (0.0, 1.0), "a3": (0.0, 1.0, 0.0)}


@dataclass(frozen=True)
class AltHypothesis:
    """A nested departure of the block maximum's law from max-stability.

    kind "a1": the maximum behaves as the maximum of ``omega * m`` rather
    than ``m`` values; params (omega,), null omega = 1.
    kind "a2": the maximum's location is shifted by nu and its scale
    multiplied by phi; params (nu, phi), null (0, 1).
    kind "a3": additionally the shape is shifted by zeta; params
    (nu, phi, zeta), null (0, 1, 0).
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self) -> None:
        kind = str(self.kind).lower()
        if kind not in _ALT_DF:
            raise ValueError(f"unknown alternative kind {self.kind!r}; expected one of a1, a2, a3")
        params = tuple(float(v) for v in np.atleast_1d(np.asarray(self.params, dtype=float)))
        if len(params) != _ALT_DF[kind]:
            raise ValueError(f"{kind} takes {_ALT_DF[kind]} parameter(s), got {len(params)}")
        if not all(np.isfinite(v) for v in params):
            raise ValueError("alternative parameters must be finite")
        if kind == "a1" and params[0] <= 0.0:
            raise ValueError(f"effective-count multiplier must be positive, got {params[0]}")
        if kind in ("a2", "a3") and params[1] <= 0.0:
            raise ValueError(f"scale multiplier must be positive, got {params[1]}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", params)

    @property
    def df(self) -> int:
        """Number of free departure parameters (LR test degrees of freedom)."""
        return _ALT_DF[self.kind]

    @property
    def is_null(self) -> bool:
        return self.params == _NULL_POINT[self.kind]

    @classmethod
    def null(cls, kind: str) -> "AltHypothesis":
        """The no-departure point of the given kind."""
        return cls(kind, _NULL_POINT[str(kind).lower()])


def alt_max_params(p0: GevParams, m: float, alt: AltHypothesis) -> GevParams:
    """GEV parameters of the block maximum under the given alternative.

    At the null point all three kinds reduce to ``max_stability_map(p0, m)``.
    """
    if alt.kind == "a1":
        (omega,) = alt.params
        return max_stability_map(p0, omega * m)
    pm = max_stability_map(p0, m)
    if alt.kind == "a2":
        nu, phi = alt.params
        return GevParams(pm.mu + nu, phi * pm.sigma, pm.xi)
    nu, phi, zeta = alt.params
    return GevParams(pm.mu + nu, phi * pm.sigma, pm.xi + zeta)


def _log1mexp(t: np.ndarray) -> np.ndarray:
    """log(1 - exp(t)) for t <= 0, stable at both ends."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.log(-np.expm1(t))  # accurate for t near 0
        large = np.log1p(-np.exp(t))  # accurate for very negative t
        out = np.where(t > -np.log(2.0), small, large)
    return np.where(t >= 0.0, -np.inf, out)


def _log_interval(loglo: np.ndarray, loghi: np.ndarray) -> np.ndarray:
    """log{F(hi) - F(lo)} from the two log-CDF values; -inf on zero mass."""
    loglo = np.asarray(loglo, dtype=float)
    loghi = np.asarray(loghi, dtype=float)
    with np.errstate(invalid="ignore"):
        out = loghi + _log1mexp(loglo - loghi)
        return np.where(loglo >= loghi, -np.inf, out)


def loglik_joint(frame: BlockFrame, p0: GevParams, pm: GevParams) -> float:
    """Joint log-likelihood: maximum under ``pm``, lower order statistics
    under ``p0`` truncated above at the maximum.

    Returns -inf when any block has zero density, including when a block
    maximum falls at or below the lower support endpoint of ``p0`` (the
    truncated law is then undefined).
    """
    if not frame.treatment.is_plain:
        raise ValueError("joint likelihood expects exact, uncensored data; use loglik_censored_rounded")
    x = frame.blocks
    xmax = x[:, -1]
    total = float(np.sum(gev_logpdf(xmax, pm)))
    if frame.m > 1:
        logf_low = gev_logpdf(x[:, :-1], p0)
        logF_max = gev_logcdf(xmax, p0)
        if not (np.all(logf_low > -np.inf) and np.all(logF_max > -np.inf)):
            return -np.inf
        total += float(np.sum(logf_low)) - (frame.m - 1) * float(np.sum(logF_max))
    return total if not np.isnan(total) else -np.inf


def loglik_censored_rounded(frame: BlockFrame, p0: GevParams, pm: GevParams) -> float:
    """Joint log-likelihood under rounding to width delta and left-censoring
    at u.

    Rounded values contribute the interval probability F(x + delta/2) -
    F(max{x - delta/2, u}); censored values contribute F(u).  Values whose
    rounding interval straddles u get a weighted mix of the two, with weight
    w = P(max{u, x - delta/2} <= Y <= x + delta/2) / P(|Y - x| <= delta/2)
    recomputed at the current parameters.  Lower-order terms are divided by
    F(max{u, x_(m) + delta/2}; p0), the truncation carried by the observable
    maximum.  A block whose maximum is censored contributes F(u; pm) for the
    maximum (weight zero).  Reduces to ``loglik_joint`` when the treatment is
    plain.
    """
    t = frame.treatment
    x = frame.blocks
    xmax = x[:, -1]
    u = t.u
    if u > -np.inf and u >= float(np.max(xmax)):
        raise ValueError("every block maximum is censored; the data carry no information on the maximum's law")
    half = 0.5 * t.delta
    obs_max = xmax > u

    if t.delta == 0.0:
        # exact values: weights degenerate to the censoring indicator
        logFu_m = float(gev_logcdf(u, pm)) if u > -np.inf else -np.inf
        max_terms = np.where(obs_max, gev_logpdf(xmax, pm), logFu_m)
        total = float(np.sum(max_terms))
        if frame.m > 1:
            lower = x[:, :-1]
            logD = gev_logcdf(np.maximum(xmax, u), p0)
            if np.any(logD == -np.inf):
                return -np.inf
            logFu_0 = float(gev_logcdf(u, p0)) if u > -np.inf else -np.inf
            terms = np.where(lower > u, gev_logpdf(lower, p0), logFu_0)
            total += float(np.sum(terms - logD[:, None]))
        return total if not np.isnan(total) else -np.inf

    logFu_m = float(gev_logcdf(u, pm)) if u > -np.inf else -np.inf
    hi_m = gev_logcdf(xmax + half, pm)
    lo_m = gev_logcdf(xmax - half, pm)
    lo_m_cl = gev_logcdf(np.maximum(xmax - half, u), pm)
    logL_m = _log_interval(lo_m_cl, hi_m)
    logden_m = _log_interval(lo_m, hi_m)
    if np.any(obs_max & (logden_m == -np.inf)):
        return -np.inf  # observed maximum in a zero-probability window
    with np.errstate(invalid="ignore"):
        w_m = np.exp(np.minimum(logL_m - logden_m, 0.0))
        obs_terms = np.where(w_m > 0.0, w_m * logL_m, 0.0)
        obs_terms = obs_terms + np.where(w_m < 1.0, (1.0 - w_m) * logFu_m, 0.0)
        max_terms = np.where(obs_max, obs_terms, logFu_m)
    total = float(np.sum(max_terms))

    if frame.m > 1:
        lower = x[:, :-1]
        obs = lower > u
        logD = gev_logcdf(np.maximum(xmax + half, u), p0)
        if np.any(logD == -np.inf):
            return -np.inf
        logFu_0 = float(gev_logcdf(u, p0)) if u > -np.inf else -np.inf
        hi = gev_logcdf(lower + half, p0)
        lo = gev_logcdf(lower - half, p0)
        lo_cl = gev_logcdf(np.maximum(lower - half, u), p0)
        logL = _log_interval(lo_cl, hi)
        logden = _log_interval(lo, hi)
        if np.any(obs & (logden == -np.inf)):
            return -np.inf
        with np.errstate(invalid="ignore"):
            w = np.exp(np.minimum(logL - logden, 0.0))
            obs_terms = np.where(w > 0.0, w * logL, 0.0)
            obs_terms = obs_terms + np.where(w < 1.0, (1.0 - w) * logFu_0, 0.0)
            terms = np.where(obs, obs_terms, logFu_0) - logD[:, None]
        total += float(np.sum(terms))
    return total if not np.isnan(total) else -np.inf


def loglik_marginal(frame: BlockFrame, p0: GevParams) -> float:
    """Log-likelihood of the ``m - 1`` smallest order statistics per block,
    the maximum entering only as a right-censoring point at x_(m-1).

    The fitted support must still contain every observed block maximum:
    sigma + xi * (max_i x_(i,(m)) - mu) > 0, else -inf.
    """
    if frame.m < 2:
        raise ValueError("marginal likelihood needs at least two order statistics per block")
    if not frame.treatment.is_plain:
        raise ValueError("marginal likelihood expects exact, uncensored data")
    x = frame.blocks
    if p0.sigma + p0.xi * (float(np.max(x[:, -1])) - p0.mu) <= 0.0:
        return -np.inf
    logf = gev_logpdf(x[:, :-1], p0)
    if not np.all(logf > -np.inf):
        return -np.inf
    log_surv = _log1mexp(gev_logcdf(x[:, -2], p0))
    total = float(np.sum(logf)) + float(np.sum(log_surv))
    return total if not np.isnan(total) else -np.inf
