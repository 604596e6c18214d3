"""Maximum-likelihood fitting and profile confidence intervals.

All fits optimize in a transformed space: data are centred and scaled by
moment estimates so the optimizer sees O(1) numbers (this makes results
equivariant under affine changes of units), and positive parameters enter
through logs.  A derivative-free simplex search locates the basin and a
quasi-Newton polish with central-difference gradients sharpens the optimum;
up to five jittered restarts are tried when the gradient check fails.

Profile intervals reparametrize the likelihood so the target quantity (a
return level, or an exceedance probability over a longer horizon) is an
explicit parameter, then bracket and bisect the profile deviance against the
chi-square cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import chi2

from .gev import GevParams, gev_logcdf, gev_quantile, max_stability_map
from .likelihood import (
    AltHypothesis,
    BlockFrame,
    DataTreatment,
    alt_max_params,
    loglik_censored_rounded,
    loglik_joint,
)

__all__ = [
    "ExceedProb",
    "FitResult",
    "ProfileCI",
    "ReturnLevel",
    "fit_gev",
    "fit_null",
    "fit_alternative",
    "profile_ci",
]

_GRAD_TOL = 1e-4      # max abs numerical gradient at a reported optimum
_XI_SOFT_LO = -0.99   # MLE regularity fails at xi <= -1
_XI_SOFT_HI = 2.0
_BIG = 1e10           # stand-in for -inf log-likelihoods inside optimizers
_MAX_RESTARTS = 5


@dataclass(frozen=True)
class FitResult:
    """A located likelihood optimum.

    ``converged`` requires a finite optimum whose numerical gradient (in the
    internal transformed coordinates) is below tolerance, and a negative
    definite Hessian whenever one was computed.  ``cov`` is the inverse
    observed information mapped to the reported parameter scale, ordered
    (mu, sigma, xi, *departure params); None when not computed or unstable.
    """

    params: GevParams
    loglik: float
    converged: bool
    n_evals: int
    hessian_ok: bool
    grad_norm: float = np.nan
    alt: AltHypothesis | None = None
    cov: np.ndarray | None = None

    @property
    def se(self) -> np.ndarray | None:
        if self.cov is None:
            return None
        return np.sqrt(np.diag(self.cov))


@dataclass(frozen=True)
class ProfileCI:
    """Profile-likelihood confidence interval for a scalar target."""

    estimate: float
    lower: float
    upper: float
    level: float
    target: str
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not (self.lower <= self.estimate <= self.upper):
            raise ValueError(
                f"interval [{self.lower}, {self.upper}] does not bracket the estimate {self.estimate}")


@dataclass(frozen=True)
class ReturnLevel:
    """Quantile of the fitted block-maximum law extrapolated to a longer span.

    With the default ``quantile=None`` this is the classical return level:
    the 1 - 1/period quantile of the law of the span maximum, where one span
    is ``blocks_per_year`` fitted blocks.  With an explicit quantile it is
    that quantile of the maximum over ``period`` spans (e.g. quantile 0.5 and
    period 50 gives the median 50-span maximum).
    """

    period: float
    blocks_per_year: float = 1.0
    quantile: float | None = None

    def __post_init__(self) -> None:
        if not (np.isfinite(self.period) and self.period > 0):
            raise ValueError(f"period must be positive, got {self.period}")
        if not (np.isfinite(self.blocks_per_year) and self.blocks_per_year > 0):
            raise ValueError(f"blocks_per_year must be positive, got {self.blocks_per_year}")
        if self.quantile is None:
            if self.period <= 1:
                raise ValueError("period must exceed 1 for the 1 - 1/period quantile")
        elif not 0.0 < self.quantile < 1.0:
            raise ValueError(f"quantile must lie in (0, 1), got {self.quantile}")

    def _multiplier_prob(self) -> tuple[float, float]:
        """Stability-map multiplier (block units) and standard-GEV probability."""
        if self.quantile is None:
            return self.blocks_per_year, 1.0 - 1.0 / self.period
        return self.blocks_per_year * self.period, self.quantile

    def value(self, block_law: GevParams) -> float:
        mult, prob = self._multiplier_prob()
        return float(gev_quantile(prob, max_stability_map(block_law, mult)))


@dataclass(frozen=True)
class ExceedProb:
    """Probability that the maximum over a horizon exceeds a threshold.

    The horizon is ``horizon_multiplier`` fitted blocks; the fitted law is
    extrapolated to it by max-stability.
    """

    threshold: float
    horizon_multiplier: float = 1.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.threshold):
            raise ValueError("threshold must be finite")
        if not (np.isfinite(self.horizon_multiplier) and self.horizon_multiplier > 0):
            raise ValueError(f"horizon_multiplier must be positive, got {self.horizon_multiplier}")

    def value(self, block_law: GevParams) -> float:
        logF = float(gev_logcdf(self.threshold, block_law))
        return float(-np.expm1(self.horizon_multiplier * logF))


# ---------------------------------------------------------------------------
# generic optimizer machinery


def _central_gradient(f, x: np.ndarray, rel_step: float = 1e-6) -> np.ndarray:
    g = np.empty_like(x)
    for i in range(x.size):
        h = rel_step * max(1.0, abs(x[i]))
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (f(xp) - f(xm)) / (2.0 * h)
    return g


def _forward_gradient(f, x: np.ndarray, rel_step: float = 1e-7) -> np.ndarray:
    g = np.empty_like(x)
    f0 = f(x)
    for i in range(x.size):
        h = rel_step * max(1.0, abs(x[i]))
        xp = x.copy()
        xp[i] += h
        g[i] = (f(xp) - f0) / h
    return g


def _num_hessian(f, x: np.ndarray, rel_step: float = 1e-5) -> np.ndarray:
    k = x.size
    h = np.array([rel_step * max(1.0, abs(v)) for v in x])
    H = np.empty((k, k))
    f0 = f(x)
    for i in range(k):
        xp, xm = x.copy(), x.copy()
        xp[i] += h[i]
        xm[i] -= h[i]
        H[i, i] = (f(xp) - 2.0 * f0 + f(xm)) / h[i] ** 2
        for j in range(i + 1, k):
            xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
            xpp[[i, j]] += h[[i, j]]
            xmm[[i, j]] -= h[[i, j]]
            xpm[i] += h[i]
            xpm[j] -= h[j]
            xmp[i] -= h[i]
            xmp[j] += h[j]
            H[i, j] = H[j, i] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h[i] * h[j])
    return H


class _Objective:
    """Negated log-likelihood with an evaluation counter and -inf clamping."""

    def __init__(self, loglik):
        self._loglik = loglik
        self.n_evals = 0

    def __call__(self, x: np.ndarray) -> float:
        self.n_evals += 1
        val = self._loglik(x)
        if not np.isfinite(val):
            return _BIG
        return -float(val)


def _maximize(loglik, x0: np.ndarray,
              warm: bool = False) -> tuple[np.ndarray, float, bool, int, float]:
    """Simplex search plus quasi-Newton polish, restarting on gradient failure.

    A warm start near the optimum can skip the simplex stage entirely when
    the quasi-Newton step alone meets the gradient criterion.
    """
    obj = _Objective(loglik)
    best_x, best_f = None, np.inf
    grad_norm = np.inf
    converged = False
    start = np.asarray(x0, dtype=float)
    if warm and obj(start) < _BIG:
        # forward differences are accurate enough to steer the line search;
        # convergence is still judged on a central-difference gradient
        qn = minimize(obj, start, method="BFGS", jac=lambda t: _forward_gradient(obj, t),
                      options={"gtol": 2e-5, "maxiter": 200})
        g = float(np.max(np.abs(_central_gradient(obj, qn.x))))
        if np.isfinite(qn.fun) and qn.fun < _BIG and g < _GRAD_TOL:
            return qn.x, -float(qn.fun), True, obj.n_evals, g
    for attempt in range(_MAX_RESTARTS):
        nm = minimize(obj, start, method="Nelder-Mead",
                      options={"maxiter": 500 * start.size, "fatol": 1e-9, "xatol": 1e-7})
        x = nm.x
        if obj(x) < _BIG:
            qn = minimize(obj, x, method="BFGS", jac=lambda t: _central_gradient(obj, t),
                          options={"gtol": 2e-5, "maxiter": 200})
            if qn.fun <= nm.fun:
                x = qn.x
        f = obj(x)
        if f < best_f:
            best_x, best_f = x, f
            grad_norm = float(np.max(np.abs(_central_gradient(obj, x)))) if f < _BIG else np.inf
            converged = np.isfinite(-best_f) and best_f < _BIG and grad_norm < _GRAD_TOL
        if converged:
            break
        # jittered restart around the best point seen so far (deterministic)
        rng = np.random.default_rng(1000 + attempt)
        centre = best_x if best_x is not None else start
        start = centre + rng.normal(scale=0.3, size=start.size)
    return best_x, -best_f, converged, obj.n_evals, grad_norm


def _covariance(loglik, x: np.ndarray, jac_diag: np.ndarray) -> tuple[np.ndarray | None, bool]:
    """Inverse observed information mapped through a diagonal Jacobian."""

    def neg(t: np.ndarray) -> float:
        v = loglik(t)
        return -v if np.isfinite(v) else _BIG

    H = _num_hessian(neg, x)  # Hessian of the negative loglik
    H = 0.5 * (H + H.T)
    try:
        eigvals = np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError:
        return None, False
    if np.any(eigvals <= 0.0) or not np.all(np.isfinite(H)):
        return None, False
    cov_internal = np.linalg.inv(H)
    J = np.diag(jac_diag)
    return J @ cov_internal @ J, True


# ---------------------------------------------------------------------------
# data standardization


@dataclass(frozen=True)
class _Standardized:
    """A frame mapped to working units y = (x - loc) / scale."""

    frame: BlockFrame
    loc: float
    scale: float

    def to_data_units(self, p: GevParams) -> GevParams:
        return GevParams(self.loc + self.scale * p.mu, self.scale * p.sigma, p.xi)


def _standardize(frame: BlockFrame) -> _Standardized:
    vals = frame.blocks[~frame.censored]
    if vals.size < 3:
        raise ValueError(f"need at least 3 uncensored observations, got {vals.size}")
    loc = float(np.mean(vals))
    scale = float(np.std(vals))
    if scale == 0.0:
        raise ValueError("degenerate data: all uncensored values are equal")
    t = frame.treatment
    std_t = DataTreatment(t.delta / scale, (t.u - loc) / scale if t.u > -np.inf else -np.inf)
    std_frame = BlockFrame((frame.blocks - loc) / scale, std_t)
    return _Standardized(std_frame, loc, scale)


def _moment_start(values: np.ndarray) -> np.ndarray:
    """Gumbel moment estimates (sigma = sd*sqrt(6)/pi) with a mild shape."""
    sd = float(np.std(values))
    sigma0 = max(sd * math.sqrt(6.0) / math.pi, 1e-3)
    mu0 = float(np.mean(values)) - 0.5772 * sigma0
    return np.array([mu0, math.log(sigma0), 0.1])


def _in_xi_bounds(xi: float) -> bool:
    return _XI_SOFT_LO < xi < _XI_SOFT_HI


def _params_from_internal(x: np.ndarray) -> GevParams:
    return GevParams(x[0], math.exp(x[1]), x[2])


# ---------------------------------------------------------------------------
# fits


def _frame_loglik(frame: BlockFrame, p0: GevParams, pm: GevParams) -> float:
    if frame.treatment.is_plain:
        return loglik_joint(frame, p0, pm)
    return loglik_censored_rounded(frame, p0, pm)


def _validate_frame_info(frame: BlockFrame) -> None:
    if frame.treatment.u > -np.inf and not np.any(frame.maxima > frame.treatment.u):
        raise ValueError("every block maximum is censored; nothing to fit")


def fit_gev(maxima, treatment: DataTreatment | None = None,
            init: GevParams | None = None, want_cov: bool = True) -> FitResult:
    """Fit a GEV to a vector of block maxima, honoring rounding/censoring."""
    x = np.asarray(maxima, dtype=float)
    if x.ndim != 1:
        raise ValueError("maxima must be a 1-d vector; use fit_null for block frames")
    frame = BlockFrame(x[:, None], treatment or DataTreatment())
    _validate_frame_info(frame)
    std = _standardize(frame)

    def ll(t: np.ndarray) -> float:
        if not _in_xi_bounds(t[2]):
            return -np.inf
        p = _params_from_internal(t)
        return loglik_censored_rounded(std.frame, p, p)

    if init is not None:
        x0 = np.array([(init.mu - std.loc) / std.scale,
                       math.log(init.sigma / std.scale), init.xi])
    else:
        x0 = _moment_start(std.frame.blocks[~std.frame.censored])
    xhat, _, converged, n_evals, grad_norm = _maximize(ll, x0, warm=init is not None)
    p_std = _params_from_internal(xhat)
    params = std.to_data_units(p_std)
    loglik = loglik_censored_rounded(frame, params, params)
    cov, hessian_ok = (None, False)
    if want_cov and converged:
        cov, hessian_ok = _covariance(ll, xhat, np.array([std.scale, params.sigma, 1.0]))
        converged = converged and hessian_ok
    return FitResult(params, loglik, converged, n_evals, hessian_ok, grad_norm, cov=cov)


def fit_null(frame: BlockFrame, init: GevParams | None = None,
             want_cov: bool = True) -> FitResult:
    """Fit the max-stable model: one base GEV, the maximum following its
    stability map to block length m.  Three free parameters."""
    if frame.m < 2:
        raise ValueError("null model needs m >= 2 order statistics per block; use fit_gev for plain maxima")
    _validate_frame_info(frame)
    std = _standardize(frame)
    m = frame.m

    def ll(t: np.ndarray) -> float:
        if not _in_xi_bounds(t[2]):
            return -np.inf
        p0 = _params_from_internal(t)
        return _frame_loglik(std.frame, p0, max_stability_map(p0, m))

    if init is not None:
        x0 = np.array([(init.mu - std.loc) / std.scale,
                       math.log(init.sigma / std.scale), init.xi])
    else:
        x0 = _moment_start(std.frame.blocks[~std.frame.censored])
    xhat, _, converged, n_evals, grad_norm = _maximize(ll, x0, warm=init is not None)
    params = std.to_data_units(_params_from_internal(xhat))
    loglik = _frame_loglik(frame, params, max_stability_map(params, m))
    cov, hessian_ok = (None, False)
    if want_cov and converged:
        cov, hessian_ok = _covariance(ll, xhat, np.array([std.scale, params.sigma, 1.0]))
        converged = converged and hessian_ok
    return FitResult(params, loglik, converged, n_evals, hessian_ok, grad_norm, cov=cov)


def _alt_from_internal(kind: str, t: np.ndarray, scale: float) -> AltHypothesis:
    """Departure parameters from internal coordinates (location shifts are in
    working units and rescale; multipliers and shape shifts are unit-free)."""
    if kind == "a1":
        return AltHypothesis(kind, (math.exp(t[0]),))
    if kind == "a2":
        return AltHypothesis(kind, (scale * t[0], math.exp(t[1])))
    return AltHypothesis(kind, (scale * t[0], math.exp(t[1]), t[2]))


def fit_alternative(frame: BlockFrame, alt_kind: str, init: GevParams | None = None,
                    null_fit: FitResult | None = None, want_cov: bool = True) -> FitResult:
    """Fit base GEV plus departure parameters of the given kind jointly.

    Starts at the null fit with the departure at its null point, so the
    optimum can never fall below the null optimum (nesting).
    """
    if frame.m < 2:
        raise ValueError("alternatives need m >= 2 order statistics per block")
    kind = str(alt_kind).lower()
    if kind not in ("a1", "a2", "a3"):
        raise ValueError(f"unknown alternative kind {alt_kind!r}; expected one of a1, a2, a3")
    _validate_frame_info(frame)
    if null_fit is None:
        null_fit = fit_null(frame, init=init, want_cov=False)
    std = _standardize(frame)
    m = frame.m
    n_dep = {"a1": 1, "a2": 2, "a3": 3}[kind]

    def ll(t: np.ndarray) -> float:
        if not _in_xi_bounds(t[2]):
            return -np.inf
        p0 = _params_from_internal(t[:3])
        alt = _alt_from_internal(kind, t[3:], 1.0)
        pm = alt_max_params(p0, m, alt)
        if not _in_xi_bounds(pm.xi):
            return -np.inf
        return _frame_loglik(std.frame, p0, pm)

    p_null = null_fit.params
    x0 = np.concatenate([
        [(p_null.mu - std.loc) / std.scale, math.log(p_null.sigma / std.scale), p_null.xi],
        np.zeros(n_dep),  # null point: log omega = 0 / (nu, log phi) = 0 / + zeta = 0
    ])
    xhat, _, converged, n_evals, grad_norm = _maximize(ll, x0)
    params = std.to_data_units(_params_from_internal(xhat[:3]))
    alt = _alt_from_internal(kind, xhat[3:], std.scale)
    loglik = _frame_loglik(frame, params, alt_max_params(params, m, alt))
    if loglik < null_fit.loglik - 1e-6:
        converged = False  # should be impossible given the warm start
    cov, hessian_ok = (None, False)
    if want_cov and converged:
        if kind == "a1":
            jac = [alt.params[0]]  # d omega / d log omega
        elif kind == "a2":
            jac = [std.scale, alt.params[1]]
        else:
            jac = [std.scale, alt.params[1], 1.0]
        cov, hessian_ok = _covariance(
            ll, xhat, np.concatenate([[std.scale, params.sigma, 1.0], jac]))
        converged = converged and hessian_ok
    return FitResult(params, loglik, converged, n_evals, hessian_ok, grad_norm,
                     alt=alt, cov=cov)


# ---------------------------------------------------------------------------
# profile-likelihood intervals


def _as_frame(data, treatment: DataTreatment | None) -> BlockFrame:
    if isinstance(data, BlockFrame):
        if treatment is not None and treatment != data.treatment:
            raise ValueError("pass the treatment inside the BlockFrame")
        return data
    x = np.asarray(data, dtype=float)
    if x.ndim != 1:
        raise ValueError("data must be a 1-d vector of maxima or a BlockFrame")
    return BlockFrame(x[:, None], treatment or DataTreatment())


def profile_ci(data, target, level: float = 0.95,
               treatment: DataTreatment | None = None,
               init: GevParams | None = None) -> ProfileCI:
    """Profile-likelihood interval for a return level or exceedance probability.

    ``data`` is a vector of block maxima or a BlockFrame (the max-stable null
    model is then profiled).  The target is made an explicit parameter: for a
    fixed target value the location is determined by (sigma, xi), which are
    maximized out; the interval is the set where twice the deviance stays
    below the chi-square(1) cutoff.  Endpoints that never cross the cutoff
    within the search range are reported at the last searched value with an
    "open" warning, as is any non-monotone profile (possible multimodality).
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    if not isinstance(target, (ReturnLevel, ExceedProb)):
        raise TypeError("target must be a ReturnLevel or ExceedProb")
    frame = _as_frame(data, treatment)
    if frame.m >= 2:
        full = fit_null(frame, init=init, want_cov=False)
    else:
        full = fit_gev(frame.blocks[:, 0], frame.treatment, init=init, want_cov=False)
    if not np.isfinite(full.loglik):
        raise RuntimeError("full fit failed; cannot profile")
    std = _standardize(frame)
    m = frame.m

    # target in working units: multiplier composes the within-frame block
    # length with the extrapolation span
    if isinstance(target, ReturnLevel):
        mult, prob = target._multiplier_prob()
        mult_total = m * mult

        def tau_of(p_std: GevParams) -> float:
            return float(gev_quantile(prob, max_stability_map(p_std, mult_total)))

        def mu_of(tau: float, sigma: float, xi: float) -> float:
            ref = max_stability_map(GevParams(0.0, 1.0, xi), mult_total)
            return tau - sigma * (ref.mu + ref.sigma * gev_quantile(prob, GevParams(0.0, 1.0, xi)))

        to_report = lambda tau: std.loc + std.scale * tau
        from_fit = tau_of
        transform = "affine"
    else:
        mult_total = m * target.horizon_multiplier
        thr_std = (target.threshold - std.loc) / std.scale

        def tau_of(p_std: GevParams) -> float:
            return float(-np.expm1(mult_total * gev_logcdf(thr_std, p_std)))

        def mu_of(tau: float, sigma: float, xi: float) -> float:
            log_f = np.log1p(-tau) / mult_total  # log F(thr) under the base law
            return thr_std - sigma * float(gev_quantile(math.exp(log_f), GevParams(0.0, 1.0, xi)))

        to_report = lambda tau: tau
        from_fit = tau_of
        transform = "logit"

    def ll_at(tau: float, nuis: np.ndarray) -> float:
        sigma, xi = math.exp(nuis[0]), nuis[1]
        if not _in_xi_bounds(xi):
            return -np.inf
        try:
            p0 = GevParams(mu_of(tau, sigma, xi), sigma, xi)
        except ValueError:
            return -np.inf
        if m >= 2:
            return _frame_loglik(std.frame, p0, max_stability_map(p0, m))
        return loglik_censored_rounded(std.frame, p0, p0)

    p_hat = GevParams((full.params.mu - std.loc) / std.scale,
                      full.params.sigma / std.scale, full.params.xi)
    tau_hat = from_fit(p_hat)
    if isinstance(target, ExceedProb) and not 0.0 < tau_hat < 1.0:
        raise RuntimeError(f"estimated exceedance probability {tau_hat} is degenerate; cannot profile")
    ll_hat_std = ll_at(tau_hat, np.array([math.log(p_hat.sigma), p_hat.xi]))
    cutoff = float(chi2.ppf(level, df=1))
    warnings: list[str] = []

    nuis_hat = np.array([math.log(p_hat.sigma), p_hat.xi])

    def deviance(tau: float, warm: np.ndarray) -> tuple[float, np.ndarray]:
        def neg(v: np.ndarray) -> float:
            val = ll_at(tau, v)
            return -val if np.isfinite(val) else _BIG

        # the warm start tracks the profile path; fall back to the full-fit
        # nuisance values when a large expansion step lands the path badly
        start = warm if neg(warm) <= neg(nuis_hat) else nuis_hat
        res = minimize(neg, start, method="Nelder-Mead",
                       options={"maxiter": 800, "fatol": 1e-9, "xatol": 1e-7})
        return 2.0 * (ll_hat_std - (-res.fun)), res.x

    # working scale for the search: unbounded for levels, log-odds for probs
    if transform == "affine":
        fwd, inv = (lambda t: t), (lambda s: s)
        ref = max_stability_map(GevParams(0.0, 1.0, p_hat.xi), mult_total)
        step0 = 0.5 * p_hat.sigma * ref.sigma
        s_bounds = (-np.inf, np.inf)
    else:
        fwd = lambda t: math.log(t / (1.0 - t))
        inv = lambda s: 1.0 / (1.0 + math.exp(-s))
        step0 = 0.4
        s_bounds = (-40.0, 40.0)

    def endpoint(direction: int) -> float:
        s_hat = fwd(tau_hat)
        warm = nuis_hat.copy()
        prev_s, prev_d = s_hat, 0.0
        step = step0
        for _ in range(60):
            s = min(max(prev_s + direction * step, s_bounds[0]), s_bounds[1])
            d, warm = deviance(inv(s), warm)
            if d < prev_d - 1e-4 and "non-monotone" not in " ".join(warnings):
                warnings.append(
                    f"non-monotone profile deviance near target={to_report(inv(s)):.6g}; "
                    "interval may not be an interval")
            if d >= cutoff:
                # bisect on stored values: the deviance solver is warm-start
                # dependent, so endpoints must not be re-evaluated
                a, fa = prev_s, prev_d - cutoff
                b, fb = s, d - cutoff
                xtol = 1e-4 * max(abs(s_hat), abs(s - s_hat), 1e-8)
                while abs(b - a) > xtol:
                    mid = 0.5 * (a + b)
                    fm, warm = deviance(inv(mid), warm)
                    fm -= cutoff
                    if fm >= 0.0:
                        b, fb = mid, fm
                    else:
                        a, fa = mid, fm
                return inv(0.5 * (a + b))
            prev_s, prev_d = s, d
            if s in s_bounds:
                break
            step *= 1.6
        warnings.append(
            f"{'lower' if direction < 0 else 'upper'} endpoint open: deviance stayed "
            f"below the cutoff out to target={to_report(inv(prev_s)):.6g}")
        return inv(prev_s)

    lo = endpoint(-1)
    hi = endpoint(+1)
    est, lo, hi = to_report(tau_hat), to_report(lo), to_report(hi)
    lo, hi = min(lo, est), max(hi, est)
    return ProfileCI(est, lo, hi, level, repr(target), tuple(warnings))
