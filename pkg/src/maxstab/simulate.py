"""Data generators and the Monte Carlo harness for size/power studies.

Three block-frame scenarios draw each block as order statistics of one law
but replace the block maximum by a draw from a perturbed law conditioned to
stay the largest; the perturbation parameter delta recovers exact iid order
statistics at its null value.  Perturbed laws come from a location/scale
drift, from penultimate GEV approximations to classical distributions, and
from exact powers of a base distribution.  Two max-autoregressive series
supply dependent data whose marginal and block-maximum laws are known in
closed form.  `power_study` runs the max-stability test over grids of such
configurations with one RNG substream per replicate, so cell order and
parallel scheduling cannot change the numbers.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq
from scipy.stats import chi2, norm, weibull_min

from .fitting import fit_alternative, fit_null
from .gev import GevParams, gev_sample, truncated_gev_sample
from .likelihood import BlockFrame
from .stability import blocked_frame

__all__ = [
    "MarSpec",
    "PenultimateResult",
    "PowerCell",
    "ScenarioSpec",
    "TestSpec",
    "penultimate",
    "pooled_over_xi",
    "power_csv_rows",
    "power_study",
    "simulate_mar_frechet",
    "simulate_mar_gumbel",
    "simulate_mda",
    "simulate_penultimate_scenario",
    "simulate_scenario1",
]

SCENARIO_KINDS = ("scenario1", "penultimate", "mda", "mar_gumbel", "mar_frechet")
_FRAME_KINDS = ("scenario1", "penultimate", "mda")
_SERIES_KINDS = ("mar_gumbel", "mar_frechet")


def _require_rng(rng) -> np.random.Generator:
    if not isinstance(rng, np.random.Generator):
        raise ValueError("pass an explicit numpy Generator for reproducibility")
    return rng


def _checked_int(value, name: str, minimum: int) -> int:
    out = int(value)
    if out != value or out < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return out


@dataclass(frozen=True)
class MarSpec:
    """Configuration of a first-order max-autoregressive series.

    ``theta`` is the extremal index: mean extreme-cluster size 1/theta,
    theta=1 meaning independence.  ``xi`` is the marginal shape; the two
    recursions cover xi=0 (Gumbel) and xi>0 (Frechet) only.
    """

    theta: float
    xi: float = 0.0
    length: int = 1000

    def __post_init__(self) -> None:
        if not 0.0 < self.theta <= 1.0:
            raise ValueError(f"theta must lie in (0, 1], got {self.theta}")
        if not (np.isfinite(self.xi) and self.xi >= 0.0):
            raise ValueError(f"xi must be finite and >= 0, got {self.xi}")
        object.__setattr__(self, "length", _checked_int(self.length, "length", 1))


@dataclass(frozen=True)
class PenultimateResult:
    """GEV approximation to the m-fold power of a base distribution.

    The location d_m solves G(d_m) = exp(-1/m), so the approximation agrees
    with G^m exactly at its own location; c_m and xi_m are the value and
    slope there of phi(x) = -G(x) log G(x) / g(x).
    """

    d_m: float
    c_m: float
    xi_m: float

    def __post_init__(self) -> None:
        if not all(np.isfinite(v) for v in (self.d_m, self.c_m, self.xi_m)):
            raise ValueError("penultimate parameters must be finite")
        if self.c_m <= 0.0:
            raise ValueError(f"scale c_m must be positive, got {self.c_m}")

    @property
    def params(self) -> GevParams:
        return GevParams(self.d_m, self.c_m, self.xi_m)


# ---------------------------------------------------------------------------
# penultimate approximations


def _base_dist(base, shape: float | None):
    """Resolve a base distribution: by name or any object with cdf/pdf."""
    if hasattr(base, "cdf") and hasattr(base, "pdf"):
        if shape is not None:
            raise ValueError("shape applies only to named bases")
        return base
    name = str(base).lower()
    if name == "normal":
        if shape is not None:
            raise ValueError("the normal base takes no shape parameter")
        return norm()
    if name == "weibull":
        if shape is None:
            raise ValueError("the weibull base needs a shape parameter")
        if not (np.isfinite(shape) and shape > 0.0):
            raise ValueError(f"weibull shape must be positive, got {shape}")
        return weibull_min(float(shape))
    raise ValueError(f"unknown base distribution {base!r}; expected 'normal' or 'weibull'")


def _solve_location(dist, target: float) -> float:
    """x with dist.cdf(x) = target, to 1e-10 in probability."""
    if hasattr(dist, "ppf"):
        d = float(dist.ppf(target))
        if np.isfinite(d) and abs(float(dist.cdf(d)) - target) <= 1e-10:
            return d
    lo, hi, step = -1.0, 1.0, 1.0
    for _ in range(200):
        if float(dist.cdf(lo)) < target:
            break
        lo -= step
        step *= 2.0
    else:
        raise RuntimeError(f"could not bracket the location solving cdf = {target}")
    step = 1.0
    for _ in range(200):
        if float(dist.cdf(hi)) > target:
            break
        hi += step
        step *= 2.0
    else:
        raise RuntimeError(f"could not bracket the location solving cdf = {target}")
    return float(brentq(lambda x: float(dist.cdf(x)) - target, lo, hi, xtol=1e-12))


def _penultimate_of(dist, m: float) -> PenultimateResult:
    def phi(x: float) -> float:
        g_cdf = float(dist.cdf(x))
        return -g_cdf * math.log(g_cdf) / float(dist.pdf(x))

    d_m = _solve_location(dist, math.exp(-1.0 / m))
    h = 1e-5 * max(1.0, abs(d_m))  # relative step for the slope of phi
    xi_m = (phi(d_m + h) - phi(d_m - h)) / (2.0 * h)
    return PenultimateResult(d_m, phi(d_m), xi_m)


@lru_cache(maxsize=None)
def _penultimate_named(name: str, shape: float | None, m: float) -> PenultimateResult:
    return _penultimate_of(_base_dist(name, shape), m)


def penultimate(base, m: float, shape: float | None = None) -> PenultimateResult:
    """GEV parameters approximating the maximum of m draws from the base.

    ``base`` is 'normal', 'weibull' (with ``shape``), or any frozen
    distribution with cdf/pdf methods.  m may be fractional: only exp(-1/m)
    enters.
    """
    m = float(m)
    if not (np.isfinite(m) and m >= 2.0):
        raise ValueError(f"block length m must be >= 2, got {m}")
    if isinstance(base, str):
        return _penultimate_named(base.lower(), None if shape is None else float(shape), m)
    return _penultimate_of(_base_dist(base, shape), m)


# ---------------------------------------------------------------------------
# block-frame scenarios


def _conditional_frame(p_base: GevParams, p_max: GevParams, n: int, m: int,
                       rng: np.random.Generator) -> BlockFrame:
    """Order statistics of m draws from p_base, the largest replaced by a
    p_max draw conditioned to stay above the second largest.

    When p_max equals p_base the replacement reproduces the conditional law
    of the maximum given the rest, so rows are exact iid order statistics.
    """
    draws = gev_sample(p_base, (n, m), rng)
    draws.sort(axis=1)
    for i in range(n):
        second = float(draws[i, -2])
        t = truncated_gev_sample(p_max, second, np.inf, rng)
        draws[i, -1] = max(t, np.nextafter(second, np.inf))  # keep it the strict maximum
    return BlockFrame(draws)


def simulate_scenario1(n: int, m: int, delta: float,
                       rng: np.random.Generator) -> BlockFrame:
    """Blocks of GEV(0, 1, 0.1) order statistics whose maximum drifts with
    delta: it is drawn from GEV(delta, exp(-delta/10), 0.1) conditioned above
    the second largest.  delta=0 is the max-stable null."""
    n = _checked_int(n, "n", 1)
    m = _checked_int(m, "m", 2)
    _require_rng(rng)
    if not (np.isfinite(delta) and delta >= 0.0):
        raise ValueError(f"delta must be finite and >= 0, got {delta}")
    p_base = GevParams(0.0, 1.0, 0.1)
    p_max = GevParams(float(delta), math.exp(-delta / 10.0), 0.1)
    return _conditional_frame(p_base, p_max, n, m, rng)


def simulate_penultimate_scenario(base, n: int, m: int, delta: float,
                                  rng: np.random.Generator, shape: float | None = None,
                                  m_base: float = 30.0) -> BlockFrame:
    """Blocks of order statistics from the penultimate GEV of m_base draws,
    the maximum drawn from the penultimate GEV of m_base*delta draws
    conditioned above the second largest.  delta=1 is the null."""
    n = _checked_int(n, "n", 1)
    m = _checked_int(m, "m", 2)
    _require_rng(rng)
    if not (np.isfinite(delta) and delta >= 1.0):
        raise ValueError(f"delta must be finite and >= 1 (1 is the null), got {delta}")
    p_base = penultimate(base, m_base, shape).params
    p_max = penultimate(base, m_base * float(delta), shape).params
    return _conditional_frame(p_base, p_max, n, m, rng)


def _sample_base(dist, size, rng: np.random.Generator) -> np.ndarray:
    u = rng.uniform(size=size)
    # keep ppf off the exact endpoints of [0, 1)
    return dist.ppf(np.clip(u, 1e-300, None))


def simulate_mda(base, n: int, m: int, delta: float, rng: np.random.Generator,
                 m_base: int = 30, shape: float | None = None) -> BlockFrame:
    """Blocks of m cells, each the exact maximum of m_base base draws, with
    the block maximum replaced by a draw from G^(m_base*delta) conditioned
    above the second largest.  delta=1 is exchangeable G^m_base data; the
    cells are never exactly GEV, so tests on them see misspecification."""
    n = _checked_int(n, "n", 1)
    m = _checked_int(m, "m", 2)
    m_base = _checked_int(m_base, "m_base", 1)
    _require_rng(rng)
    if not (np.isfinite(delta) and delta >= 1.0):
        raise ValueError(f"delta must be finite and >= 1 (1 is the null), got {delta}")
    dist = _base_dist(base, shape)
    cells = _sample_base(dist, (n, m, m_base), rng).max(axis=2)
    cells.sort(axis=1)
    second = cells[:, -2]
    power = m_base * float(delta)
    floor = np.exp(power * dist.logcdf(second))
    u = floor + (1.0 - floor) * rng.uniform(size=n)
    u_pow = np.minimum(u ** (1.0 / power), np.nextafter(1.0, 0.0))
    cells[:, -1] = np.maximum(dist.ppf(u_pow), np.nextafter(second, np.inf))
    return BlockFrame(cells)


# ---------------------------------------------------------------------------
# max-autoregressive series

# Both recursions reduce, on a log/level scale, to
#   V_i = max(V_{i-1} + a, W_i + b)  with a = drift, b in {a, 0},
# whose solution V_i - i*a is the running maximum of shifted innovations;
# np.maximum.accumulate then replaces the sequential loop exactly.


def _running_max_recursion(v0: float, w: np.ndarray, a: float, shift_w: bool) -> np.ndarray:
    length = w.size + 1
    idx = np.arange(length, dtype=float)
    # V_i - i*a is the running max of V_0 and the shifted innovations:
    # W_i - (i-1)*a when the drift applies to W too, W_i - i*a when not
    offset = a if shift_w else 0.0
    cand = np.concatenate([[v0], w - a * idx[1:] + offset])
    return np.maximum.accumulate(cand) + a * idx


def simulate_mar_gumbel(spec: MarSpec, rng: np.random.Generator) -> np.ndarray:
    """Stationary series Y_i = max(Y_{i-1}, Z_i) + log(1-theta) with standard
    Gumbel marginals and extremal index theta.

    Z_i ~ Gumbel(log(theta) - log(1-theta)); Y_0 starts at the exact
    stationary law, so no burn-in is needed.  The maximum of m consecutive
    values is Gumbel with location log(1 + (m-1) theta); theta=1 degenerates
    to an iid standard Gumbel series.
    """
    if not isinstance(spec, MarSpec):
        spec = MarSpec(**spec)
    _require_rng(rng)
    if spec.xi != 0.0:
        raise ValueError("the Gumbel recursion requires xi = 0; use simulate_mar_frechet")
    standard = GevParams(0.0, 1.0, 0.0)
    if spec.theta == 1.0:
        return np.atleast_1d(gev_sample(standard, spec.length, rng))
    a = math.log1p(-spec.theta)
    y0 = float(gev_sample(standard, None, rng))
    z = np.atleast_1d(gev_sample(GevParams(math.log(spec.theta) - a, 1.0, 0.0),
                                 spec.length - 1, rng))
    # Y_i = max(Y_{i-1} + a, Z_i + a): drift applies to the innovation too
    return _running_max_recursion(y0, z, a, shift_w=True)


def simulate_mar_frechet(spec: MarSpec, rng: np.random.Generator) -> np.ndarray:
    """Stationary series Y_i = max((1-theta)^xi Y_{i-1}, Z_i) with GEV(1, xi,
    xi) marginals (Frechet) and extremal index theta.

    Z_i ~ GEV(theta^xi, xi theta^xi, xi); Y_0 starts at the exact stationary
    law.  The maximum of m consecutive values has distribution function
    exp(-(theta (m-1) + 1) x^(-1/xi)); theta=1 degenerates to iid draws.
    """
    if not isinstance(spec, MarSpec):
        spec = MarSpec(**spec)
    _require_rng(rng)
    if spec.xi <= 0.0:
        raise ValueError("the Frechet recursion requires xi > 0; use simulate_mar_gumbel")
    xi = spec.xi
    scale = spec.theta ** xi
    z_params = GevParams(scale, xi * scale, xi)  # support (0, inf)
    if spec.theta == 1.0:
        return np.atleast_1d(gev_sample(z_params, spec.length, rng))
    y0 = float(gev_sample(GevParams(1.0, xi, xi), None, rng))
    z = np.atleast_1d(gev_sample(z_params, spec.length - 1, rng))
    a = xi * math.log1p(-spec.theta)
    # log Y_i = max(log Y_{i-1} + a, log Z_i): drift on the carried term only
    return np.exp(_running_max_recursion(math.log(y0), np.log(z), a, shift_w=False))


# ---------------------------------------------------------------------------
# power/size harness


def _float_grid(values, name: str) -> tuple[float, ...]:
    if np.isscalar(values):
        values = (values,)
    out = tuple(float(v) for v in values)
    if any(not np.isfinite(v) for v in out):
        raise ValueError(f"{name} grid must be finite, got {out}")
    return out


def _int_grid(values, name: str, minimum: int) -> tuple[int, ...]:
    if np.isscalar(values):
        values = (values,)
    return tuple(_checked_int(v, name, minimum) for v in values)


@dataclass(frozen=True)
class ScenarioSpec:
    """Grid of data-generating configurations for one scenario kind.

    Frame kinds (scenario1, penultimate, mda) use the ``delta`` departure
    grid and, except scenario1, a named base distribution.  Series kinds
    (mar_gumbel, mar_frechet) use the ``theta`` and ``xi`` grids; each cell
    generates n*c*m values so the blocked frame has exactly n rows.
    """

    kind: str
    n: tuple[int, ...]
    m: tuple[int, ...]
    delta: tuple[float, ...] = ()
    theta: tuple[float, ...] = ()
    xi: tuple[float, ...] = ()
    base: str = "normal"
    shape: float | None = None
    m_base: int = 30

    def __post_init__(self) -> None:
        if self.kind not in SCENARIO_KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; expected one of {SCENARIO_KINDS}")
        object.__setattr__(self, "n", _int_grid(self.n, "n", 1))
        object.__setattr__(self, "m", _int_grid(self.m, "m", 2 if self.kind in _FRAME_KINDS else 1))
        object.__setattr__(self, "delta", _float_grid(self.delta, "delta"))
        object.__setattr__(self, "theta", _float_grid(self.theta, "theta"))
        object.__setattr__(self, "xi", _float_grid(self.xi, "xi"))
        object.__setattr__(self, "m_base", _checked_int(self.m_base, "m_base", 1))
        if self.kind in _FRAME_KINDS:
            if not self.delta:
                raise ValueError(f"{self.kind} needs a delta grid")
            low = 0.0 if self.kind == "scenario1" else 1.0
            if any(d < low for d in self.delta):
                raise ValueError(f"{self.kind} needs delta >= {low}, got {self.delta}")
            if self.theta or self.xi:
                raise ValueError(f"{self.kind} takes no theta/xi grid")
        else:
            if not self.theta:
                raise ValueError(f"{self.kind} needs a theta grid")
            if any(not 0.0 < t <= 1.0 for t in self.theta):
                raise ValueError(f"theta grid must lie in (0, 1], got {self.theta}")
            if self.delta:
                raise ValueError(f"{self.kind} takes no delta grid")
            if self.kind == "mar_gumbel":
                if not self.xi:
                    object.__setattr__(self, "xi", (0.0,))
                if self.xi != (0.0,):
                    raise ValueError("mar_gumbel fixes xi = 0")
            else:
                if not self.xi:
                    raise ValueError("mar_frechet needs an xi grid of positive shapes")
                if any(x <= 0.0 for x in self.xi):
                    raise ValueError(f"mar_frechet needs xi > 0, got {self.xi}")


@dataclass(frozen=True)
class TestSpec:
    """Which max-stability tests to run on each generated dataset."""

    __test__ = False  # the name would otherwise be collected by pytest

    alternatives: tuple[str, ...] = ("a1",)
    c: int = 2  # super-block factor for series scenarios

    def __post_init__(self) -> None:
        alts = (self.alternatives,) if isinstance(self.alternatives, str) else tuple(self.alternatives)
        if not alts or any(a not in ("a1", "a2", "a3") for a in alts):
            raise ValueError(f"alternatives must be drawn from a1, a2, a3, got {alts}")
        if len(set(alts)) != len(alts):
            raise ValueError(f"duplicate alternatives in {alts}")
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "c", _checked_int(self.c, "c", 2))


@dataclass(frozen=True)
class PowerCell:
    """Rejection tally of one test on one data-generating configuration.

    ``failures`` counts replicates whose fits did not converge; the power
    estimate and its binomial standard error use the completed ones only.
    """

    kind: str
    alternative: str
    n: int
    m: int
    level: float
    reps: int
    rejections: int
    failures: int
    delta: float | None = None
    theta: float | None = None
    xi: float | None = None
    base: str | None = None
    shape: float | None = None
    c: int | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.failures <= self.reps:
            raise ValueError(f"failures must lie in [0, reps], got {self.failures}")
        if not 0 <= self.rejections <= self.reps - self.failures:
            raise ValueError(f"rejections must lie in [0, completed], got {self.rejections}")

    @property
    def completed(self) -> int:
        return self.reps - self.failures

    @property
    def power(self) -> float:
        return self.rejections / self.completed if self.completed else math.nan

    @property
    def mc_se(self) -> float:
        if not self.completed:
            return math.nan
        p = self.power
        return math.sqrt(p * (1.0 - p) / self.completed)

    @property
    def failure_rate(self) -> float:
        return self.failures / self.reps


def _data_cells(spec: ScenarioSpec) -> list[dict]:
    """Grid points in deterministic order: departure axes outermost."""
    cells = []
    if spec.kind in _FRAME_KINDS:
        for delta in spec.delta:
            for n in spec.n:
                for m in spec.m:
                    cells.append({"delta": delta, "n": n, "m": m})
    else:
        for theta in spec.theta:
            for xi in spec.xi:
                for n in spec.n:
                    for m in spec.m:
                        cells.append({"theta": theta, "xi": xi, "n": n, "m": m})
    return cells


def _generate_frame(spec: ScenarioSpec, cell: dict, c: int,
                    rng: np.random.Generator) -> BlockFrame:
    n, m = cell["n"], cell["m"]
    if spec.kind == "scenario1":
        return simulate_scenario1(n, m, cell["delta"], rng)
    if spec.kind == "penultimate":
        return simulate_penultimate_scenario(spec.base, n, m, cell["delta"], rng,
                                             shape=spec.shape, m_base=spec.m_base)
    if spec.kind == "mda":
        return simulate_mda(spec.base, n, m, cell["delta"], rng,
                            m_base=spec.m_base, shape=spec.shape)
    mar = MarSpec(theta=cell["theta"], xi=cell["xi"], length=n * c * m)
    series = (simulate_mar_gumbel if spec.kind == "mar_gumbel" else simulate_mar_frechet)(mar, rng)
    frame, _ = blocked_frame(series, m, c)  # length is an exact multiple, nothing dropped
    return frame


def _seed_sequence(rng) -> np.random.SeedSequence:
    if isinstance(rng, np.random.SeedSequence):
        return rng
    if isinstance(rng, np.random.Generator):
        return rng.bit_generator.seed_seq
    if isinstance(rng, (int, np.integer)):
        return np.random.SeedSequence(int(rng))
    raise ValueError("pass a Generator, SeedSequence or integer seed for reproducibility")


def power_study(scenario: ScenarioSpec, test: TestSpec | None = None,
                level: float = 0.05, reps: int = 2000, rng=None) -> list[PowerCell]:
    """Monte Carlo rejection rates of the max-stability test over a grid.

    Each replicate regenerates data, fits the null once and every requested
    alternative on the same frame, and rejects when the chi-square p-value
    falls below ``level``.  Null-fit failures spoil the replicate for all
    alternatives; alternative-fit failures only their own tally.  Replicates
    get independent substreams spawned per data cell, so results depend only
    on (scenario, test, level, reps, seed).
    """
    if not isinstance(scenario, ScenarioSpec):
        raise ValueError(f"scenario must be a ScenarioSpec, got {type(scenario).__name__}")
    test = TestSpec() if test is None else test
    if not isinstance(test, TestSpec):
        raise ValueError(f"test must be a TestSpec, got {type(test).__name__}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    reps = _checked_int(reps, "reps", 100)
    cells = _data_cells(scenario)
    cell_seeds = _seed_sequence(rng).spawn(len(cells))
    series_kind = scenario.kind in _SERIES_KINDS
    out: list[PowerCell] = []
    for cell, cell_seed in zip(cells, cell_seeds):
        rejections = dict.fromkeys(test.alternatives, 0)
        failures = dict.fromkeys(test.alternatives, 0)
        for rep_seed in cell_seed.spawn(reps):
            rep_rng = np.random.default_rng(rep_seed)
            try:
                frame = _generate_frame(scenario, cell, test.c, rep_rng)
                null = fit_null(frame, want_cov=False)
            except (ValueError, RuntimeError):
                null = None
            if null is None or not null.converged:
                for kind in test.alternatives:
                    failures[kind] += 1
                continue
            for kind in test.alternatives:
                alt = fit_alternative(frame, kind, null_fit=null, want_cov=False)
                if not alt.converged:
                    failures[kind] += 1
                    continue
                statistic = max(0.0, 2.0 * (alt.loglik - null.loglik))
                if float(chi2.sf(statistic, alt.alt.df)) < level:
                    rejections[kind] += 1
        for kind in test.alternatives:
            out.append(PowerCell(
                kind=scenario.kind,
                alternative=kind,
                n=cell["n"],
                m=cell["m"],
                level=float(level),
                reps=reps,
                rejections=rejections[kind],
                failures=failures[kind],
                delta=cell.get("delta"),
                theta=cell.get("theta"),
                xi=cell.get("xi"),
                base=scenario.base if scenario.kind in ("penultimate", "mda") else None,
                shape=scenario.shape if scenario.kind in ("penultimate", "mda") else None,
                c=test.c if series_kind else None,
            ))
    return out


def pooled_over_xi(cells: list[PowerCell]) -> list[PowerCell]:
    """Merge cells that differ only in the marginal shape xi.

    The paper-style summary for dependent-series studies averages over
    shapes; with equal replicate counts the pooled proportion is that
    average.  Pooled cells carry xi=None.
    """
    groups: dict[tuple, list[PowerCell]] = {}
    for cell in cells:
        key = (cell.kind, cell.alternative, cell.n, cell.m, cell.level,
               cell.delta, cell.theta, cell.base, cell.shape, cell.c)
        groups.setdefault(key, []).append(cell)
    return [dataclasses.replace(
        members[0],
        xi=None,
        reps=sum(c.reps for c in members),
        rejections=sum(c.rejections for c in members),
        failures=sum(c.failures for c in members),
    ) for members in groups.values()]


def power_csv_rows(cells: list[PowerCell]) -> tuple[list[str], list[list]]:
    """Long-format rows for the power-table artifact, one line per cell."""
    header = ["kind", "base", "shape", "delta", "theta", "xi", "n", "m", "c",
              "alternative", "level", "reps", "rejections", "failures",
              "power", "mc_se", "failure_rate"]
    rows = []
    for cell in cells:
        raw = [cell.kind, cell.base, cell.shape, cell.delta, cell.theta, cell.xi,
               cell.n, cell.m, cell.c, cell.alternative, cell.level, cell.reps,
               cell.rejections, cell.failures, cell.power, cell.mc_se,
               cell.failure_rate]
        rows.append(["" if v is None else v for v in raw])
    return header, rows
