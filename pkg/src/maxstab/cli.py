"""Command-line front end over the library: ingest, fit, test, select,
diagnose, efficiency curves, power studies, and data generation.

Every command emits a JSON report on stdout (or to --out) whose "config"
block echoes the fully resolved run configuration, seed included, so a rerun
with the same flags is byte-identical.  Tabular artifacts (band curves,
power tables, simulated data) go to the path given by --csv.  Exit codes:
0 on success, 1 on input or validation errors, 2 when a fit or bootstrap
fails to converge.  No plotting here; the CSV tables are the plot data.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import datetime
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from maxstab.bands import band_covers, band_csv_rows, parametric_band
from maxstab.fisher import are_overall, ci_length_ratio
from maxstab.fitting import FitResult, ReturnLevel, fit_gev, profile_ci
from maxstab.likelihood import DataTreatment
from maxstab.simulate import (SCENARIO_KINDS, MarSpec, ScenarioSpec, TestSpec,
                              pooled_over_xi, power_csv_rows, power_study,
                              simulate_mar_frechet, simulate_mar_gumbel,
                              simulate_mda, simulate_penultimate_scenario,
                              simulate_scenario1)
from maxstab.stability import ConvergenceError, sequential_selection, test_blocksize

__all__ = [
    "RunConfig", "SeriesData", "ingest", "main",
    "cmd_fit", "cmd_test", "cmd_select", "cmd_diagnose",
    "cmd_are", "cmd_power", "cmd_simulate",
]

_ALTERNATIVES = ("a1", "a2", "a3")
_MISSING_MARKERS = frozenset({"", ".", "na", "n/a", "nan", "null", "missing"})
_THREADS_ENV = "MAXSTAB_THREADS"


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one invocation, echoed into every output."""

    command: str
    input: str | None = None
    format: str = "auto"
    m: int | None = None
    c: int | None = None
    alternative: str = "a1"
    delta: float = 0.0
    u: float | None = None
    level: float = 0.05
    bootstrap: int = 1000
    positions: int | None = None
    seed: int = 0
    blocks_per_year: float | None = None
    window: str | None = None
    running_sum: int = 1
    threads: int = 1
    out: str | None = None
    csv: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.format not in ("auto", "csv", "plain"):
            raise ValueError(f"format must be auto, csv or plain, got {self.format!r}")
        if self.m is not None and (not isinstance(self.m, int) or self.m < 1):
            raise ValueError(f"block length m must be a positive integer, got {self.m}")
        if self.c is not None and (not isinstance(self.c, int) or self.c < 2):
            raise ValueError(f"factor c must be an integer >= 2, got {self.c}")
        if self.alternative not in _ALTERNATIVES:
            raise ValueError(f"alternative must be one of {_ALTERNATIVES}, got {self.alternative!r}")
        if not (np.isfinite(self.delta) and self.delta >= 0.0):
            raise ValueError(f"rounding width must be finite and >= 0, got {self.delta}")
        if self.u is not None and not np.isfinite(self.u):
            raise ValueError(f"censoring bound must be finite, got {self.u}")
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must lie in (0, 1), got {self.level}")
        if not isinstance(self.bootstrap, int) or self.bootstrap < 1:
            raise ValueError(f"bootstrap size must be a positive integer, got {self.bootstrap}")
        if self.positions is not None and (not isinstance(self.positions, int) or self.positions < 1):
            raise ValueError(f"positions must be a positive integer, got {self.positions}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed}")
        if self.blocks_per_year is not None and not (
                np.isfinite(self.blocks_per_year) and self.blocks_per_year > 0):
            raise ValueError(f"blocks per year must be positive, got {self.blocks_per_year}")
        if not isinstance(self.running_sum, int) or self.running_sum < 1:
            raise ValueError(f"running-sum width must be a positive integer, got {self.running_sum}")
        if not isinstance(self.threads, int) or self.threads < 1:
            raise ValueError(f"thread count must be a positive integer, got {self.threads}")
        if self.window is not None:
            _parse_window(self.window)

    def echo(self) -> dict:
        """Flat dict of all resolved settings for the report metadata."""
        d = dataclasses.asdict(self)
        extras = d.pop("extra")
        overlap = set(extras) & set(d)
        if overlap:
            raise ValueError(f"extra config keys shadow base fields: {sorted(overlap)}")
        d.update(extras)
        return d


def _default_threads() -> int:
    raw = os.environ.get(_THREADS_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{_THREADS_ENV} must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# ingestion


@dataclass(frozen=True)
class SeriesData:
    """Observation vector plus bookkeeping from one ingested file."""

    values: np.ndarray
    n_rows: int
    n_missing: int
    n_selected: int
    n_runs: int

    def summary(self) -> dict:
        return {"rows": self.n_rows, "missing_dropped": self.n_missing,
                "selected": self.n_selected, "runs": self.n_runs,
                "observations": int(self.values.size)}


def _parse_month_day(token: str) -> tuple[int, int]:
    parts = token.split("-")
    if len(parts) != 2:
        raise ValueError(f"expected MM-DD, got {token!r}")
    month, day = int(parts[0]), int(parts[1])
    datetime.date(2000, month, day)  # leap year, so 02-29 is a legal endpoint
    return month, day


def _parse_window(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """Parse MM-DD:MM-DD into two month/day endpoints (may wrap the year)."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"window must look like MM-DD:MM-DD, got {text!r}")
    try:
        return _parse_month_day(parts[0]), _parse_month_day(parts[1])
    except ValueError as err:
        raise ValueError(f"bad window {text!r}: {err}") from None


def _in_window(day: datetime.date, window) -> bool:
    start, end = window
    key = (day.month, day.day)
    if start <= end:
        return start <= key <= end
    return key >= start or key <= end  # wraps over the year end


def _parse_value(token: str, line_no: int) -> float | None:
    tok = token.strip()
    if tok.lower() in _MISSING_MARKERS:
        return None
    try:
        value = float(tok)
    except ValueError:
        raise ValueError(f"line {line_no}: cannot parse value {tok!r}") from None
    if math.isnan(value):
        return None
    if math.isinf(value):
        raise ValueError(f"line {line_no}: non-finite value {tok!r}")
    return value


def _parse_date(token: str, line_no: int) -> datetime.date:
    tok = token.strip()
    try:
        return datetime.date.fromisoformat(tok)
    except ValueError:
        pass
    try:
        return datetime.datetime.fromisoformat(tok).date()
    except ValueError:
        raise ValueError(f"line {line_no}: cannot parse timestamp {tok!r}") from None


def _read_csv(path: str) -> list[tuple[datetime.date | None, float | None, int]]:
    """Rows as (date, value, line). One column: values only. Two or more:
    ISO date first, value second, extra cells ignored."""
    rows: list[tuple[datetime.date | None, float | None, int]] = []
    dated: bool | None = None
    with open(path, newline="") as handle:
        for line_no, cells in enumerate(csv.reader(handle), start=1):
            cells = [c.strip() for c in cells]
            if not any(cells):
                continue
            if dated is None:
                # first non-empty row decides the layout; an unparseable
                # first row is taken as a header line
                try:
                    _parse_value(cells[-1 if len(cells) == 1 else 1], line_no)
                    if len(cells) >= 2:
                        _parse_date(cells[0], line_no)
                except (ValueError, IndexError):
                    dated = len(cells) >= 2
                    continue
                dated = len(cells) >= 2
            if dated:
                if len(cells) < 2:
                    raise ValueError(f"line {line_no}: expected timestamp and value columns")
                rows.append((_parse_date(cells[0], line_no),
                             _parse_value(cells[1], line_no), line_no))
            else:
                if len(cells) != 1:
                    raise ValueError(f"line {line_no}: expected a single value column")
                rows.append((None, _parse_value(cells[0], line_no), line_no))
    return rows


def _read_plain(path: str) -> list[tuple[None, float | None, int]]:
    rows: list[tuple[None, float | None, int]] = []
    with open(path) as handle:
        for line_no, line in enumerate(handle, start=1):
            for token in line.split():
                rows.append((None, _parse_value(token, line_no), line_no))
    return rows


def _running_sums(values: np.ndarray, dates: list, width: int) -> tuple[np.ndarray, int]:
    """Width-k sums within runs of consecutive calendar days.

    Without timestamps the whole vector is one run.  Runs shorter than the
    width contribute nothing.  Returns the sums and the number of runs used.
    """
    breaks = [0]
    if dates:
        for i in range(1, len(dates)):
            if (dates[i] - dates[i - 1]).days != 1:
                breaks.append(i)
    breaks.append(len(values))
    kernel = np.ones(width)
    chunks = []
    used = 0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi - lo >= width:
            chunks.append(np.convolve(values[lo:hi], kernel, mode="valid"))
            used += 1
    if not chunks:
        raise ValueError(
            f"no run of {width} consecutive observations; running sums are empty")
    return np.concatenate(chunks), used


def ingest(path: str, fmt: str = "auto", window: str | None = None,
           running_sum: int = 1) -> SeriesData:
    """Read a series file into an ordered vector of finite values.

    ``fmt`` "auto" treats .csv files as CSV and anything else as plain
    whitespace-separated numbers.  Missing markers (na, nan, null, empty,
    dot) are dropped and counted.  ``window`` keeps only observations whose
    month and day fall in an inclusive MM-DD:MM-DD range, which may wrap
    the year end; it requires a timestamp column.  ``running_sum`` replaces
    the series by sums over that many consecutive days, computed separately
    within each gap-free stretch of dates.
    """
    if fmt == "auto":
        fmt = "csv" if path.lower().endswith(".csv") else "plain"
    if fmt == "csv":
        raw = _read_csv(path)
    elif fmt == "plain":
        raw = _read_plain(path)
    else:
        raise ValueError(f"format must be csv or plain, got {fmt!r}")
    if not isinstance(running_sum, int) or running_sum < 1:
        raise ValueError(f"running-sum width must be a positive integer, got {running_sum}")

    n_rows = len(raw)
    kept = [(d, v, ln) for d, v, ln in raw if v is not None]
    n_missing = n_rows - len(kept)
    if not kept:
        raise ValueError(f"{path}: no usable observations "
                         f"({n_rows} rows, {n_missing} missing)")

    have_dates = kept[0][0] is not None
    if have_dates:
        for (prev, _, _), (cur, _, ln) in zip(kept, kept[1:]):
            if cur < prev:
                raise ValueError(f"line {ln}: timestamps not in chronological order")

    if window is not None:
        if not have_dates:
            raise ValueError("window filter requires a timestamp column")
        win = _parse_window(window)
        kept = [(d, v, ln) for d, v, ln in kept if _in_window(d, win)]
        if not kept:
            raise ValueError(f"window {window} selects no observations")
    n_selected = len(kept)

    values = np.array([v for _, v, _ in kept], dtype=float)
    n_runs = 1
    if running_sum > 1:
        dates = [d for d, _, _ in kept] if have_dates else []
        values, n_runs = _running_sums(values, dates, running_sum)
    return SeriesData(values=values, n_rows=n_rows, n_missing=n_missing,
                      n_selected=n_selected, n_runs=n_runs)


# ---------------------------------------------------------------------------
# shared command plumbing


def _treatment_for(cfg: RunConfig, values: np.ndarray) -> DataTreatment:
    if cfg.u is not None and cfg.u >= float(np.max(values)):
        raise ValueError(f"censoring bound {cfg.u} is at or above the sample "
                         f"maximum {float(np.max(values))}; nothing would remain")
    return DataTreatment(delta=cfg.delta, u=-np.inf if cfg.u is None else cfg.u)


def _block_maxima(values: np.ndarray, m: int) -> tuple[np.ndarray, int]:
    n_blocks = values.size // m
    if n_blocks == 0:
        raise ValueError(f"series of length {values.size} holds no complete "
                         f"block of length {m}")
    dropped = int(values.size - n_blocks * m)
    return values[: n_blocks * m].reshape(n_blocks, m).max(axis=1), dropped


def _fit_dict(fit: FitResult) -> dict:
    p = fit.params
    out = {"params": {"mu": float(p.mu), "sigma": float(p.sigma), "xi": float(p.xi)},
           "loglik": float(fit.loglik), "converged": bool(fit.converged),
           "n_evals": int(fit.n_evals), "se": None}
    se = fit.se
    if se is not None:
        out["se"] = {"mu": float(se[0]), "sigma": float(se[1]), "xi": float(se[2])}
    return out


def _require(value, flag: str):
    if value is None:
        raise ValueError(f"{flag} is required for this command")
    return value


def _plain_json(obj):
    """Recursively convert numpy containers and scalars; NaN becomes null."""
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        return {str(k): _plain_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain_json(v) for v in obj]
    if isinstance(obj, float) and math.isnan(obj):
        return None
    return obj


def _write_report(cfg: RunConfig, result: dict) -> None:
    report = {"command": cfg.command, "config": cfg.echo(), "result": result}
    text = json.dumps(_plain_json(report), indent=2, sort_keys=True,
                      allow_nan=False) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _write_table(cfg: RunConfig, table) -> None:
    if cfg.csv is None:
        return
    if table is None:
        raise ValueError(f"the {cfg.command} command produces no CSV table")
    header, rows = table
    with open(cfg.csv, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if v is None else v for v in row])


# ---------------------------------------------------------------------------
# commands; each returns (result dict, optional (header, rows) table)


def cmd_fit(cfg: RunConfig) -> tuple[dict, None]:
    data = ingest(cfg.input, cfg.format, cfg.window, cfg.running_sum)
    treatment = _treatment_for(cfg, data.values)
    m = cfg.m if cfg.m is not None else 1
    maxima, dropped = _block_maxima(data.values, m)
    fit = fit_gev(maxima, treatment)
    if not fit.converged:
        raise ConvergenceError(f"fit did not converge after {fit.n_evals} evaluations")
    result = {"ingest": data.summary(), "block_length": m,
              "n_blocks": int(maxima.size), "dropped_tail": dropped,
              "fit": _fit_dict(fit)}
    period = cfg.extra.get("period")
    if period is not None:
        target = ReturnLevel(period=period,
                             blocks_per_year=cfg.blocks_per_year or 1.0)
        ci = profile_ci(maxima, target, level=1.0 - cfg.level, treatment=treatment)
        result["return_level"] = {
            "period": float(period),
            "blocks_per_year": float(cfg.blocks_per_year or 1.0),
            "estimate": ci.estimate, "lower": ci.lower, "upper": ci.upper,
            "level": ci.level, "warnings": list(ci.warnings)}
    return result, None


def cmd_test(cfg: RunConfig) -> tuple[dict, tuple]:
    data = ingest(cfg.input, cfg.format, cfg.window, cfg.running_sum)
    treatment = _treatment_for(cfg, data.values)
    m = _require(cfg.m, "--block-length/-m")
    c = cfg.c if cfg.c is not None else 2
    report = test_blocksize(data.values, m, c, treatment, alt_kind=cfg.alternative)
    info = report.to_dict()
    reject = bool(report.p_value < cfg.level)
    result = {"ingest": data.summary(), "test": info,
              "level": cfg.level, "reject": reject}
    header = ["m", "c", "alternative", "statistic", "df", "p_value", "reject"]
    rows = [[report.m, report.factor_c, report.alt_kind,
             float(report.statistic), report.df, float(report.p_value), int(reject)]]
    return result, (header, rows)


def cmd_select(cfg: RunConfig) -> tuple[dict, tuple]:
    data = ingest(cfg.input, cfg.format, cfg.window, cfg.running_sum)
    treatment = _treatment_for(cfg, data.values)
    grid = cfg.extra["grid"]
    c = cfg.c if cfg.c is not None else 2
    sel = sequential_selection(data.values, grid, c=c, treatment=treatment,
                               alt_kind=cfg.alternative, level=cfg.level)
    result = {"ingest": data.summary(), "grid": list(grid),
              "selected": sel.selected, "accepted": sel.accepted,
              "level": sel.level,
              "trail": [r.to_dict() for r in sel.reports]}
    header = ["m", "c", "alternative", "statistic", "df", "p_value", "reject"]
    rows = [[r.m, r.factor_c, r.alt_kind, float(r.statistic), r.df,
             float(r.p_value), int(r.p_value < cfg.level)] for r in sel.reports]
    return result, (header, rows)


def cmd_diagnose(cfg: RunConfig) -> tuple[dict, tuple]:
    data = ingest(cfg.input, cfg.format, cfg.window, cfg.running_sum)
    treatment = _treatment_for(cfg, data.values)
    m = cfg.m if cfg.m is not None else 1
    maxima, dropped = _block_maxima(data.values, m)
    fit = fit_gev(maxima, treatment)
    if not fit.converged:
        raise ConvergenceError(f"fit did not converge after {fit.n_evals} evaluations")
    band, pivots = parametric_band(maxima, fit=fit, treatment=treatment,
                                   kind="all_observations", alpha=cfg.level,
                                   B=cfg.bootstrap, N=cfg.positions,
                                   rng=np.random.default_rng(cfg.seed))
    result = {"ingest": data.summary(), "block_length": m,
              "n_blocks": int(maxima.size), "dropped_tail": dropped,
              "fit": _fit_dict(fit),
              "band": {"alpha": band.alpha, "alpha_star": band.alpha_star,
                       "B": band.B, "N": int(band.positions.size), "n": band.n,
                       "n_retained": pivots.n_retained, "kind": pivots.kind,
                       "covered": band_covers(band, pivots.values)}}
    return result, band_csv_rows(band, pivots)


def cmd_are(cfg: RunConfig) -> tuple[dict, tuple]:
    target = cfg.extra["target"]
    xi = cfg.extra["xi"]
    period = cfg.extra.get("period")
    curve = []
    for m in cfg.extra["m_grid"]:
        if target == "overall":
            ratio = are_overall(xi, m)
        else:
            ratio = ci_length_ratio(target, xi, m, period=period)
        curve.append({"m": float(m), "ratio": float(ratio)})
    result = {"target": target, "xi": float(xi), "period": period, "curve": curve}
    header = ["target", "xi", "m", "ratio"]
    rows = [[target, float(xi), pt["m"], pt["ratio"]] for pt in curve]
    return result, (header, rows)


def _resolve_power_spec(path: str, args) -> dict:
    """Read a scenario spec file and fold in flag overrides.

    The file holds the scenario grid plus optional run settings
    (alternatives, c, reps, level, seed); explicit flags win over the file.
    Returns the extra-config block with everything needed to rerun.
    """
    with open(path) as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict):
        raise ValueError("power spec must be a JSON object")
    run_defaults = {"alternatives": ("a1",), "c": 2, "reps": 2000,
                    "level": 0.05, "seed": 0}
    run = {k: raw.pop(k, default) for k, default in run_defaults.items()}
    for key in ("kind", "n", "m"):
        if key not in raw:
            raise ValueError(f"power spec is missing {key!r}")
    unknown = set(raw) - {"kind", "n", "m", "delta", "theta", "xi",
                          "base", "shape", "m_base"}
    if unknown:
        raise ValueError(f"power spec has unknown keys: {sorted(unknown)}")
    scenario = ScenarioSpec(**raw)  # validates the grids now, not mid-run
    alternatives = run["alternatives"]
    if isinstance(alternatives, str):
        alternatives = (alternatives,)
    test = TestSpec(alternatives=tuple(alternatives), c=int(run["c"]))
    extra = {"scenario": dataclasses.asdict(scenario),
             "alternatives": list(test.alternatives),
             "reps": args.reps if args.reps is not None else int(run["reps"]),
             "pool_xi": bool(args.pool_xi)}
    resolved = {"c": test.c,
                "level": args.level if args.level is not None else float(run["level"]),
                "seed": args.seed if args.seed is not None else int(run["seed"])}
    return extra, resolved


def _cell_dict(cell) -> dict:
    d = dataclasses.asdict(cell)
    d.update(power=cell.power, mc_se=cell.mc_se, failure_rate=cell.failure_rate)
    return d


def cmd_power(cfg: RunConfig) -> tuple[dict, tuple]:
    scenario = ScenarioSpec(**cfg.extra["scenario"])
    test = TestSpec(alternatives=tuple(cfg.extra["alternatives"]), c=cfg.c)
    cells = power_study(scenario, test, level=cfg.level,
                        reps=cfg.extra["reps"], rng=cfg.seed)
    result = {"cells": [_cell_dict(c) for c in cells]}
    if cfg.extra.get("pool_xi"):
        result["pooled"] = [_cell_dict(p) for p in pooled_over_xi(cells)]
    return result, power_csv_rows(cells)


def cmd_simulate(cfg: RunConfig) -> tuple[dict, tuple]:
    kind = cfg.extra["kind"]
    rng = np.random.default_rng(cfg.seed)
    result = {"kind": kind}
    if kind in ("scenario1", "penultimate", "mda"):
        n = _require(cfg.extra.get("n"), "--n")
        m = _require(cfg.m, "--block-length/-m")
        delta = cfg.extra.get("departure")
        if delta is None:
            delta = 0.0 if kind == "scenario1" else 1.0
        if kind == "scenario1":
            frame = simulate_scenario1(n, m, delta, rng)
        elif kind == "penultimate":
            frame = simulate_penultimate_scenario(cfg.extra["base"], n, m, delta, rng,
                                                  shape=cfg.extra.get("shape"))
        else:
            frame = simulate_mda(cfg.extra["base"], n, m, delta, rng,
                                 shape=cfg.extra.get("shape"))
        rows = frame.blocks.tolist()  # each row: one block, ascending
        result.update(n=n, m=m, delta=float(delta), rows=rows)
        if kind != "scenario1":
            result.update(base=cfg.extra["base"], shape=cfg.extra.get("shape"))
        header = [f"v{j + 1}" for j in range(m)]
        return result, (header, rows)
    theta = _require(cfg.extra.get("theta"), "--theta")
    xi = cfg.extra.get("xi")
    length = cfg.extra.get("length")
    spec = MarSpec(theta=theta, xi=0.0 if xi is None else xi,
                   length=1000 if length is None else length)
    series = (simulate_mar_gumbel(spec, rng) if kind == "mar_gumbel"
              else simulate_mar_frechet(spec, rng))
    result.update(theta=spec.theta, xi=spec.xi, length=spec.length,
                  values=series.tolist())
    return result, (["value"], [[v] for v in series.tolist()])


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    # route all flag misuse to the input-error exit code instead of SystemExit
    def error(self, message):
        raise ValueError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise ValueError(f"expected comma-separated integers, got {text!r}")
    return values


_int_list.__name__ = "comma-separated integers"  # shows up in argparse errors


def _add_io_flags(p) -> None:
    p.add_argument("input", help="series file (CSV or plain numbers)")
    p.add_argument("--format", choices=("auto", "csv", "plain"), default="auto")
    p.add_argument("--window", metavar="MM-DD:MM-DD",
                   help="keep only observations in this month/day range")
    p.add_argument("--running-sum", type=int, default=1, metavar="K",
                   help="replace values by K-day running sums")
    p.add_argument("--round", dest="round_delta", type=float, default=0.0,
                   metavar="DELTA", help="rounding width of the recorded values")
    p.add_argument("--censor", dest="censor_u", type=float, default=None,
                   metavar="U", help="left-censoring bound")


def _add_out_flags(p) -> None:
    p.add_argument("--out", metavar="PATH", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", metavar="PATH", help="write the tabular artifact here")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker cap, default ${_THREADS_ENV} or 1; recorded for provenance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maxstab",
                     description="Block-length adequacy tests for block-maximum analyses.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND",
                            parser_class=_Parser)

    p = sub.add_parser("fit", help="fit a GEV to block maxima")
    _add_io_flags(p)
    p.add_argument("--block-length", "-m", dest="m", type=int, default=None)
    p.add_argument("--level", type=float, default=0.05, metavar="A",
                   help="1 - A is the profile confidence level")
    p.add_argument("--period", type=float, default=None,
                   help="return period in years; adds a profile interval")
    p.add_argument("--blocks-per-year", type=float, default=None)
    _add_out_flags(p)
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("test", help="likelihood-ratio test of max-stability")
    _add_io_flags(p)
    p.add_argument("--block-length", "-m", dest="m", type=int, required=True)
    p.add_argument("--factor", "-c", dest="c", type=int, default=2)
    p.add_argument("--alt", choices=_ALTERNATIVES, default="a1")
    p.add_argument("--level", type=float, default=0.05, metavar="A")
    _add_out_flags(p)
    p.set_defaults(handler=cmd_test)

    p = sub.add_parser("select", help="walk a block-length grid, stop at first acceptance")
    _add_io_flags(p)
    p.add_argument("--grid", type=_int_list, default=(1, 2, 4, 8),
                   help="comma-separated block lengths, default 1,2,4,8")
    p.add_argument("--factor", "-c", dest="c", type=int, default=2)
    p.add_argument("--alt", choices=_ALTERNATIVES, default="a1")
    p.add_argument("--level", type=float, default=0.05, metavar="A")
    _add_out_flags(p)
    p.set_defaults(handler=cmd_select)

    p = sub.add_parser("diagnose", help="bootstrap-calibrated PP band for a fitted GEV")
    _add_io_flags(p)
    p.add_argument("--block-length", "-m", dest="m", type=int, default=None)
    p.add_argument("--level", type=float, default=0.05, metavar="A",
                   help="simultaneous escape probability of the band")
    p.add_argument("--bootstrap", type=int, default=1000, metavar="B")
    p.add_argument("--positions", type=int, default=None, metavar="N")
    _add_out_flags(p)
    p.set_defaults(handler=cmd_diagnose)

    p = sub.add_parser("are", help="information-loss curves against block length")
    p.add_argument("--target", required=True,
                   choices=("mu", "sigma", "xi", "return_level", "overall"))
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--block-length", "-m", dest="m_grid", type=_int_list,
                   required=True, help="comma-separated multipliers")
    p.add_argument("--period", type=float, default=None,
                   help="return period, needed when target is return_level")
    _add_out_flags(p)
    p.set_defaults(handler=cmd_are)

    p = sub.add_parser("power", help="run a size/power study from a JSON scenario spec")
    p.add_argument("spec", help="scenario spec JSON")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--level", type=float, default=None, metavar="A")
    p.add_argument("--pool-xi", action="store_true",
                   help="also report cells pooled over the xi grid")
    _add_out_flags(p)
    # absent --seed must fall back to the spec file's seed, so the flag
    # default cannot be 0 here
    p.set_defaults(handler=cmd_power, seed=None)

    p = sub.add_parser("simulate", help="generate synthetic data from a named scenario")
    p.add_argument("--kind", required=True, choices=SCENARIO_KINDS)
    p.add_argument("--n", type=int, default=None, help="rows for frame scenarios")
    p.add_argument("--block-length", "-m", dest="m", type=int, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--base", default="normal", choices=("normal", "weibull"))
    p.add_argument("--shape", type=float, default=None)
    p.add_argument("--length", type=int, default=None, help="series length for MAR kinds")
    _add_out_flags(p)
    p.set_defaults(handler=cmd_simulate)

    return parser


def _config_from_args(args) -> RunConfig:
    handler = args.handler
    extra = {}
    resolved = {}
    if handler is cmd_fit:
        extra["period"] = args.period
    elif handler is cmd_select:
        extra["grid"] = list(args.grid)
    elif handler is cmd_are:
        extra.update(target=args.target, xi=args.xi, m_grid=list(args.m_grid),
                     period=args.period)
    elif handler is cmd_power:
        extra, resolved = _resolve_power_spec(args.spec, args)
    elif handler is cmd_simulate:
        # "delta" is taken by the rounding width; the scenario departure
        # rides under its own name
        extra.update(kind=args.kind, n=args.n, departure=args.delta,
                     theta=args.theta, xi=args.xi, base=args.base,
                     shape=args.shape, length=args.length)
    threads = args.threads if args.threads is not None else _default_threads()
    level = getattr(args, "level", None)
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None) or getattr(args, "spec", None),
        format=getattr(args, "format", "auto"),
        m=getattr(args, "m", None),
        c=resolved.get("c", getattr(args, "c", None)),
        alternative=getattr(args, "alt", "a1"),
        delta=getattr(args, "round_delta", 0.0),
        u=getattr(args, "censor_u", None),
        level=resolved.get("level", 0.05 if level is None else level),
        bootstrap=getattr(args, "bootstrap", 1000),
        positions=getattr(args, "positions", None),
        seed=resolved.get("seed", args.seed),
        blocks_per_year=getattr(args, "blocks_per_year", None),
        window=getattr(args, "window", None),
        running_sum=getattr(args, "running_sum", 1),
        threads=threads,
        out=args.out,
        csv=args.csv,
        extra=extra,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    try:
        result, table = args.handler(cfg)
        _write_table(cfg, table)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except RuntimeError as err:  # ConvergenceError and bootstrap exhaustion
        print(f"error: {err}", file=sys.stderr)
        return 2
    _write_report(cfg, result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
