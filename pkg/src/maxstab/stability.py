"""Likelihood-ratio tests of max-stability and block-length selection.

A proposed block length m is adequate when the maximum of c consecutive
m-block maxima behaves like a cm-block maximum, i.e. follows the
max-stability map of the base law.  `lr_test` compares that null against a
departure family on a BlockFrame, `test_blocksize` builds the frame from a
raw series, and `sequential_selection` walks an increasing grid of block
lengths until the test first accepts.
"""

from __future__ import annotations

import dataclasses
import warnings as _warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .fitting import FitResult, fit_alternative, fit_null
from .likelihood import BlockFrame, DataTreatment

__all__ = [
    "ConvergenceError",
    "SelectionResult",
    "TestReport",
    "blocked_frame",
    "blocked_rebase",
    "lr_test",
    "sequential_selection",
    "test_blocksize",
]


class ConvergenceError(RuntimeError):
    """A maximum-likelihood fit failed to converge."""


@dataclass(frozen=True)
class TestReport:
    """Outcome of one likelihood-ratio test of max-stability."""

    __test__ = False  # the name would otherwise be collected by pytest

    statistic: float
    df: int
    p_value: float
    alt_kind: str
    m: int
    factor_c: int
    null_fit: FitResult
    alt_fit: FitResult
    warnings: tuple = ()

    def __post_init__(self) -> None:
        if not (np.isfinite(self.statistic) and self.statistic >= 0.0):
            raise ValueError(f"statistic must be finite and >= 0, got {self.statistic}")
        if self.df not in (1, 2, 3):
            raise ValueError(f"df must be 1, 2 or 3, got {self.df}")
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p_value must lie in [0, 1], got {self.p_value}")

    def to_dict(self) -> dict:
        """JSON-ready summary of the test."""
        p0 = self.null_fit.params
        pa = self.alt_fit.params
        dep_names = {"a1": ("omega",), "a2": ("nu", "phi"), "a3": ("nu", "phi", "zeta")}
        alt_params = {"mu": float(pa.mu), "sigma": float(pa.sigma), "xi": float(pa.xi)}
        alt_params.update(zip(dep_names[self.alt_kind], map(float, self.alt_fit.alt.params)))
        return {
            "m": int(self.m),
            "c": int(self.factor_c),
            "alternative": self.alt_kind,
            "statistic": float(self.statistic),
            "df": int(self.df),
            "p_value": float(self.p_value),
            "null_params": {"mu": float(p0.mu), "sigma": float(p0.sigma), "xi": float(p0.xi)},
            "alt_params": alt_params,
            "warnings": list(self.warnings),
        }


def lr_test(frame: BlockFrame, alt_kind: str, m: int = 1,
            want_cov: bool = False) -> TestReport:
    """Test max-stability across the frame's columns.

    The null states that each row holds the order statistics of
    ``frame.m`` draws from one GEV whose maximum follows the max-stability
    map; ``alt_kind`` picks the departure family (a1: effective block
    count, a2: location/scale drift, a3: adds a shape drift).  ``m`` only
    labels the report with the underlying block length of the entries.
    """
    null = fit_null(frame, want_cov=want_cov)
    if not null.converged:
        raise ConvergenceError("null fit did not converge")
    alt = fit_alternative(frame, alt_kind, null_fit=null, want_cov=want_cov)
    if not alt.converged:
        raise ConvergenceError(f"{alt.alt.kind} alternative fit did not converge")
    raw = 2.0 * (alt.loglik - null.loglik)
    notes = ()
    if raw < -1e-4:
        notes = (f"negative statistic {raw:.6g} clamped to 0",)
    statistic = max(raw, 0.0)
    df = alt.alt.df
    return TestReport(
        statistic=statistic,
        df=df,
        p_value=float(chi2.sf(statistic, df)),
        alt_kind=alt.alt.kind,
        m=int(m),
        factor_c=frame.m,
        null_fit=null,
        alt_fit=alt,
        warnings=notes,
    )


def blocked_rebase(frame: BlockFrame, c: int) -> BlockFrame:
    """Regroup c consecutive blocks into super-blocks of c-fold width.

    Trailing blocks that do not fill a super-block are dropped with a
    warning.  c=1 returns the frame unchanged.
    """
    c = _positive_int(c, "c")
    if c == 1:
        return frame
    n_super, dropped = divmod(frame.n, c)
    if n_super < 2:
        raise ValueError(f"regrouping {frame.n} blocks by c={c} leaves "
                         f"{n_super} super-blocks; need at least 2")
    if dropped:
        _warnings.warn(f"dropped {dropped} trailing blocks not filling a super-block",
                       stacklevel=2)
    rows = frame.blocks[:n_super * c].reshape(n_super, c * frame.m)
    return BlockFrame(rows, frame.treatment)


def blocked_frame(series, m: int, c: int,
                  treatment: DataTreatment | None = None) -> tuple[BlockFrame, int]:
    """Cut a raw series into super-blocks of c maxima of length-m sub-blocks.

    Returns the frame and the count of trailing observations dropped.
    Rounding and censoring pass through unchanged: the maximum of rounded
    values is rounded on the same grid, and a sub-block maximum is at or
    below the threshold exactly when the whole sub-block is.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ValueError("series must be a 1-d vector")
    m = _positive_int(m, "m")
    c = _positive_int(c, "c")
    if c < 2:
        raise ValueError(f"need c >= 2 blocks per super-block to test, got {c}")
    if x.size < 2 * c * m:
        raise ValueError(f"series of length {x.size} cannot form 2 super-blocks "
                         f"of {c * m} observations")
    n_sub = x.size // m
    sub_maxima = x[:n_sub * m].reshape(n_sub, m).max(axis=1)
    n_super = n_sub // c
    dropped = x.size - n_super * c * m
    rows = sub_maxima[:n_super * c].reshape(n_super, c)
    return BlockFrame(rows, treatment if treatment is not None else DataTreatment()), dropped


def test_blocksize(series, m: int, c: int, treatment: DataTreatment | None = None,
                   alt_kind: str = "a1", want_cov: bool = False) -> TestReport:
    """Test whether length-m blocks are long enough, judged against cm.

    The series is cut into length-m sub-blocks whose maxima populate
    super-blocks of c entries, so the super-block maximum is the cm-block
    maximum; the report records m and c alongside the test outcome.
    """
    frame, dropped = blocked_frame(series, m, c, treatment)
    report = lr_test(frame, alt_kind, m=m, want_cov=want_cov)
    if dropped:
        extra = (f"dropped {dropped} trailing observations not filling a super-block",)
        report = dataclasses.replace(report, warnings=report.warnings + extra)
    return report


test_blocksize.__test__ = False  # the name would otherwise be collected by pytest


@dataclass(frozen=True)
class SelectionResult:
    """Trail of a sequential block-length search."""

    selected: int | None
    level: float
    reports: tuple

    @property
    def accepted(self) -> bool:
        return self.selected is not None


def sequential_selection(series, m_grid, c: int = 2,
                         treatment: DataTreatment | None = None,
                         alt_kind: str = "a1", level: float = 0.05) -> SelectionResult:
    """Walk an increasing grid of block lengths, stopping at first acceptance.

    Each grid value m is tested against cm; the first with p-value >= level
    is selected.  If every test rejects, ``selected`` is None and the trail
    holds every report.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    grid = [_positive_int(m, "m_grid entry") for m in m_grid]
    if not grid:
        raise ValueError("m_grid must be non-empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"m_grid must be strictly increasing, got {grid}")
    x = np.asarray(series, dtype=float)
    for m in grid:
        if x.size < 2 * _positive_int(c, "c") * m:
            raise ValueError(f"grid value m={m} is infeasible for a series of "
                             f"length {x.size} with c={c}")
    reports = []
    selected = None
    for m in grid:
        report = test_blocksize(x, m, c, treatment, alt_kind)
        reports.append(report)
        if report.p_value >= level:
            selected = m
            break
    return SelectionResult(selected=selected, level=level, reports=tuple(reports))


def _positive_int(value, name: str) -> int:
    as_int = int(value)
    if as_int != value or as_int < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return as_int
