"""Block-length diagnostics for the block-maximum method in extreme-value analysis.

Fits GEV models (optionally under rounding and left-censoring), tests
max-stability across block lengths by likelihood ratio, calibrates
simultaneous PP-plot bands by parametric bootstrap, and quantifies the
information lost by using longer blocks than necessary.
"""

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
from maxstab.likelihood import (
    AltHypothesis,
    BlockFrame,
    DataTreatment,
    alt_max_params,
    loglik_censored_rounded,
    loglik_joint,
    loglik_marginal,
)
from maxstab.fisher import (
    are_overall,
    ci_length_ratio,
    info_block_max,
    info_for_params,
    return_level,
    return_level_gradient,
    stability_jacobian,
    standard_info_K,
)
from maxstab.fitting import (
    ExceedProb,
    FitResult,
    ProfileCI,
    ReturnLevel,
    fit_alternative,
    fit_gev,
    fit_null,
    profile_ci,
)
from maxstab.stability import (
    ConvergenceError,
    SelectionResult,
    TestReport,
    blocked_frame,
    blocked_rebase,
    lr_test,
    sequential_selection,
    test_blocksize,
)
from maxstab.bands import (
    EcdfBand,
    PivotSeries,
    alpha_b,
    band_covers,
    default_positions,
    ecdf_at,
    impute_rounded,
    parametric_band,
    pivot_series,
    simultaneous_band,
)
from maxstab.simulate import (
    MarSpec,
    PenultimateResult,
    PowerCell,
    ScenarioSpec,
    TestSpec,
    penultimate,
    pooled_over_xi,
    power_csv_rows,
    power_study,
    simulate_mar_frechet,
    simulate_mar_gumbel,
    simulate_mda,
    simulate_penultimate_scenario,
    simulate_scenario1,
)

__all__ = [
    "AltHypothesis",
    "BlockFrame",
    "ConvergenceError",
    "DataTreatment",
    "EcdfBand",
    "ExceedProb",
    "FitResult",
    "GevParams",
    "MarSpec",
    "PenultimateResult",
    "PivotSeries",
    "PowerCell",
    "ProfileCI",
    "ReturnLevel",
    "ScenarioSpec",
    "SelectionResult",
    "TestReport",
    "TestSpec",
    "alpha_b",
    "alt_max_params",
    "are_overall",
    "band_covers",
    "beta_m1_pivot",
    "blocked_frame",
    "blocked_rebase",
    "ci_length_ratio",
    "default_positions",
    "ecdf_at",
    "extremal_index_map",
    "fit_alternative",
    "fit_gev",
    "fit_null",
    "gev_cdf",
    "gev_logcdf",
    "gev_logpdf",
    "gev_pdf",
    "gev_quantile",
    "gev_sample",
    "impute_rounded",
    "info_block_max",
    "info_for_params",
    "loglik_censored_rounded",
    "loglik_joint",
    "loglik_marginal",
    "lr_test",
    "max_stability_map",
    "parametric_band",
    "penultimate",
    "pivot_series",
    "pooled_over_xi",
    "power_csv_rows",
    "power_study",
    "profile_ci",
    "return_level",
    "return_level_gradient",
    "sequential_selection",
    "simulate_mar_frechet",
    "simulate_mar_gumbel",
    "simulate_mda",
    "simulate_penultimate_scenario",
    "simulate_scenario1",
    "simultaneous_band",
    "stability_jacobian",
    "standard_info_K",
    "test_blocksize",
    "truncated_gev_sample",
]
