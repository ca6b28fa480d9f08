"""Finite-experiment machinery, sweep runners, and the CLI harness."""

from .cli import cli_main
from .prefgrids import eu_grid, grid_from_config, index_value_grid
from .report import RunReport, SweepOutput, line_chart_svg, quantile_stats
from .sigma import (
    ChoiceFunctionData,
    SigmaSequence,
    act_universe,
    build_sigma,
    generated_choices,
    strongly_rationalizes,
    universe_values,
    weakly_rationalizes,
)
from .sweeps import (
    run_bound,
    run_ce_continuity,
    run_consistency,
    run_dense_uniqueness_check,
    run_fit,
    run_gen,
    run_nonidentification_demo,
    run_recovery,
    run_separation,
    run_theorem2_demo,
    run_vc,
)

__all__ = [
    "ChoiceFunctionData",
    "RunReport",
    "SigmaSequence",
    "SweepOutput",
    "act_universe",
    "build_sigma",
    "cli_main",
    "eu_grid",
    "generated_choices",
    "grid_from_config",
    "index_value_grid",
    "line_chart_svg",
    "quantile_stats",
    "run_bound",
    "run_ce_continuity",
    "run_consistency",
    "run_dense_uniqueness_check",
    "run_fit",
    "run_gen",
    "run_nonidentification_demo",
    "run_recovery",
    "run_separation",
    "run_theorem2_demo",
    "run_vc",
    "strongly_rationalizes",
    "universe_values",
    "weakly_rationalizes",
]
