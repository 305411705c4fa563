"""Runner module for exactrc."""

from .runner import (
    ChannelContext,
    RunConfig,
    SolvedRate,
    analyze,
    compare_rows,
    load_context,
    oracle_rows,
    parse_rate,
    predict_rows,
    solve_rate,
)

__all__ = [
    "ChannelContext",
    "RunConfig",
    "SolvedRate",
    "analyze",
    "compare_rows",
    "load_context",
    "oracle_rows",
    "parse_rate",
    "predict_rows",
    "solve_rate",
]
