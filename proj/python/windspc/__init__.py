"""Regression-adjusted control charting for wind turbine SCADA data."""

from ._core import (
    ControlChart,
    WindspcError,
    acf,
    classify_generator,
    compare_fixed,
    fit_chart,
    format_iso8601,
    format_percent,
    mallows_cp,
    monitor,
    moving_range_sigma,
    parse_iso8601,
    pearson,
    run_cli,
    simulate,
    theoretical_power,
)

__version__ = "0.1.0"

__all__ = [
    "ControlChart",
    "WindspcError",
    "acf",
    "classify_generator",
    "compare_fixed",
    "fit_chart",
    "format_iso8601",
    "format_percent",
    "main",
    "mallows_cp",
    "monitor",
    "moving_range_sigma",
    "parse_iso8601",
    "pearson",
    "run_cli",
    "simulate",
    "theoretical_power",
]


def main(argv=None):
    """Console entry point: forwards to the CLI and returns its exit status."""
    import sys

    return run_cli(list(sys.argv[1:] if argv is None else argv))
