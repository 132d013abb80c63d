"""Scenario execution harness: config loading, metrics, comparisons, artifacts."""

from ..config import SimulationConfig, config_from_dict, load_config  # noqa: F401
from .compare import ComparisonReport, VariantColumn, compare_processes  # noqa: F401
from .metrics import (  # noqa: F401
    WEEK_TICKS,
    MetricsSummary,
    compute_metrics,
    reports_submitted_after,
)
from .outputs import write_comparison_outputs, write_run_outputs  # noqa: F401
