"""Side-by-side process comparison over paired seeds."""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import mean, stdev

from ..config import SimulationConfig
from ..core.errors import DomainError
from ..core.types import ProcessVariant
from ..sim.runner import run_simulation
from .metrics import MetricsSummary, compute_metrics


@dataclass
class VariantColumn:
    variant: str
    runs: list[dict]  # one metrics row per seed, in seed order
    aggregates: dict[str, dict[str, float | None]] = field(default_factory=dict)
    diffs_vs_first: dict[str, float | None] | None = None

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "runs": [dict(r) for r in self.runs],
            "aggregates": self.aggregates,
            "diffs_vs_first": self.diffs_vs_first,
        }


@dataclass
class ComparisonReport:
    variants: list[str]
    seeds: list[int]
    columns: list[VariantColumn] = field(default_factory=list)

    def column(self, variant: str) -> VariantColumn:
        for col in self.columns:
            if col.variant == variant:
                return col
        raise KeyError(variant)

    def to_dict(self) -> dict:
        return {
            "variants": list(self.variants),
            "seeds": list(self.seeds),
            "columns": [c.to_dict() for c in self.columns],
        }


def _aggregate(values: list[float | None]) -> dict[str, float | None]:
    present = [v for v in values if v is not None]
    if not present:
        return {"mean": None, "std": None}
    return {
        "mean": mean(present),
        "std": stdev(present) if len(present) > 1 else 0.0,
    }


def _paired_diffs(rows: list[dict], baseline: list[dict]) -> dict[str, float | None]:
    diffs: dict[str, float | None] = {}
    for metric in MetricsSummary.SCALAR_FIELDS:
        pairs = [
            (row[metric], base[metric])
            for row, base in zip(rows, baseline)
            if row[metric] is not None and base[metric] is not None
        ]
        diffs[metric] = mean(a - b for a, b in pairs) if pairs else None
    return diffs


def compare_processes(
    config: SimulationConfig,
    variants: list[str],
    seeds: list[int],
) -> ComparisonReport:
    """Run every (variant, seed) pair and aggregate the per-run metrics.

    Seeds are paired across variants: every variant sees the same seeds,
    hence identical populations and latent pools, so per-metric differences
    are meaningful run by run (and a variant listed twice produces
    identical columns). Aggregation is permutation-invariant over seed
    order.
    """
    if not variants:
        raise DomainError("at least one variant is required")
    if not seeds:
        raise DomainError("at least one seed is required")
    normalized = [ProcessVariant.from_short(v).value for v in variants]

    report = ComparisonReport(variants=normalized, seeds=list(seeds))
    for variant in normalized:
        rows: list[dict] = []
        for seed in seeds:
            run_config = config.with_overrides(variant=variant, seed=seed)
            result = run_simulation(run_config, seed)
            summary = compute_metrics(result.log)
            row = {"seed": seed}
            row.update(summary.scalars())
            rows.append(row)
        column = VariantColumn(variant=variant, runs=rows)
        column.aggregates = {
            metric: _aggregate([row[metric] for row in rows])
            for metric in MetricsSummary.SCALAR_FIELDS
        }
        report.columns.append(column)

    baseline = report.columns[0].runs
    for column in report.columns[1:]:
        column.diffs_vs_first = _paired_diffs(column.runs, baseline)
    return report
