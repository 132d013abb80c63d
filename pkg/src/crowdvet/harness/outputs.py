"""File artifact writers: event logs (JSONL), metrics (JSON/CSV), comparisons."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .compare import ComparisonReport
from .metrics import MetricsSummary


def write_event_log(out_dir: Path, lines: list[str]) -> Path:
    path = out_dir / "events.jsonl"
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def write_metrics(out_dir: Path, metrics: dict) -> list[Path]:
    json_path = out_dir / "metrics.json"
    json_path.write_text(
        json.dumps(metrics, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    csv_path = out_dir / "metrics.csv"
    scalar_names = ["variant", "seed", "horizon", *MetricsSummary.SCALAR_FIELDS]
    with csv_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=scalar_names, extrasaction="ignore")
        writer.writeheader()
        writer.writerow({k: _csv_value(metrics.get(k)) for k in scalar_names})
    ts_path = out_dir / "timeseries.csv"
    weekly = metrics.get("weekly", [])
    fields = ["week", "end_tick", "accepted_submissions", "actionable",
              "reward_spend", "mean_engagement"]
    with ts_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        for row in weekly:
            writer.writerow({k: _csv_value(row.get(k)) for k in fields})
    return [json_path, csv_path, ts_path]


def write_run_outputs(out_dir: str | Path, log_lines: list[str], metrics: dict) -> list[Path]:
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    written = [write_event_log(path, log_lines)]
    written.extend(write_metrics(path, metrics))
    return written


def write_comparison_outputs(out_dir: str | Path, report: ComparisonReport | dict) -> list[Path]:
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    data = report.to_dict() if isinstance(report, ComparisonReport) else report

    json_path = path / "comparison.json"
    json_path.write_text(json.dumps(data, sort_keys=True, indent=2) + "\n", encoding="utf-8")

    per_run_path = path / "per_run.csv"
    fields = ["variant", "seed", *MetricsSummary.SCALAR_FIELDS]
    with per_run_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields, extrasaction="ignore")
        writer.writeheader()
        for column in data["columns"]:
            for row in column["runs"]:
                out = {"variant": column["variant"]}
                out.update({k: _csv_value(row.get(k)) for k in fields if k != "variant"})
                writer.writerow(out)

    table_path = path / "comparison.csv"
    with table_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["variant", "metric", "mean", "std", "mean_diff_vs_first"])
        for column in data["columns"]:
            diffs = column.get("diffs_vs_first") or {}
            for metric in MetricsSummary.SCALAR_FIELDS:
                agg = column["aggregates"][metric]
                writer.writerow(
                    [
                        column["variant"],
                        metric,
                        _csv_value(agg["mean"]),
                        _csv_value(agg["std"]),
                        _csv_value(diffs.get(metric)),
                    ]
                )
    return [json_path, per_run_path, table_path]


def _csv_value(value):
    return "" if value is None else value
