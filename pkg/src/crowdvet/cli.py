"""Command-line client for the crowdvet service.

Every subcommand speaks HTTP to the service. Without ``--server`` the
service runs in-process over an ASGI transport, so the CLI works standalone;
with ``--server URL`` the same requests go to a remote instance.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx
import yaml

EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from .service.app import create_app

    transport = httpx.ASGITransport(app=create_app())
    return httpx.Client(transport=transport, base_url="http://crowdvet.local", timeout=None)


def _read_config_file(path: str) -> dict:
    file_path = Path(path)
    if not file_path.exists():
        click.echo(f"config error: file not found: {path}", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        data = yaml.safe_load(file_path.read_text("utf-8"))
    except yaml.YAMLError as exc:
        click.echo(f"config error: could not parse {path}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        click.echo(f"config error: {path} must contain a mapping", err=True)
        sys.exit(EXIT_CONFIG)
    return data


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    try:
        response = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"runtime error: request failed: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    if response.status_code == 400:
        detail = response.json().get("detail")
        lines = detail if isinstance(detail, list) else [detail]
        for line in lines:
            click.echo(f"config error: {line}", err=True)
        sys.exit(EXIT_CONFIG)
    if response.status_code != 200:
        click.echo(f"runtime error: HTTP {response.status_code}: {response.text}", err=True)
        sys.exit(EXIT_RUNTIME)
    return response.json()


def _parse_seeds(raw: str) -> list[int]:
    raw = raw.strip()
    try:
        if ".." in raw:
            lo, hi = raw.split("..", 1)
            start, end = int(lo), int(hi)
            if end < start:
                raise ValueError("range end precedes start")
            return list(range(start, end + 1))
        return [int(token) for token in raw.split(",") if token.strip()]
    except ValueError as exc:
        click.echo(f"config error: could not parse seeds {raw!r}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


@click.group()
def main() -> None:
    """Crowd-vetted bug bounty simulator."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="Config file (YAML).")
@click.option("--seed", type=int, default=None, help="Run seed; overrides the config's seed.")
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Output directory.")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def run(config_path: str, seed: int | None, out_dir: str, server: str | None) -> None:
    """Execute one seeded simulation run and write its artifacts."""
    config = _read_config_file(config_path)
    if seed is None:
        seed = config.get("seed")
    if seed is None:
        click.echo("config error: no seed given (use --seed or set `seed` in the config)", err=True)
        sys.exit(EXIT_CONFIG)
    with _client(server) as client:
        data = _post(client, "/runs", {"config": config, "seed": seed})

    from .harness.outputs import write_run_outputs

    written = write_run_outputs(out_dir, data["event_log"], data["metrics"])
    metrics = data["metrics"]
    click.echo(
        f"run seed={seed} events={len(data['event_log'])} "
        f"accepted={metrics['accepted_submissions']} "
        f"actionable={metrics['actionable_count']} "
        f"spend={metrics['reward_spend']:.2f} "
        f"elapsed={data['elapsed_seconds']:.2f}s"
    )
    for path in written:
        click.echo(f"wrote {path}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="Config file (YAML).")
@click.option("--variants", required=True, help="Comma list, e.g. a,b,c or direct,crowd_vetted.")
@click.option("--seeds", required=True, help="Seed list 1,2,3 or range 1..30.")
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Output directory.")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def compare(config_path: str, variants: str, seeds: str, out_dir: str, server: str | None) -> None:
    """Run paired-seed comparisons across process variants."""
    config = _read_config_file(config_path)
    variant_list = [v.strip() for v in variants.split(",") if v.strip()]
    seed_list = _parse_seeds(seeds)
    if not variant_list:
        click.echo("config error: no variants given", err=True)
        sys.exit(EXIT_CONFIG)
    with _client(server) as client:
        data = _post(
            client,
            "/compare",
            {"config": config, "variants": variant_list, "seeds": seed_list},
        )

    from .harness.outputs import write_comparison_outputs

    written = write_comparison_outputs(out_dir, data["report"])
    click.echo(
        f"compared variants={','.join(data['report']['variants'])} "
        f"seeds={len(seed_list)}"
    )
    for path in written:
        click.echo(f"wrote {path}")


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path(), help="Event log (JSONL).")
@click.option("--out", "out_dir", default=None, type=click.Path(), help="Optional metrics output dir.")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def replay(log_path: str, out_dir: str | None, server: str | None) -> None:
    """Recompute state and metrics from an event log."""
    path = Path(log_path)
    if not path.exists():
        click.echo(f"config error: log file not found: {log_path}", err=True)
        sys.exit(EXIT_CONFIG)
    lines = path.read_text("utf-8").splitlines()
    with _client(server) as client:
        data = _post(client, "/replay", {"event_log": lines})
    if out_dir is not None:
        from .harness.outputs import write_metrics

        Path(out_dir).mkdir(parents=True, exist_ok=True)
        for written in write_metrics(Path(out_dir), data["metrics"]):
            click.echo(f"wrote {written}", err=True)
    click.echo(json.dumps(data, sort_keys=True, indent=2))


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="Config file (YAML).")
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
def validate(config_path: str, server: str | None) -> None:
    """Validate a config file; prints the fully defaulted configuration."""
    config = _read_config_file(config_path)
    with _client(server) as client:
        data = _post(client, "/config/validate", {"config": config})
    if not data["valid"]:
        for line in data["errors"]:
            click.echo(f"config error: {line}", err=True)
        sys.exit(EXIT_CONFIG)
    click.echo(json.dumps(data["config"], sort_keys=True, indent=2))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
