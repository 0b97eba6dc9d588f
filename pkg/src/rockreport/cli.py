"""Command-line interface: serve the API, batch-generate reports, evaluate
candidate/reference pairs, and load the reference dataset.

Exit codes: 0 ok, 1 usage, 2 validation/data problem, 3 provider failure.
"""
from __future__ import annotations

import json
import sys
from collections import Counter
from pathlib import Path

import click

from . import pipeline
from .domain import project_from_json, validate_project
from .errors import RockReportError
from .evalharness import evaluate_corpus, load_pairs
from .gateway import Gateway, GatewayError, LocalRateLimitError, ProviderConfig
from .store import load_dataset

EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_PROVIDER = 3


@click.group()
def cli():
    """Geotechnical field-report toolkit."""


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--store-dir", default="rockreport-store", show_default=True,
              type=click.Path(file_okay=False))
@click.option("--provider-config", default=None, type=click.Path(exists=True, dir_okay=False),
              help="JSON provider config; defaults to the offline mock provider.")
def serve(host: str, port: int, store_dir: str, provider_config: str | None):
    """Run the HTTP API."""
    import uvicorn

    from .service import create_app

    config = ProviderConfig.from_file(provider_config) if provider_config else None
    app = create_app(store_dir=store_dir, provider_config=config)
    uvicorn.run(app, host=host, port=port)


@cli.command()
@click.option("--project", "project_file", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--format", "formats", default="html", show_default=True,
              help="Comma-separated list: json,html,markdown.")
@click.option("--provider-config", default=None, type=click.Path(exists=True, dir_okay=False),
              help="JSON provider config; defaults to the offline mock provider.")
def generate(project_file: str, out_dir: str, formats: str, provider_config: str | None):
    """Generate a full report from a project document (batch mode)."""
    project = project_from_json(Path(project_file).read_text(encoding="utf-8"))
    violations = validate_project(project)
    if violations:
        for v in violations:
            click.echo(f"validation: {v.path}: {v.message}", err=True)
        sys.exit(EXIT_VALIDATION)

    config = ProviderConfig.from_file(provider_config) if provider_config else ProviderConfig()
    gateway = Gateway(config=config)
    document = pipeline.run_report(project, gateway)

    extensions = {"json": "json", "html": "html", "markdown": "md"}
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for fmt in [f.strip() for f in formats.split(",") if f.strip()]:
        if fmt not in extensions:
            click.echo(f"unknown format {fmt!r}; use json,html,markdown", err=True)
            sys.exit(EXIT_USAGE)
        target = out / f"report.{extensions[fmt]}"
        target.write_bytes(pipeline.export(document, fmt))
        click.echo(f"wrote {target}")


@cli.command()
@click.option("--pairs", "pairs_file", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="CSV or JSON file with id,category,candidate,reference records.")
@click.option("--out", "out_file", required=True, type=click.Path(dir_okay=False))
@click.option("--plots", "plots_dir", default=None, type=click.Path(file_okay=False),
              help="Also write histogram/scatter data arrays for plotting.")
def evaluate(pairs_file: str, out_file: str, plots_dir: str | None):
    """Score candidate vs reference texts and write corpus statistics."""
    stats = evaluate_corpus(load_pairs(pairs_file))
    payload = stats.to_dict()
    Path(out_file).write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n",
                              encoding="utf-8")
    click.echo(f"wrote {out_file}")
    if plots_dir:
        plots = Path(plots_dir)
        plots.mkdir(parents=True, exist_ok=True)
        hist = {"bin_width": 0.1,
                "bleu": payload["histogram_bleu"], "rouge_l_f1": payload["histogram_rouge"]}
        scatter = {"points": [{"id": item["id"], "bleu": item["bleu"],
                               "rouge_l_f1": item["rouge_l_f1"]}
                              for item in payload["per_item"]],
                   "regression": payload["regression"]}
        (plots / "histograms.json").write_text(
            json.dumps(hist, indent=2) + "\n", encoding="utf-8")
        (plots / "scatter.json").write_text(
            json.dumps(scatter, indent=2) + "\n", encoding="utf-8")
        click.echo(f"wrote {plots / 'histograms.json'} and {plots / 'scatter.json'}")


@cli.command("demo-dataset")
@click.option("--csv", "csv_file", required=True,
              type=click.Path(exists=True, dir_okay=False))
def demo_dataset(csv_file: str):
    """Load a reference-dataset CSV and print its class balance."""
    rows = load_dataset(csv_file)
    counts = Counter(row.rock_type.value for row in rows)
    click.echo(f"{len(rows)} rows")
    for rock_type, count in sorted(counts.items()):
        click.echo(f"  {rock_type}: {count}")


def main() -> None:
    try:
        cli(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except LocalRateLimitError as exc:
        click.echo(f"provider: {exc}", err=True)
        sys.exit(EXIT_PROVIDER)
    except GatewayError as exc:
        click.echo(f"provider [{exc.code}]: {exc}", err=True)
        sys.exit(EXIT_PROVIDER)
    except RockReportError as exc:
        click.echo(f"error [{exc.code}]: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)


if __name__ == "__main__":
    main()
