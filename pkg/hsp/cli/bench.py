import json
from pathlib import Path

import click

from ..exceptions import StorageException
from ..schemas.bench import BenchConfig
from ..services.bench_service import run_bench
from ..services.io_service import write_bench_csv


@click.command(help="Run a benchmark configuration (JSON) and print the summary CSV.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Benchmark configuration file.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              show_default="output_dir from the configuration, else <config>-out next to it",
              help="Directory for bench.csv and runs.jsonl.")
@click.option("--workers", type=click.IntRange(min=1), default=None, show_default="HSP_BENCH_WORKERS or 1",
              help="Parallel runs.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print the full report as JSON.")
def bench_command(config_path, out_dir, workers, as_json):
    try:
        with open(config_path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as e:
        raise StorageException(f"{config_path}: {e}") from e
    except json.JSONDecodeError as e:
        raise click.BadParameter(f"{config_path} is not valid JSON: {e}", param_hint="--config")
    if not isinstance(raw, dict):
        raise click.BadParameter(f"{config_path} must hold a JSON object", param_hint="--config")

    if out_dir is not None:
        raw["output_dir"] = out_dir
    elif not raw.get("output_dir"):
        config_file = Path(config_path)
        raw["output_dir"] = str(config_file.parent / f"{config_file.stem}-out")
    if workers is not None:
        raw["workers"] = workers
    report = run_bench(BenchConfig.model_validate(raw))

    if as_json:
        click.echo(report.model_dump_json())
        return
    click.echo(write_bench_csv(report), nl=False)
