import click

from ..enums import InstanceFormat
from ..services.io_service import load_instance
from ..services.oracle_service import exact_hsp
from .output import echo_result


@click.command(help="Solve an instance exactly by enumerating all k-subsets.")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Subgraph size.")
@click.option("--format", "instance_format", type=click.Choice([f.value for f in InstanceFormat]),
              default=None, show_default="by file suffix", help="Instance file format.")
@click.option("--limit", type=click.IntRange(min=1), default=None, show_default="HSP_EXACT_SUBSET_LIMIT or 10^7",
              help="Largest number of subsets to enumerate.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print the result as JSON.")
def exact_command(instance, k, instance_format, limit, as_json):
    loaded = load_instance(instance, instance_format)
    result = exact_hsp(loaded.graph, k, limit)
    if as_json:
        click.echo(result.model_dump_json())
        return
    echo_result(loaded.graph, result.best_objective, result.best_set)
    click.echo(f"subsets_examined: {result.subsets_examined}")
