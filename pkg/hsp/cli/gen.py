import click

from ..core.config import Config
from ..enums import GraphFamily, InstanceFormat, WeightDist
from ..schemas.gen import GenSpec, GenSummary
from ..services.generator_service import generate
from ..services.io_service import write_edgelist, write_matrix


@click.command(help="Generate a synthetic instance and write it to a file.")
@click.option("--family", type=click.Choice([f.value for f in GraphFamily]), required=True, help="Graph family.")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of nodes.")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="RNG seed.")
@click.option("--m", "m", type=click.IntRange(min=1), default=Config.BBV_M, show_default=True,
              help="bbv: links per new node.")
@click.option("--w0", type=float, default=Config.BBV_W0, show_default=True, help="bbv: weight of new links.")
@click.option("--delta", type=float, default=Config.BBV_DELTA, show_default=True, help="bbv: reinforcement.")
@click.option("--mu", type=float, default=50.0, show_default=True, help="mdp_gaussian: weight mean.")
@click.option("--sigma", type=click.FloatRange(min=0), default=10.0, show_default=True,
              help="mdp_gaussian: weight standard deviation.")
@click.option("--p-edge", type=click.FloatRange(min=0, max=1), default=0.1, show_default=True,
              help="gnp_weighted: edge probability.")
@click.option("--weight-dist", type=click.Choice([d.value for d in WeightDist]), default=WeightDist.UNIFORM.value,
              show_default=True, help="gnp_weighted: weight distribution.")
@click.option("--a", "a", type=float, default=1.0, show_default=True, help="gnp_weighted uniform: lower bound.")
@click.option("--b", "b", type=float, default=10.0, show_default=True, help="gnp_weighted uniform: upper bound.")
@click.option("--alpha", type=float, default=2.0, show_default=True, help="gnp_weighted pareto: shape.")
@click.option("--x-min", type=float, default=1.0, show_default=True, help="gnp_weighted pareto: scale.")
@click.option("--format", "out_format", type=click.Choice([f.value for f in InstanceFormat]),
              default=InstanceFormat.EDGELIST.value, show_default=True, help="Output file format.")
@click.option("--k", "k", type=click.IntRange(min=0), default=None, show_default="n // 10",
              help="k written to the matrix header.")
@click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), required=True, help="Output file.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print a summary of the written instance as JSON.")
def gen_command(family, n, seed, m, w0, delta, mu, sigma, p_edge, weight_dist, a, b, alpha, x_min,
                out_format, k, out, as_json):
    spec = GenSpec(
        family=family, n=n, seed=seed,
        m=m, w0=w0, delta=delta,
        mu=mu, sigma=sigma,
        p_edge=p_edge, weight_dist=weight_dist, a=a, b=b, alpha=alpha, x_min=x_min,
    )
    graph = generate(spec)
    if out_format == InstanceFormat.MATRIX.value:
        k = n // 10 if k is None else k
        if k > n:
            raise click.BadParameter(f"k={k} exceeds n={n}", param_hint="--k")
        write_matrix(graph, k, out)
    else:
        k = None
        write_edgelist(graph, out)

    summary = GenSummary(
        spec=spec, n=graph.n, edges=graph.total_edge_count, total_weight=graph.total_weight, k=k, out=str(out),
    )
    if as_json:
        click.echo(summary.model_dump_json())
        return
    click.echo(f"{spec.name}: n={summary.n} edges={summary.edges} total_weight={summary.total_weight!r} -> {out}")
