import click

from ..enums import Algorithm, InitMode, InstanceFormat, SearchMode, ShakeMode
from ..schemas.solver import Budget, SolverParams
from ..services.heuristics_service import solve
from ..services.io_service import load_instance, write_run_record
from .output import echo_result

DEFAULT_TIME_BUDGET = 10.0


def _choice(enum_cls):
    return click.Choice([member.value for member in enum_cls])


@click.command(help="Run OVNS or BVNS on an instance file.")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=_choice(Algorithm), default=Algorithm.OVNS.value, show_default=True, help="Solver.")
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Subgraph size.")
@click.option("--format", "instance_format", type=_choice(InstanceFormat), default=None,
              show_default="by file suffix", help="Instance file format.")
@click.option("--q", type=click.FloatRange(min=0, max=1, min_open=True), default=None,
              show_default="1.0", help="Fraction of heaviest edges ranked by the search (OVNS).")
@click.option("--p-min", type=click.IntRange(min=1), default=None, show_default="1", help="Smallest perturbation.")
@click.option("--p-max", type=click.IntRange(min=1), default=None, show_default="min(k, n-k)",
              help="Largest perturbation.")
@click.option("--p-step", type=click.IntRange(min=1), default=None,
              show_default="floor(k/10) for ovns, 1 for bvns", help="Perturbation increment.")
@click.option("--init", "init_mode", type=_choice(InitMode), default=None,
              show_default="drop for ovns, random for bvns", help="Initialization.")
@click.option("--init-draws", type=click.IntRange(min=1), default=None, show_default="HSP_RANDOM_INIT_DRAWS or 1000",
              help="Draws for random initialization.")
@click.option("--shake", "shake_mode", type=_choice(ShakeMode), default=None,
              show_default="preferential for ovns, uniform for bvns", help="Neighborhood change mode.")
@click.option("--search", "search_mode", type=_choice(SearchMode), default=None, show_default="first",
              help="Neighborhood search mode.")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="RNG seed.")
@click.option("--time-budget", type=click.FloatRange(min=0), default=None,
              show_default=f"{DEFAULT_TIME_BUDGET} when no budget is given", help="Wall time limit in seconds.")
@click.option("--iter-budget", type=click.IntRange(min=0), default=None, show_default="none",
              help="Optimization cycle limit.")
@click.option("--trace/--no-trace", default=False, show_default=True, help="Print improvement events.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print the run record as JSON.")
def solve_command(instance, algo, k, instance_format, q, p_min, p_max, p_step, init_mode, init_draws,
                  shake_mode, search_mode, seed, time_budget, iter_budget, trace, as_json):
    if p_min is not None and p_max is not None and p_min > p_max:
        raise click.UsageError("--p-min must not exceed --p-max")
    if time_budget is None and iter_budget is None:
        time_budget = DEFAULT_TIME_BUDGET

    params = SolverParams.for_algorithm(
        Algorithm(algo), k,
        q=q, p_min=p_min, p_max=p_max, p_step=p_step,
        init_mode=init_mode, init_draws=init_draws,
        shake_mode=shake_mode, search_mode=search_mode, seed=seed,
    )
    budget = Budget(max_wall_time=time_budget, max_iterations=iter_budget)

    loaded = load_instance(instance, instance_format)
    result = solve(loaded.graph, params, budget)

    if as_json:
        click.echo(write_run_record(result, {"instance": str(instance)}))
        return
    echo_result(loaded.graph, result.best_objective, result.best_set)
    click.echo(f"iterations: {result.iterations}")
    click.echo(f"wall_time: {result.wall_time:.3f}s")
    click.echo(f"time_to_best: {result.time_to_best:.3f}s")
    if trace:
        for iteration, value, elapsed in result.trace:
            click.echo(f"trace: {iteration} {value!r} {elapsed:.3f}s")
