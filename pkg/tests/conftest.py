import itertools
from typing import Callable, List, Tuple

import numpy as np
import pytest

from hsp.models.graph import WeightedGraph, build_graph, build_graph_from_arrays
from hsp.models.solution import objective_of
from hsp.schemas.bench import BenchConfig, BenchReport
from hsp.services.bench_service import run_bench


def random_graph(n: int, p_edge: float, seed: int, integer: bool = True, max_weight: int = 10) -> WeightedGraph:
    """Erdős–Rényi graph with integer (or float) weights in [1, max_weight]."""
    rng = np.random.default_rng(seed)
    us, vs = np.triu_indices(n, k=1)
    present = rng.random(us.shape[0]) < p_edge
    us, vs = us[present], vs[present]
    if integer:
        ws = rng.integers(1, max_weight + 1, size=us.shape[0]).astype(float)
    else:
        ws = rng.uniform(0.5, max_weight, size=us.shape[0])
    return build_graph_from_arrays(us, vs, ws, n=n)


def brute_force_optimum(g: WeightedGraph, k: int) -> Tuple[float, List[int]]:
    """Plain itertools enumeration, scanned in reverse order."""
    best_value, best_set = -1.0, None
    for subset in reversed(list(itertools.combinations(range(g.n), k))):
        value = objective_of(g, subset)
        if value > best_value + 1e-9 or (abs(value - best_value) <= 1e-9 and list(subset) < best_set):
            best_value, best_set = value, list(subset)
    return best_value, best_set


@pytest.fixture
def triangle() -> WeightedGraph:
    return build_graph([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def path_abc() -> WeightedGraph:
    return build_graph([(0, 1, 1.0), (1, 2, 2.0)], labels=["a", "b", "c"])


@pytest.fixture
def star() -> WeightedGraph:
    """Center 0 with unit leaves 1, 2, 3."""
    return build_graph([(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])


@pytest.fixture
def make_graph() -> Callable[..., WeightedGraph]:
    return random_graph


@pytest.fixture
def write_file(tmp_path):
    def _write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


def small_bench_config(**overrides) -> BenchConfig:
    data = dict(
        instances=[
            {"generate": {"family": "gnp_weighted", "n": 30, "seed": 1, "p_edge": 0.2}},
            {"generate": {"family": "bbv", "n": 40, "seed": 2}},
        ],
        algorithms=[
            {"name": "ovns", "algorithm": "ovns"},
            {"name": "bvns", "algorithm": "bvns", "init_draws": 20},
        ],
        k_values=[5],
        runs_per_cell=3,
        budget={"max_iterations": 30},
        base_seed=11,
    )
    data.update(overrides)
    return BenchConfig.model_validate(data)


@pytest.fixture
def bench_config() -> BenchConfig:
    return small_bench_config()


@pytest.fixture
def bench_report(bench_config) -> BenchReport:
    return run_bench(bench_config)
