"""Benchmark harness: seeded run matrices, relative deviations and pool rankings."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
from scipy.stats import rankdata

from ..enums import RunStatus
from ..exceptions import HSPException, InstanceLoadException, LogicException, ParamException
from ..models.graph import WeightedGraph
from ..schemas.bench import (
    AlgorithmAggregate,
    AlgorithmSpec,
    BenchConfig,
    BenchReport,
    BenchRow,
    CellBest,
    InstanceSpec,
    RunRecord,
)
from ..schemas.solver import Budget
from ..utils.seeding import derive_seed
from .generator_service import generate
from .heuristics_service import solve
from .io_service import append_run_records, load_instance, write_bench_csv


logger = logging.getLogger(__name__)


def relative_deviation(f_star: float, f: float) -> float:
    """
    Percentage gap 100 * (f_star - f) / f_star of a run to the pool best.

    Raises:
        ParamException: f_star <= 0 or f < 0.
        LogicException: f > f_star, i.e. f_star is not the pool maximum.
    """
    if f_star <= 0:
        raise ParamException(f"f_star must be positive, got {f_star}")
    if f < 0:
        raise ParamException(f"objective must be nonnegative, got {f}")
    if f > f_star:
        raise LogicException(f"objective {f} exceeds the pool best {f_star}")
    return 100.0 * (f_star - f) / f_star


def rank_pool(objectives: Sequence[float]) -> List[float]:
    """Rank 1 for the largest objective; tied objectives share the mean of their positions."""
    if len(objectives) == 0:
        return []
    return rankdata([-value for value in objectives], method="average").tolist()


@dataclass(frozen=True)
class _Instance:
    instance_id: str
    graph: WeightedGraph
    declared_k: Optional[int]


@dataclass(frozen=True)
class _Task:
    instance: _Instance
    algorithm: AlgorithmSpec
    k: int
    replicate: int
    seed: int


def execute_task(task: _Task, budget: Budget) -> Tuple[BenchRow, RunRecord]:
    """Run one bench task; a failing solver yields a FAILED row instead of raising."""
    row = BenchRow(
        instance=task.instance.instance_id,
        algorithm=task.algorithm.name,
        k=task.k,
        seed=task.seed,
        replicate=task.replicate,
    )
    record = RunRecord(instance=row.instance, algorithm=row.algorithm, seed=task.seed, k=task.k)
    try:
        params = task.algorithm.params_for(task.k, task.seed)
        record.params = params
        result = solve(task.instance.graph, params, budget)
    except Exception as e:
        logger.exception("run failed: %s / %s k=%d seed=%d", row.instance, row.algorithm, task.k, task.seed)
        row.status = record.status = RunStatus.FAILED
        row.error = record.error = str(e)
        return row, record

    row.objective = record.best_objective = result.best_objective
    row.iterations = record.iterations = result.iterations
    row.best_set = record.best_set = result.best_set
    row.wall_ms = result.wall_time * 1000.0
    record.wall_time = result.wall_time
    row.time_to_best = record.time_to_best = result.time_to_best
    record.trace = result.trace
    return row, record


class BenchService:
    """Runs a benchmark configuration and assembles its report."""

    def __init__(self, config: BenchConfig):
        self.config = config

    def run(self) -> BenchReport:
        instances = [self._load(spec) for spec in self.config.instances]
        tasks = self._tasks(instances)
        logger.info("bench: %d instances, %d runs, %d workers", len(instances), len(tasks), self.config.workers)

        execute = partial(execute_task, budget=self.config.budget)
        if self.config.workers > 1:
            with ProcessPoolExecutor(max_workers=self.config.workers) as pool:
                outcomes = list(pool.map(execute, tasks))
        else:
            outcomes = [execute(task) for task in tasks]

        rows = [row for row, _ in outcomes]
        report = assemble_report(rows)
        if self.config.output_dir is not None:
            self._emit(report, [record for _, record in outcomes])
        return report

    def _load(self, spec: InstanceSpec) -> _Instance:
        try:
            if spec.generate is not None:
                return _Instance(spec.instance_id, generate(spec.generate), None)
            instance = load_instance(spec.path, spec.format)
            return _Instance(spec.instance_id, instance.graph, instance.k)
        except HSPException as e:
            raise InstanceLoadException(f"Cannot load instance {spec.instance_id!r}: {e}") from e

    def _tasks(self, instances: List[_Instance]) -> List[_Task]:
        tasks = []
        for instance in instances:
            k_values = self.config.k_values or ([instance.declared_k] if instance.declared_k else [])
            if not k_values:
                raise InstanceLoadException(f"No k value for instance {instance.instance_id!r}")
            for algorithm in self.config.algorithms:
                for k in k_values:
                    for replicate in range(self.config.runs_per_cell):
                        seed = derive_seed(self.config.base_seed, instance.instance_id, algorithm.name, k, replicate)
                        tasks.append(_Task(instance, algorithm, k, replicate, seed))
        return tasks

    def _emit(self, report: BenchReport, records: List[RunRecord]) -> None:
        out = Path(self.config.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_bench_csv(report, out / "bench.csv")
        log = out / "runs.jsonl"
        log.unlink(missing_ok=True)
        append_run_records(log, records)
        logger.info("bench: wrote %s and %s", out / "bench.csv", log)


def assemble_report(rows: List[BenchRow]) -> BenchReport:
    """
    Fill in deviations and ranks per (instance, k) pool and aggregate per algorithm.

    Failed runs keep their rows but take no part in pools or aggregates. A pool whose best
    objective is 0 gives every run deviation 0.
    """
    pools: Dict[Tuple[str, int], List[BenchRow]] = {}
    for row in rows:
        if row.status == RunStatus.OK:
            pools.setdefault((row.instance, row.k), []).append(row)

    cell_bests = []
    for (instance, k), pool in pools.items():
        f_star = max(row.objective for row in pool)
        cell_bests.append(CellBest(instance=instance, k=k, f_star=f_star))
        for row, rank in zip(pool, rank_pool([row.objective for row in pool])):
            row.rank = rank
            row.deviation_pct = relative_deviation(f_star, row.objective) if f_star > 0 else 0.0

    return BenchReport(rows=rows, cell_bests=cell_bests, aggregates=aggregate(rows))


def aggregate(rows: List[BenchRow]) -> List[AlgorithmAggregate]:
    """Mean and median deviation, rank and time to best per algorithm over its successful runs."""
    if not rows:
        return []
    frame = pd.DataFrame([row.model_dump() for row in rows])
    aggregates = []
    for name, group in frame.groupby("algorithm", sort=False):
        ok = group[group["status"] == RunStatus.OK]
        aggregates.append(AlgorithmAggregate(
            algorithm=name,
            runs=len(group),
            failed=len(group) - len(ok),
            mean_objective=_stat(ok["objective"].mean()),
            mean_deviation=_stat(ok["deviation_pct"].mean()),
            median_deviation=_stat(ok["deviation_pct"].median()),
            mean_rank=_stat(ok["rank"].mean()),
            median_rank=_stat(ok["rank"].median()),
            mean_time_to_best=_stat(ok["time_to_best"].mean()),
            median_time_to_best=_stat(ok["time_to_best"].median()),
        ))
    return aggregates


def _stat(value) -> Optional[float]:
    return None if pd.isna(value) else float(value)


def run_bench(config: BenchConfig) -> BenchReport:
    return BenchService(config).run()
