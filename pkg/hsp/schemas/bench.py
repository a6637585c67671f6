from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ..core.config import Config
from ..enums import Algorithm, InitMode, InstanceFormat, RunStatus, SearchMode, ShakeMode
from .gen import GenSpec
from .solver import Budget, SolverParams


class InstanceSpec(BaseModel):
    """A benchmark instance: either a file on disk or a generator spec."""
    path: Optional[str] = None
    format: Optional[InstanceFormat] = None
    generate: Optional[GenSpec] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def check_source(self):
        if (self.path is None) == (self.generate is None):
            raise ValueError("An instance needs exactly one of 'path' or 'generate'")
        return self

    @property
    def instance_id(self) -> str:
        if self.name:
            return self.name
        if self.path is not None:
            return Path(self.path).stem
        return self.generate.name


class AlgorithmSpec(BaseModel):
    """Named solver parameter template; unset fields take the algorithm's defaults."""
    name: str
    algorithm: Algorithm
    init_mode: Optional[InitMode] = None
    init_draws: Optional[int] = None
    shake_mode: Optional[ShakeMode] = None
    search_mode: Optional[SearchMode] = None
    q: Optional[float] = None
    p_min: Optional[int] = None
    p_max: Optional[int] = None
    p_step: Optional[int] = None

    def params_for(self, k: int, seed: int) -> SolverParams:
        return SolverParams.for_algorithm(
            self.algorithm, k,
            seed=seed,
            init_mode=self.init_mode,
            init_draws=self.init_draws,
            shake_mode=self.shake_mode,
            search_mode=self.search_mode,
            q=self.q,
            p_min=self.p_min,
            p_max=self.p_max,
            p_step=self.p_step,
        )


class BenchConfig(BaseModel):
    instances: List[InstanceSpec] = Field(min_length=1)
    algorithms: List[AlgorithmSpec] = Field(min_length=1)
    k_values: List[int] = []    # empty: use each instance's declared k
    runs_per_cell: int = Field(default=1, ge=1)
    budget: Budget
    base_seed: int = 0
    workers: int = Field(default=Config.BENCH_WORKERS, ge=1)
    output_dir: Optional[str] = None

    @model_validator(mode="after")
    def check_names(self):
        names = [spec.name for spec in self.algorithms]
        if len(set(names)) != len(names):
            raise ValueError("Algorithm names must be unique")
        ids = [spec.instance_id for spec in self.instances]
        if len(set(ids)) != len(ids):
            raise ValueError("Instance ids must be unique")
        return self


class BenchRow(BaseModel):
    instance: str
    algorithm: str
    k: int
    seed: int
    replicate: int
    status: RunStatus = RunStatus.OK
    objective: Optional[float] = None
    deviation_pct: Optional[float] = None
    rank: Optional[float] = None
    iterations: Optional[int] = None
    wall_ms: Optional[float] = None
    time_to_best: Optional[float] = None    # seconds
    best_set: List[int] = []
    error: Optional[str] = None


class CellBest(BaseModel):
    instance: str
    k: int
    f_star: float


class AlgorithmAggregate(BaseModel):
    algorithm: str
    runs: int
    failed: int
    mean_objective: Optional[float] = None
    mean_deviation: Optional[float] = None
    median_deviation: Optional[float] = None
    mean_rank: Optional[float] = None
    median_rank: Optional[float] = None
    mean_time_to_best: Optional[float] = None
    median_time_to_best: Optional[float] = None


class BenchReport(BaseModel):
    rows: List[BenchRow]
    cell_bests: List[CellBest]
    aggregates: List[AlgorithmAggregate]

    def f_star(self) -> Dict[Tuple[str, int], float]:
        return {(cell.instance, cell.k): cell.f_star for cell in self.cell_bests}


class RunRecord(BaseModel):
    """One JSON line of the run log."""
    instance: str
    algorithm: str
    params: Optional[SolverParams] = None
    seed: int
    k: int
    status: RunStatus = RunStatus.OK
    best_objective: Optional[float] = None
    best_set: List[int] = []
    iterations: Optional[int] = None
    wall_time: Optional[float] = None
    time_to_best: Optional[float] = None
    trace: List[Tuple[int, float, float]] = []
    error: Optional[str] = None
