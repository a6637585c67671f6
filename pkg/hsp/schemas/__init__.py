from .bench import (
    AlgorithmAggregate,
    AlgorithmSpec,
    BenchConfig,
    BenchReport,
    BenchRow,
    CellBest,
    InstanceSpec,
    RunRecord,
)
from .gen import GenSpec, GenSummary
from .oracle import ExactResult, LocalOptResult
from .solver import Budget, RunResult, Schedule, SolverParams


__all__ = [
    # bench schemas
    "AlgorithmAggregate",
    "AlgorithmSpec",
    "BenchConfig",
    "BenchReport",
    "BenchRow",
    "CellBest",
    "InstanceSpec",
    "RunRecord",

    # generator schemas
    "GenSpec",
    "GenSummary",

    # oracle schemas
    "ExactResult",
    "LocalOptResult",

    # solver schemas
    "Budget",
    "RunResult",
    "Schedule",
    "SolverParams",
]
