from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ..core.config import Config
from ..enums import Algorithm, InitMode, SearchMode, ShakeMode
from ..exceptions import ParamException


class Schedule(BaseModel):
    """Perturbation schedule resolved against a concrete graph."""
    p_min: int
    p_max: int
    p_step: int

    @property
    def degenerate(self) -> bool:
        """True when no perturbation is possible (k = n)."""
        return self.p_max == 0


class SolverParams(BaseModel):
    algorithm: Algorithm = Algorithm.OVNS
    k: int = Field(ge=1)
    p_min: int = Field(default=1, ge=1)
    p_max: Optional[int] = Field(default=None, ge=1)    # None: min(k, n - k)
    p_step: Optional[int] = Field(default=None, ge=1)   # None: algorithm default
    q: float = Field(default=1.0, gt=0.0, le=1.0)
    init_mode: InitMode = InitMode.DROP
    init_draws: int = Field(default=Config.RANDOM_INIT_DRAWS, ge=1)
    shake_mode: ShakeMode = ShakeMode.PREFERENTIAL
    search_mode: SearchMode = SearchMode.FIRST
    seed: int = Field(default=0, ge=0)

    @classmethod
    def for_algorithm(cls, algorithm: Algorithm, k: int, **overrides: Any) -> "SolverParams":
        """
        Build the benchmark parameterization of an algorithm.

        OVNS: drop init, preferential shake, first improvement, q = 1, p_step = floor(k / 10).
        BVNS: best-of-m random init, uniform shake, first improvement, q = 1, p_step = 1.
        Overrides with a value of None are ignored.
        """
        algorithm = Algorithm(algorithm)
        if algorithm == Algorithm.BVNS:
            defaults = dict(init_mode=InitMode.RANDOM, shake_mode=ShakeMode.UNIFORM, p_step=1)
        else:
            defaults = dict(init_mode=InitMode.DROP, shake_mode=ShakeMode.PREFERENTIAL, p_step=default_p_step(k))
        defaults.update(search_mode=SearchMode.FIRST, q=1.0)
        defaults.update({key: value for key, value in overrides.items() if value is not None})
        return cls(algorithm=algorithm, k=k, **defaults)

    def schedule(self, n: int) -> Schedule:
        """
        Resolve and check the perturbation schedule for a graph with ``n`` nodes.

        Raises:
            ParamException: k outside [1, n] or an inconsistent p_min / p_max / p_step.
        """
        if not 1 <= self.k <= n:
            raise ParamException(f"k must lie in [1, {n}], got {self.k}")
        cap = min(self.k, n - self.k)
        p_step = self.p_step if self.p_step is not None else self._default_step()
        if cap == 0:
            return Schedule(p_min=self.p_min, p_max=0, p_step=p_step)

        p_max = self.p_max if self.p_max is not None else cap
        if not self.p_min <= p_max <= cap:
            raise ParamException(f"Need 1 <= p_min <= p_max <= {cap}, got p_min={self.p_min}, p_max={p_max}")
        if self.k > 1 and not 1 <= p_step <= self.k - 1:
            raise ParamException(f"p_step must lie in [1, {self.k - 1}], got {p_step}")
        return Schedule(p_min=self.p_min, p_max=p_max, p_step=p_step)

    def _default_step(self) -> int:
        return 1 if self.algorithm == Algorithm.BVNS else default_p_step(self.k)


def default_p_step(k: int) -> int:
    return max(1, k // 10)


class Budget(BaseModel):
    max_wall_time: Optional[float] = Field(default=None, ge=0.0)    # seconds
    max_iterations: Optional[int] = Field(default=None, ge=0)       # optimization cycles

    @model_validator(mode="after")
    def check_limits(self):
        if self.max_wall_time is None and self.max_iterations is None:
            raise ValueError("A budget needs a wall time limit, an iteration limit, or both")
        return self


class RunResult(BaseModel):
    algorithm: Algorithm
    k: int
    seed: int
    best_set: List[int]
    best_objective: float
    initial_objective: float
    iterations: int
    wall_time: float
    time_to_best: float = 0.0                       # seconds until the final best was reached
    trace: List[Tuple[int, float, float]] = []      # (cycle, objective, elapsed seconds)
    params: SolverParams
