import time
from typing import Optional


class BudgetClock:
    """Counts optimization cycles and elapsed wall time against a run budget."""

    def __init__(self, max_wall_time: Optional[float] = None, max_iterations: Optional[int] = None):
        self.max_wall_time = max_wall_time
        self.max_iterations = max_iterations
        self.iterations = 0
        self._start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._start

    def tick(self) -> None:
        self.iterations += 1

    def exhausted(self) -> bool:
        if self.max_iterations is not None and self.iterations >= self.max_iterations:
            return True
        return self.max_wall_time is not None and self.elapsed >= self.max_wall_time
