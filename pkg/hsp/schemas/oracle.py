from typing import List, Optional, Tuple

from pydantic import BaseModel


class ExactResult(BaseModel):
    k: int
    best_set: List[int]
    best_objective: float
    subsets_examined: int


class LocalOptResult(BaseModel):
    is_local_optimum: bool
    witness: Optional[Tuple[int, int]] = None    # (u_out, v_in)
    delta: Optional[float] = None
