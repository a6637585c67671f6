from typing import Optional

from pydantic import BaseModel, Field, model_validator

from ..core.config import Config
from ..enums import GraphFamily, WeightDist


class GenSpec(BaseModel):
    """Generator family, size, family parameters and seed. Identical specs yield identical graphs."""
    family: GraphFamily
    n: int = Field(ge=1)
    seed: int = Field(default=0, ge=0)

    # bbv
    m: int = Config.BBV_M
    w0: float = Config.BBV_W0
    delta: float = Config.BBV_DELTA

    # mdp_gaussian
    mu: float = 50.0
    sigma: float = 10.0

    # gnp_weighted
    p_edge: float = 0.1
    weight_dist: WeightDist = WeightDist.UNIFORM
    a: float = 1.0
    b: float = 10.0
    alpha: float = 2.0
    x_min: float = 1.0

    name: Optional[str] = None

    @model_validator(mode="after")
    def default_name(self):
        if self.name is None:
            self.name = f"{self.family.value}-n{self.n}-s{self.seed}"
        return self


class GenSummary(BaseModel):
    """What ``gen`` wrote: the generator spec and the resulting graph's size."""
    spec: GenSpec
    n: int
    edges: int
    total_weight: float
    k: Optional[int] = None    # matrix output only
    out: str
