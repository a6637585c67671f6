import enum


class Algorithm(str, enum.Enum):
    OVNS = "ovns"
    BVNS = "bvns"


class InitMode(str, enum.Enum):
    DROP = "drop"
    RANDOM = "random"    # best of m uniform draws


class ShakeMode(str, enum.Enum):
    UNIFORM = "uniform"
    PREFERENTIAL = "preferential"


class SearchMode(str, enum.Enum):
    FIRST = "first"
    BEST = "best"


class GraphFamily(str, enum.Enum):
    BBV = "bbv"
    MDP_GAUSSIAN = "mdp_gaussian"
    GNP_WEIGHTED = "gnp_weighted"


class WeightDist(str, enum.Enum):
    UNIFORM = "uniform"
    PARETO = "pareto"


class InstanceFormat(str, enum.Enum):
    EDGELIST = "edgelist"
    MATRIX = "matrix"


class RunStatus(str, enum.Enum):
    OK = "ok"
    FAILED = "failed"
