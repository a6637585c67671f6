"""Seeded synthetic instance generators."""
import logging
from typing import Dict, List

import numpy as np

from ..enums import GraphFamily, WeightDist
from ..exceptions import ParamException
from ..models.graph import WeightedGraph, build_graph_from_arrays
from ..schemas.gen import GenSpec


logger = logging.getLogger(__name__)


def generate_bbv(n: int, m: int = 2, w0: float = 1.0, delta: float = 1.0, seed: int = 0) -> WeightedGraph:
    """
    Weighted preferential attachment growth.

    Starts from an (m+1)-clique with weight ``w0`` edges. Every new node links to m distinct
    existing nodes drawn proportionally to strength, with weight ``w0``. Each target i first
    spreads ``delta`` over its existing edges in proportion to their weights.
    """
    if not n > m >= 1:
        raise ParamException(f"Need n > m >= 1, got n={n}, m={m}")
    if not w0 > 0:
        raise ParamException(f"w0 must be positive, got {w0}")
    if delta < 0:
        raise ParamException(f"delta must be nonnegative, got {delta}")

    rng = np.random.default_rng(seed)
    adjacency: List[Dict[int, float]] = [dict() for _ in range(n)]
    strengths = np.zeros(n, dtype=np.float64)

    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            adjacency[u][v] = adjacency[v][u] = w0
    strengths[: m + 1] = m * w0

    for new in range(m + 1, n):
        probs = strengths[:new] / strengths[:new].sum()
        targets = rng.choice(new, size=m, replace=False, p=probs).tolist()
        for i in targets:
            if delta > 0:
                s_i = strengths[i]
                for j, w in adjacency[i].items():
                    bump = delta * w / s_i
                    adjacency[i][j] = w + bump
                    adjacency[j][i] = w + bump
                    strengths[j] += bump
                strengths[i] += delta
        for i in targets:
            adjacency[new][i] = adjacency[i][new] = w0
            strengths[i] += w0
            strengths[new] += w0

    us, vs, ws = [], [], []
    for u, row in enumerate(adjacency):
        for v, w in row.items():
            if u < v:
                us.append(u)
                vs.append(v)
                ws.append(w)
    return build_graph_from_arrays(np.array(us), np.array(vs), np.array(ws), n=n)


def generate_mdp_gaussian(n: int, mu: float = 50.0, sigma: float = 10.0, seed: int = 0) -> WeightedGraph:
    """Complete graph with Normal(mu, sigma) pair weights; negative draws are redrawn."""
    if n < 2:
        raise ParamException(f"n must be at least 2, got {n}")
    if sigma < 0:
        raise ParamException(f"sigma must be nonnegative, got {sigma}")
    if mu < 0 and (sigma == 0 or mu < -5 * sigma):
        raise ParamException(f"Normal({mu}, {sigma}) has almost no nonnegative mass")

    rng = np.random.default_rng(seed)
    us, vs = np.triu_indices(n, k=1)
    ws = rng.normal(mu, sigma, size=us.shape[0])
    negative = np.flatnonzero(ws < 0)
    while negative.size:
        ws[negative] = rng.normal(mu, sigma, size=negative.size)
        negative = negative[ws[negative] < 0]
    return build_graph_from_arrays(us, vs, ws, n=n)


def generate_gnp_weighted(
    n: int,
    p_edge: float,
    weight_dist: WeightDist = WeightDist.UNIFORM,
    seed: int = 0,
    a: float = 1.0,
    b: float = 10.0,
    alpha: float = 2.0,
    x_min: float = 1.0,
) -> WeightedGraph:
    """
    Erdős–Rényi graph with i.i.d. weights.

    ``uniform`` draws from [a, b]; ``pareto`` draws a Pareto law with tail index ``alpha``
    and scale ``x_min``.
    """
    if n < 1:
        raise ParamException(f"n must be at least 1, got {n}")
    if not 0 < p_edge <= 1:
        raise ParamException(f"p_edge must lie in (0, 1], got {p_edge}")
    weight_dist = WeightDist(weight_dist)
    if weight_dist == WeightDist.UNIFORM and not 0 <= a <= b:
        raise ParamException(f"Need 0 <= a <= b, got a={a}, b={b}")
    if weight_dist == WeightDist.PARETO and not (alpha > 0 and x_min > 0):
        raise ParamException(f"Need alpha > 0 and x_min > 0, got alpha={alpha}, x_min={x_min}")

    rng = np.random.default_rng(seed)
    us, vs = np.triu_indices(n, k=1)
    present = rng.random(us.shape[0]) < p_edge
    us, vs = us[present], vs[present]
    if weight_dist == WeightDist.UNIFORM:
        ws = rng.uniform(a, b, size=us.shape[0])
    else:
        ws = x_min * (1.0 + rng.pareto(alpha, size=us.shape[0]))
    return build_graph_from_arrays(us, vs, ws, n=n)


def generate(spec: GenSpec) -> WeightedGraph:
    """Dispatch a generator spec to its family."""
    logger.info("generating %s", spec.name)
    if spec.family == GraphFamily.BBV:
        return generate_bbv(spec.n, spec.m, spec.w0, spec.delta, spec.seed)
    if spec.family == GraphFamily.MDP_GAUSSIAN:
        return generate_mdp_gaussian(spec.n, spec.mu, spec.sigma, spec.seed)
    return generate_gnp_weighted(
        spec.n, spec.p_edge, spec.weight_dist, spec.seed,
        a=spec.a, b=spec.b, alpha=spec.alpha, x_min=spec.x_min,
    )
