"""Variable neighborhood search for the heaviest k-subgraph problem."""
import logging
from typing import Collection, List, Optional, Tuple

import numpy as np

from ..enums import Algorithm, InitMode, SearchMode, ShakeMode
from ..exceptions import ParamException
from ..models.graph import RankedAdjacency, WeightedGraph, rank_neighbors, threshold_edges
from ..models.solution import (
    SolutionState,
    apply_swap,
    improvement_tolerance,
    init_state,
    is_improvement,
    objective_of,
)
from ..schemas.solver import Budget, RunResult, Schedule, SolverParams
from ..utils.seeding import make_rng
from ..utils.timing import BudgetClock


logger = logging.getLogger(__name__)


def _check_k(g: WeightedGraph, k: int) -> None:
    if not 1 <= k <= g.n:
        raise ParamException(f"k must lie in [1, {g.n}], got {k}")


def drop_heuristic(g: WeightedGraph, k: int) -> List[int]:
    """
    Start from all nodes and remove the least contributing node until k remain.

    Ties go to the lowest node id.
    """
    _check_k(g, k)
    # contribution of every node to the current set; removed nodes sit at +inf
    contribution = g.strengths.astype(np.float64)
    for _ in range(g.n - k):
        node = int(np.argmin(contribution))
        contribution[node] = np.inf
        nbrs, ws = g.neighbors(node)
        contribution[nbrs] -= ws
    return np.flatnonzero(np.isfinite(contribution)).tolist()


def random_init(g: WeightedGraph, k: int, draws: int, rng: np.random.Generator) -> List[int]:
    """
    Best of ``draws`` uniform k-subsets, first encountered on ties.

    Each draw consumes exactly one ``rng.choice(g.n, size=k, replace=False)``.
    """
    _check_k(g, k)
    if draws < 1:
        raise ParamException(f"draws must be at least 1, got {draws}")
    best_nodes, best_value = None, -np.inf
    for _ in range(draws):
        nodes = rng.choice(g.n, size=k, replace=False)
        value = objective_of(g, nodes.tolist())
        if value > best_value:
            best_nodes, best_value = nodes, value
    return sorted(best_nodes.tolist())


def sample_preferential(
    g: WeightedGraph,
    exclude: Collection[int],
    p: int,
    rng: np.random.Generator,
) -> List[int]:
    """
    Draw p distinct nodes outside ``exclude`` with probability proportional to strength.

    Draws are without replacement and renormalized over the remaining candidates.
    Once only zero-strength candidates remain, the rest are drawn uniformly.
    """
    mask = np.ones(g.n, dtype=bool)
    mask[list(exclude)] = False
    candidates = np.flatnonzero(mask)
    if not 0 <= p <= candidates.shape[0]:
        raise ParamException(f"Cannot draw {p} nodes from {candidates.shape[0]} candidates")

    strengths = g.strengths[candidates]
    positive = strengths > 0
    weighted = candidates[positive]
    take = min(p, weighted.shape[0])

    chosen: List[int] = []
    if take:
        probs = strengths[positive] / strengths[positive].sum()
        chosen.extend(rng.choice(weighted, size=take, replace=False, p=probs).tolist())
    if p > take:
        chosen.extend(rng.choice(candidates[~positive], size=p - take, replace=False).tolist())
    return chosen


def neighborhood_change(
    g: WeightedGraph,
    state: SolutionState,
    p: int,
    shake_mode: ShakeMode,
    rng: np.random.Generator,
) -> SolutionState:
    """
    Replace a uniformly drawn p-subset of H by p outside nodes.

    Incoming nodes are drawn uniformly or by strength. Returns a new state; ``state`` is left as is.
    """
    k = state.k
    if not 1 <= p <= min(k, g.n - k):
        raise ParamException(f"Perturbation size must lie in [1, {min(k, g.n - k)}], got {p}")

    outgoing = [state.members[slot] for slot in rng.choice(k, size=p, replace=False)]
    if ShakeMode(shake_mode) == ShakeMode.PREFERENTIAL:
        incoming = sample_preferential(g, state.members, p, rng)
    else:
        incoming = rng.choice(np.flatnonzero(~state.in_h), size=p, replace=False).tolist()

    shaken = state.copy()
    for u, v in zip(outgoing, incoming):
        apply_swap(shaken, g, u, v)
    return shaken


def _scan_swaps(state: SolutionState, ranked: RankedAdjacency, first: bool) -> Optional[Tuple[int, int]]:
    """One pass over every member row at once; candidates are ordered by (member slot, rank)."""
    members = np.asarray(state.members, dtype=np.int64)
    owner, nbrs, ws = ranked.gather(members)
    if nbrs.shape[0] == 0:
        return None
    outs = members[owner]
    deltas = state.gain[nbrs] - state.gain[outs] - ws
    deltas[state.in_h[nbrs]] = -np.inf
    improving = deltas > improvement_tolerance(state.objective)
    if not improving.any():
        return None
    j = int(np.argmax(improving)) if first else int(np.argmax(deltas))
    return int(outs[j]), int(nbrs[j])


def neighborhood_search(
    g: WeightedGraph,
    ranked: RankedAdjacency,
    state: SolutionState,
    search_mode: SearchMode,
) -> SolutionState:
    """
    Greedy 1-swap descent over ranked member-adjacent candidates.

    For each member u (in slot order) the candidates are u's ranked neighbors outside H,
    heaviest edge first. First improvement applies the first improving swap and restarts
    from the first member; best improvement applies the best swap of a full scan. Stops
    when a full scan finds nothing. Gains come from the full graph ``g``; ``ranked`` only
    decides which swaps are looked at and in what order. Mutates and returns ``state``.
    """
    first = SearchMode(search_mode) == SearchMode.FIRST
    while True:
        move = _scan_swaps(state, ranked, first)
        if move is None:
            return state
        apply_swap(state, g, *move)


def _initial_members(g: WeightedGraph, params: SolverParams, rng: np.random.Generator) -> List[int]:
    if params.init_mode == InitMode.DROP:
        return drop_heuristic(g, params.k)
    return random_init(g, params.k, params.init_draws, rng)


def _run_vns(
    g: WeightedGraph,
    ranked: RankedAdjacency,
    params: SolverParams,
    schedule: Schedule,
    budget: Budget,
    rng: np.random.Generator,
) -> RunResult:
    clock = BudgetClock(budget.max_wall_time, budget.max_iterations)
    state = init_state(g, _initial_members(g, params, rng), params.k)
    initial_objective = state.objective
    trace = [(0, state.objective, clock.elapsed)]
    logger.info(
        "%s start: n=%d |E|=%d k=%d p=[%d..%d/%d] f0=%.6g",
        params.algorithm.value, g.n, g.total_edge_count, params.k,
        schedule.p_min, schedule.p_max, schedule.p_step, state.objective,
    )

    while not schedule.degenerate and not clock.exhausted():
        p = schedule.p_min
        while p <= schedule.p_max and not clock.exhausted():
            candidate = neighborhood_change(g, state, p, params.shake_mode, rng)
            neighborhood_search(g, ranked, candidate, params.search_mode)
            clock.tick()
            if is_improvement(candidate.objective - state.objective, state.objective):
                state = candidate
                trace.append((clock.iterations, state.objective, clock.elapsed))
                logger.debug("cycle %d: p=%d f=%.6g", clock.iterations, p, state.objective)
                break
            p += schedule.p_step

    best_set = state.sorted_members()
    result = RunResult(
        algorithm=params.algorithm,
        k=params.k,
        seed=params.seed,
        best_set=best_set,
        best_objective=objective_of(g, best_set),
        initial_objective=initial_objective,
        iterations=clock.iterations,
        wall_time=clock.elapsed,
        time_to_best=trace[-1][2],
        trace=trace,
        params=params,
    )
    logger.info(
        "%s done: f=%.6g after %d cycles in %.3fs (best at %.3fs)",
        params.algorithm.value, result.best_objective, result.iterations, result.wall_time, result.time_to_best,
    )
    return result


def bvns(
    g: WeightedGraph,
    params: SolverParams,
    budget: Budget,
    rng: Optional[np.random.Generator] = None,
) -> RunResult:
    """
    Basic variable neighborhood search.

    The search always ranks candidates over the full graph; ``params.q`` is not used.
    """
    schedule = params.schedule(g.n)
    rng = rng if rng is not None else make_rng(params.seed)
    return _run_vns(g, rank_neighbors(g), params, schedule, budget, rng)


def ovns(
    g: WeightedGraph,
    params: SolverParams,
    budget: Budget,
    rng: Optional[np.random.Generator] = None,
) -> RunResult:
    """
    Variable neighborhood search with drop initialization, strength-proportional
    shaking and a weight-ranked, q-thresholded candidate order.
    """
    schedule = params.schedule(g.n)
    rng = rng if rng is not None else make_rng(params.seed)
    ranked = rank_neighbors(threshold_edges(g, params.q))
    return _run_vns(g, ranked, params, schedule, budget, rng)


def solve(g: WeightedGraph, params: SolverParams, budget: Budget) -> RunResult:
    """Run the algorithm named by ``params`` with an rng seeded from ``params.seed``."""
    driver = bvns if params.algorithm == Algorithm.BVNS else ovns
    return driver(g, params, budget, make_rng(params.seed))
