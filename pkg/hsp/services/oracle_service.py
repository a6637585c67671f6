"""Ground truth: exact optimum by enumeration and 1-swap local optimality checks."""
import logging
import math
from typing import Iterable, Iterator, List, Optional, Tuple

import numpy as np

from ..core.config import Config
from ..exceptions import ParamException, TooLargeException
from ..models.graph import WeightedGraph
from ..models.solution import improvement_tolerance, init_state, objective_of
from ..schemas.oracle import ExactResult, LocalOptResult


logger = logging.getLogger(__name__)

# graphs up to this size get dense weight rows in exact_hsp
DENSE_NODE_LIMIT = 2048


def _last_subset(n: int, k: int) -> List[int]:
    if k == 0:
        return []
    if k == n:
        return list(range(n))
    return list(range(k - 1)) + [n - 1]


def door_swaps(n: int, k: int, reverse: bool = False) -> Iterator[Tuple[int, int]]:
    """
    The (out, in) swaps leading from each k-subset of ``revolving_door(n, k, reverse)`` to the next.

    R(n, k) = R(n-1, k) followed by reversed R(n-1, k-1), each extended with n-1; the
    recursion on n is unrolled, so nesting is at most k deep.
    """
    if k == 0 or k >= n:
        return
    if not reverse:
        for m in range(k + 1, n + 1):
            yield (k - 2 if k >= 2 else m - 2), m - 1
            yield from door_swaps(m - 1, k - 1, reverse=True)
    else:
        for m in range(n, k, -1):
            yield from door_swaps(m - 1, k - 1)
            yield m - 1, (k - 2 if k >= 2 else m - 2)


def revolving_door(n: int, k: int, reverse: bool = False) -> Iterator[Tuple[int, ...]]:
    """All k-subsets of range(n) as sorted tuples, consecutive subsets differing by one swap."""
    current = set(_last_subset(n, k) if reverse else range(k))
    yield tuple(sorted(current))
    for out, into in door_swaps(n, k, reverse):
        current.remove(out)
        current.add(into)
        yield tuple(sorted(current))


def _weight_rows(g: WeightedGraph) -> List[Tuple[object, np.ndarray]]:
    """Per node (index, weights) such that ``gain[index] += weights`` adds the node's edges."""
    if g.n <= DENSE_NODE_LIMIT:
        dense = np.zeros((g.n, g.n))
        us, vs, ws = g.edge_arrays()
        dense[us, vs] = ws
        dense[vs, us] = ws
        return [(slice(None), dense[node]) for node in range(g.n)]
    return [g.neighbors(node) for node in range(g.n)]


def exact_hsp(g: WeightedGraph, k: int, limit: Optional[int] = None) -> ExactResult:
    """
    Heaviest k-subgraph by enumerating every k-subset.

    Subsets are visited in revolving-door order so each step is one incremental swap;
    for k > n / 2 the complements are enumerated instead. Ties resolve to the
    lexicographically smallest set.

    Raises:
        ParamException: k outside [1, n].
        TooLargeException: C(n, k) exceeds ``limit``.
    """
    if not 1 <= k <= g.n:
        raise ParamException(f"k must lie in [1, {g.n}], got {k}")
    limit = limit if limit is not None else Config.EXACT_SUBSET_LIMIT
    total = math.comb(g.n, k)
    if total > limit:
        raise TooLargeException(f"C({g.n}, {k}) = {total} subsets exceeds the limit of {limit}")

    complement = 2 * k > g.n
    if complement:
        members = list(range(g.n - k, g.n))
        swaps = ((into, out) for out, into in door_swaps(g.n, g.n - k))
    else:
        members = list(range(k))
        swaps = door_swaps(g.n, k)

    state = init_state(g, members)
    gain, value = state.gain, state.objective
    in_set = state.in_h
    rows = _weight_rows(g)
    best_set, best_value = tuple(members), value
    examined = 1

    for out, into in swaps:
        # gain[out] is untouched by its own row (no self-loops), gain[into] loses w(out, into)
        gain_out = gain[out]
        index, weights = rows[out]
        gain[index] -= weights
        value += gain[into] - gain_out
        index, weights = rows[into]
        gain[index] += weights
        in_set[out] = False
        in_set[into] = True
        examined += 1

        diff = value - best_value
        tol = improvement_tolerance(best_value)
        if diff > tol:
            best_set, best_value = tuple(np.flatnonzero(in_set).tolist()), value
        elif abs(diff) <= tol:
            subset = tuple(np.flatnonzero(in_set).tolist())
            if subset < best_set:
                best_set = subset

    logger.debug("exact: examined %d subsets for n=%d k=%d", examined, g.n, k)
    return ExactResult(
        k=k,
        best_set=list(best_set),
        best_objective=objective_of(g, best_set),
        subsets_examined=examined,
    )


def local_opt_check(g: WeightedGraph, nodes: Iterable[int]) -> LocalOptResult:
    """
    Test every swap of a member u with an outside neighbor v of u on the full graph.

    Returns the first improving swap found (members ascending, neighbors ascending) as witness.
    """
    state = init_state(g, nodes)
    tol = improvement_tolerance(state.objective)
    for u in state.sorted_members():
        nbrs, ws = g.neighbors(u)
        for v, w in zip(nbrs.tolist(), ws.tolist()):
            if state.in_h[v]:
                continue
            delta = float(state.gain[v] - state.gain[u] - w)
            if delta > tol:
                return LocalOptResult(is_local_optimum=False, witness=(u, v), delta=delta)
    return LocalOptResult(is_local_optimum=True)
