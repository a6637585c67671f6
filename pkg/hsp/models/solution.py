"""Solution sets with incremental objective and gain bookkeeping."""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional

import numpy as np

from ..core.config import Config
from ..exceptions import LogicException, ValidationException
from .graph import WeightedGraph, row_positions


IMPROVEMENT_RTOL = Config.IMPROVEMENT_RTOL


def improvement_tolerance(reference: float) -> float:
    return IMPROVEMENT_RTOL * max(1.0, abs(reference))


def is_improvement(delta: float, reference: float) -> bool:
    """True when ``delta`` is a strictly positive change relative to ``reference``."""
    return delta > improvement_tolerance(reference)


def _validated_nodes(g: WeightedGraph, nodes: Iterable[int]) -> List[int]:
    seen = set()
    ordered = []
    for node in nodes:
        node = g.validate_node(node)
        if node in seen:
            raise ValidationException(f"Node {node} listed twice")
        seen.add(node)
        ordered.append(node)
    return ordered


def objective_of(g: WeightedGraph, nodes: Iterable[int]) -> float:
    """
    Total weight of the subgraph induced by ``nodes``, each undirected edge counted once.

    Raises:
        ValidationException: unknown or repeated node id.
    """
    members = _validated_nodes(g, nodes)
    if len(members) <= 1:
        return 0.0
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True
    _, positions = row_positions(g.indptr, members)
    inside = mask[g.indices[positions]]
    return float(g.weights[positions][inside].sum()) / 2.0


@dataclass(eq=False)
class SolutionState:
    """
    Current node set H with per-node gains.

    ``gain[x]`` is the summed weight between x and the members of H other than x,
    kept for every node of the graph. ``members`` keeps a stable slot order: a
    swap writes the incoming node into the outgoing node's slot.
    """

    members: List[int]
    in_h: np.ndarray
    position: np.ndarray
    gain: np.ndarray
    objective: float

    @property
    def k(self) -> int:
        return len(self.members)

    def member_set(self) -> FrozenSet[int]:
        return frozenset(self.members)

    def sorted_members(self) -> List[int]:
        return sorted(self.members)

    def copy(self) -> "SolutionState":
        return SolutionState(
            members=list(self.members),
            in_h=self.in_h.copy(),
            position=self.position.copy(),
            gain=self.gain.copy(),
            objective=self.objective,
        )


def init_state(g: WeightedGraph, nodes: Iterable[int], k: Optional[int] = None) -> SolutionState:
    """
    Build a solution state with gains and objective computed from scratch.

    Args:
        g: the graph.
        nodes: initial members.
        k: expected solution size; defaults to the number of nodes given.

    Raises:
        ValidationException: empty set, unknown or repeated id, or |nodes| != k.
    """
    members = _validated_nodes(g, nodes)
    if not members:
        raise ValidationException("A solution needs at least one node")
    if k is not None and len(members) != k:
        raise ValidationException(f"Expected {k} nodes, got {len(members)}")

    in_h = np.zeros(g.n, dtype=bool)
    in_h[members] = True
    position = np.full(g.n, -1, dtype=np.int64)
    position[members] = np.arange(len(members))

    rows = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    gain = np.bincount(rows, weights=g.weights * in_h[g.indices], minlength=g.n).astype(np.float64)
    objective = float(gain[in_h].sum()) / 2.0

    return SolutionState(members=members, in_h=in_h, position=position, gain=gain, objective=objective)


def _check_swap(state: SolutionState, u_out: int, v_in: int) -> None:
    if not state.in_h[u_out]:
        raise LogicException(f"Node {u_out} is not a member of the solution")
    if state.in_h[v_in]:
        raise LogicException(f"Node {v_in} is already a member of the solution")


def swap_delta(state: SolutionState, g: WeightedGraph, u_out: int, v_in: int) -> float:
    """Objective change of replacing member ``u_out`` with outsider ``v_in``; the state is not touched."""
    _check_swap(state, u_out, v_in)
    return float(state.gain[v_in] - state.gain[u_out] - g.edge_weight(u_out, v_in))


def apply_swap(state: SolutionState, g: WeightedGraph, u_out: int, v_in: int) -> None:
    """Replace ``u_out`` with ``v_in`` in place, updating gains along both neighbor rows."""
    _check_swap(state, u_out, v_in)
    gain_out = state.gain[u_out]

    # once u_out's row is taken off, gain[v_in] no longer counts w(u_out, v_in)
    nbrs, ws = g.neighbors(u_out)
    state.gain[nbrs] -= ws
    delta = float(state.gain[v_in] - gain_out)
    nbrs, ws = g.neighbors(v_in)
    state.gain[nbrs] += ws

    slot = int(state.position[u_out])
    state.members[slot] = v_in
    state.position[v_in] = slot
    state.position[u_out] = -1
    state.in_h[u_out] = False
    state.in_h[v_in] = True
    state.objective += delta
