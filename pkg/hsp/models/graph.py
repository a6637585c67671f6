"""Weighted graph data model in compressed sparse row form."""
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ParamException, ValidationException


EdgeTriple = Tuple[int, int, float]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def row_positions(indptr: np.ndarray, nodes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Flat CSR positions of the rows of ``nodes``, concatenated in the given order.

    Returns (owner, positions): ``owner[i]`` is the index into ``nodes`` of the row entry ``i`` belongs to.
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    starts = indptr[nodes]
    lengths = indptr[nodes + 1] - starts
    owner = np.repeat(np.arange(nodes.shape[0]), lengths)
    shift = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
    return owner, np.arange(owner.shape[0]) + shift


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """
    Undirected graph with nonnegative edge weights.

    Every undirected edge {u, v} is stored twice, once in each endpoint's row.
    Rows are sorted by ascending neighbor id. Arrays are read-only so a graph
    can be shared between solver runs.

    Attributes:
        n: number of nodes.
        indptr: row offsets, length n + 1.
        indices: neighbor ids, length 2|E|.
        weights: edge weights aligned with ``indices``.
        strengths: per-node sum of incident edge weights.
        labels: original node tokens by id, when the graph was parsed from a file.
        threshold_q: quantile the graph was thresholded at (1.0 for a source graph).
        base_edge_count: edge count of the unthresholded source graph.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    strengths: np.ndarray
    labels: Optional[Tuple[str, ...]] = None
    threshold_q: float = 1.0
    base_edge_count: int = field(default=-1)

    def __post_init__(self):
        if self.base_edge_count < 0:
            object.__setattr__(self, "base_edge_count", self.total_edge_count)

    @property
    def total_edge_count(self) -> int:
        return int(self.indices.shape[0] // 2)

    @property
    def total_weight(self) -> float:
        """Sum of undirected edge weights (each edge once)."""
        return float(self.strengths.sum()) / 2.0

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, node: int) -> Tuple[np.ndarray, np.ndarray]:
        start, end = self.indptr[node], self.indptr[node + 1]
        return self.indices[start:end], self.weights[start:end]

    def edge_weight(self, u: int, v: int) -> float:
        """Weight of edge (u, v), 0.0 when absent."""
        nbrs, ws = self.neighbors(u)
        pos = int(np.searchsorted(nbrs, v))
        if pos < nbrs.shape[0] and nbrs[pos] == v:
            return float(ws[pos])
        return 0.0

    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Undirected edges as (u, v, w) arrays with u < v, ordered by (u, v)."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        upper = rows < self.indices
        return rows[upper], self.indices[upper], self.weights[upper]

    def edges(self) -> Iterable[EdgeTriple]:
        us, vs, ws = self.edge_arrays()
        return zip(us.tolist(), vs.tolist(), ws.tolist())

    def label_of(self, node: int) -> str:
        return self.labels[node] if self.labels is not None else str(node)

    def validate_node(self, node: int) -> int:
        if not 0 <= int(node) < self.n:
            raise ValidationException(f"Unknown node id {node} (graph has {self.n} nodes)")
        return int(node)


@dataclass(frozen=True, eq=False)
class RankedAdjacency:
    """
    Per-node neighbor lists sorted by descending edge weight, ties by ascending id.

    ``w_q`` is the lightest weight kept by thresholding (0.0 for an empty graph).
    """

    indptr: np.ndarray
    neighbors: np.ndarray
    weights: np.ndarray
    threshold_q: float
    w_q: float

    @property
    def n(self) -> int:
        return int(self.indptr.shape[0] - 1)

    def row(self, node: int) -> Tuple[np.ndarray, np.ndarray]:
        start, end = self.indptr[node], self.indptr[node + 1]
        return self.neighbors[start:end], self.weights[start:end]

    def gather(self, nodes: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Rows of ``nodes`` back to back as (owner, neighbors, weights); see ``row_positions``."""
        owner, positions = row_positions(self.indptr, nodes)
        return owner, self.neighbors[positions], self.weights[positions]


def _from_canonical(
    n: int,
    us: np.ndarray,
    vs: np.ndarray,
    ws: np.ndarray,
    labels: Optional[Sequence[str]] = None,
    threshold_q: float = 1.0,
    base_edge_count: int = -1,
) -> WeightedGraph:
    """Assemble CSR arrays from deduplicated undirected edges with u < v."""
    rows = np.concatenate([us, vs]).astype(np.int64)
    cols = np.concatenate([vs, us]).astype(np.int64)
    vals = np.concatenate([ws, ws]).astype(np.float64)

    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]

    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    strengths = np.bincount(rows, weights=vals, minlength=n).astype(np.float64)

    return WeightedGraph(
        n=n,
        indptr=_frozen(indptr),
        indices=_frozen(cols),
        weights=_frozen(vals),
        strengths=_frozen(strengths),
        labels=tuple(labels) if labels is not None else None,
        threshold_q=threshold_q,
        base_edge_count=base_edge_count,
    )


def build_graph(
    edge_triples: Iterable[EdgeTriple],
    aggregate: bool = False,
    n: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
) -> WeightedGraph:
    """
    Build a validated, symmetric, deduplicated graph from (u, v, w) triples.

    Args:
        edge_triples: edges over node ids 0..n-1; each undirected pair once, in either orientation.
        aggregate: sum parallel edges instead of rejecting them.
        n: node count, for graphs with trailing isolated nodes. Defaults to max id + 1.
        labels: optional original node tokens by id.

    Returns:
        WeightedGraph: the assembled graph.

    Raises:
        ValidationException: negative or non-finite weight, self-loop, bad id, or a duplicate edge with aggregate=False.
    """
    triples = list(edge_triples)
    us = np.fromiter((int(t[0]) for t in triples), dtype=np.int64, count=len(triples))
    vs = np.fromiter((int(t[1]) for t in triples), dtype=np.int64, count=len(triples))
    ws = np.fromiter((float(t[2]) for t in triples), dtype=np.float64, count=len(triples))
    return build_graph_from_arrays(us, vs, ws, aggregate=aggregate, n=n, labels=labels)


def build_graph_from_arrays(
    us: np.ndarray,
    vs: np.ndarray,
    ws: np.ndarray,
    aggregate: bool = False,
    n: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
) -> WeightedGraph:
    """Array form of ``build_graph``; same validation."""
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    ws = np.asarray(ws, dtype=np.float64)
    if not us.shape == vs.shape == ws.shape:
        raise ValidationException("Edge arrays must have equal length")

    if n is None:
        n = int(max(us.max(initial=-1), vs.max(initial=-1)) + 1)
        if labels is not None:
            n = max(n, len(labels))
    if labels is not None and len(labels) != n:
        raise ValidationException(f"Got {len(labels)} labels for {n} nodes")

    if us.size and (min(us.min(), vs.min()) < 0 or max(us.max(), vs.max()) >= n):
        raise ValidationException(f"Node ids must lie in 0..{n - 1}")
    if not np.all(np.isfinite(ws)):
        raise ValidationException("Edge weights must be finite")
    negative = np.flatnonzero(ws < 0)
    if negative.size:
        i = int(negative[0])
        raise ValidationException(f"Negative weight {ws[i]} on edge ({us[i]}, {vs[i]})")
    loops = np.flatnonzero(us == vs)
    if loops.size:
        raise ValidationException(f"Self-loop on node {us[int(loops[0])]}")

    lo, hi = np.minimum(us, vs), np.maximum(us, vs)
    keys = lo * n + hi
    unique_keys, inverse = np.unique(keys, return_inverse=True)
    if unique_keys.shape[0] != keys.shape[0]:
        if not aggregate:
            dup = int(unique_keys[np.flatnonzero(np.bincount(inverse) > 1)[0]])
            raise ValidationException(f"Duplicate edge ({dup // n}, {dup % n})")
        ws = np.bincount(inverse, weights=ws)
    else:
        ws = ws[np.argsort(keys, kind="stable")]

    return _from_canonical(n, unique_keys // n, unique_keys % n, ws, labels)


def threshold_edges(g: WeightedGraph, q: float) -> WeightedGraph:
    """
    Keep the ceil(q * |E|) heaviest edges, |E| being the source graph's edge count.

    Ties at the cutoff are broken by ascending (u, v). The quantile always refers
    to the unthresholded source graph, so thresholding twice at the same q is a no-op.
    """
    if not 0 < q <= 1:
        raise ParamException(f"Threshold q must lie in (0, 1], got {q}")

    keep = min(math.ceil(round(q * g.base_edge_count, 9)), g.total_edge_count)
    if keep == g.total_edge_count:
        if q >= g.threshold_q:
            return g
        return _from_canonical(
            g.n, *g.edge_arrays(), labels=g.labels, threshold_q=q, base_edge_count=g.base_edge_count,
        )

    us, vs, ws = g.edge_arrays()
    order = np.lexsort((vs, us, -ws))[:keep]
    order.sort()
    return _from_canonical(
        g.n, us[order], vs[order], ws[order],
        labels=g.labels, threshold_q=min(q, g.threshold_q), base_edge_count=g.base_edge_count,
    )


def rank_neighbors(g: WeightedGraph) -> RankedAdjacency:
    """Arg-sort every adjacency row by descending weight, ties by ascending neighbor id."""
    rows = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    order = np.lexsort((g.indices, -g.weights, rows))
    w_q = float(g.weights.min()) if g.weights.size else 0.0
    return RankedAdjacency(
        indptr=g.indptr,
        neighbors=_frozen(g.indices[order]),
        weights=_frozen(g.weights[order]),
        threshold_q=g.threshold_q,
        w_q=w_q,
    )
