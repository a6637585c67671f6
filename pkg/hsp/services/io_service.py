"""Instance parsing and result serialization."""
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

import pandas as pd

from ..enums import InstanceFormat, RunStatus
from ..exceptions import ParseException, StorageException, ValidationException
from ..models.graph import WeightedGraph, build_graph
from ..schemas.bench import BenchReport, RunRecord
from ..schemas.solver import RunResult


logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

BENCH_CSV_COLUMNS = ["instance", "algorithm", "k", "seed", "objective", "deviation_pct", "rank", "iterations", "wall_ms"]
MATRIX_SUFFIXES = {".mat", ".mdp", ".matrix"}
NODE_COUNT_HEADER = re.compile(r"\s*n=(\d+)\b")


@dataclass(frozen=True)
class InstanceFile:
    path: Path
    format: InstanceFormat
    graph: WeightedGraph
    k: Optional[int] = None    # declared by matrix files


def _read_lines(path: PathLike, header: Optional[Dict[str, int]] = None) -> Iterator[Tuple[int, List[str]]]:
    """
    Yield (line number, tokens) for every non-blank line, comments stripped.

    When ``header`` is given, a comment-only ``# n=<count>`` line stores its count and line number there.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                text, _, comment = line.partition("#")
                tokens = text.split()
                if tokens:
                    yield number, tokens
                elif header is not None and (match := NODE_COUNT_HEADER.match(comment)):
                    header.update(n=int(match.group(1)), line=number)
    except OSError as e:
        raise StorageException(f"{path}: {e}") from e


def _parse_weight(token: str, path: PathLike, number: int) -> float:
    try:
        weight = float(token)
    except ValueError:
        raise ParseException(f"invalid weight {token!r}", str(path), number) from None
    if weight != weight or weight in (float("inf"), float("-inf")):
        raise ParseException(f"weight must be finite, got {token!r}", str(path), number)
    if weight < 0:
        raise ValidationException(f"{path}:{number}: negative weight {weight}")
    return weight


def _format_weight(weight: float) -> str:
    return repr(float(weight))


def read_edgelist(path: PathLike) -> WeightedGraph:
    """
    Parse a ``u v w`` edge list.

    Node tokens are relabeled 0..n-1 in order of first appearance and kept as graph labels.
    Repeated pairs, in either orientation, are summed. Zero-weight lines register their
    nodes but add no edge. A ``# n=<count>`` header adds trailing isolated nodes, labeled
    by their id, up to that count.

    Raises:
        ParseException: a line without exactly three tokens, a bad weight, or a header
            declaring fewer nodes than the file names.
        ValidationException: a negative weight or a self-loop.
    """
    ids: Dict[str, int] = {}
    header: Dict[str, int] = {}
    triples = []
    for number, tokens in _read_lines(path, header):
        if len(tokens) != 3:
            raise ParseException(f"expected 'u v w', got {len(tokens)} fields", str(path), number)
        u_token, v_token, w_token = tokens
        weight = _parse_weight(w_token, path, number)
        if u_token == v_token:
            raise ValidationException(f"{path}:{number}: self-loop on {u_token}")
        u = ids.setdefault(u_token, len(ids))
        v = ids.setdefault(v_token, len(ids))
        if weight > 0:
            triples.append((u, v, weight))

    labels = list(ids)
    if header:
        if header["n"] < len(labels):
            raise ParseException(
                f"header declares n={header['n']} but {len(labels)} nodes are listed", str(path), header["line"],
            )
        for node in range(len(labels), header["n"]):
            label = str(node)
            if label in ids:
                raise ParseException(f"cannot label isolated node {node}: {label!r} is taken", str(path), header["line"])
            labels.append(label)

    graph = build_graph(triples, aggregate=True, n=len(labels), labels=labels)
    logger.info("read %s: n=%d |E|=%d", path, graph.n, graph.total_edge_count)
    return graph


def write_edgelist(g: WeightedGraph, path: PathLike) -> None:
    """
    Write ``g`` as an edge list using its labels, under a ``# n=<count>`` header.

    Isolated nodes are written as a zero-weight line to another node so their labels survive.

    Raises:
        ValidationException: a label that is empty or holds whitespace or ``#``.
    """
    for node in range(g.n):
        label = g.label_of(node)
        if label.split() != [label] or "#" in label:
            raise ValidationException(f"Node label {label!r} cannot be written to an edge list")
    lines = [f"# n={g.n} m={g.total_edge_count}"]
    for u, v, w in g.edges():
        lines.append(f"{g.label_of(u)} {g.label_of(v)} {_format_weight(w)}")
    if g.n > 1:
        for node in (int(x) for x in (g.degrees == 0).nonzero()[0]):
            partner = 1 if node == 0 else 0
            lines.append(f"{g.label_of(node)} {g.label_of(partner)} 0.0")
    _write_text(path, "\n".join(lines) + "\n")


def read_matrix(path: PathLike) -> Tuple[WeightedGraph, int]:
    """
    Parse a matrix instance: header ``n k`` then ``i j w`` lines with 0 <= i < j < n.

    Pairs that are not listed, and zero-weight pairs, are absent edges.

    Raises:
        ParseException: bad header, bad pair, or a pair listed twice.
        ValidationException: a negative weight.
    """
    lines = _read_lines(path)
    try:
        number, header = next(lines)
    except StopIteration:
        raise ParseException("missing 'n k' header", str(path)) from None
    try:
        n, k = (int(token) for token in header)
    except ValueError:
        raise ParseException(f"expected header 'n k', got {' '.join(header)!r}", str(path), number) from None
    if n < 0 or not 0 <= k <= n:
        raise ParseException(f"invalid header n={n} k={k}", str(path), number)

    seen = set()
    triples = []
    for number, tokens in lines:
        if len(tokens) != 3:
            raise ParseException(f"expected 'i j w', got {len(tokens)} fields", str(path), number)
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseException(f"node ids must be integers, got {tokens[0]!r} {tokens[1]!r}", str(path), number) from None
        if not 0 <= i < j < n:
            raise ParseException(f"pair ({i}, {j}) violates 0 <= i < j < {n}", str(path), number)
        if (i, j) in seen:
            raise ParseException(f"pair ({i}, {j}) listed twice", str(path), number)
        seen.add((i, j))
        weight = _parse_weight(tokens[2], path, number)
        if weight > 0:
            triples.append((i, j, weight))

    return build_graph(triples, n=n), k


def write_matrix(g: WeightedGraph, k: int, path: PathLike) -> None:
    lines = [f"{g.n} {k}"]
    lines.extend(f"{u} {v} {_format_weight(w)}" for u, v, w in g.edges())
    _write_text(path, "\n".join(lines) + "\n")


def detect_format(path: PathLike) -> InstanceFormat:
    return InstanceFormat.MATRIX if Path(path).suffix.lower() in MATRIX_SUFFIXES else InstanceFormat.EDGELIST


def load_instance(path: PathLike, format: Optional[InstanceFormat] = None) -> InstanceFile:
    """Read an instance in the given format, or the one implied by its suffix."""
    format = InstanceFormat(format) if format is not None else detect_format(path)
    if format == InstanceFormat.MATRIX:
        graph, k = read_matrix(path)
        return InstanceFile(path=Path(path), format=format, graph=graph, k=k)
    return InstanceFile(path=Path(path), format=format, graph=read_edgelist(path))


def write_run_record(result: RunResult, meta: Dict[str, Any]) -> str:
    """
    Serialize a run as one JSON document.

    ``meta`` supplies ``instance`` and optionally ``algorithm`` (defaults to the algorithm value).
    """
    record = RunRecord(
        instance=meta["instance"],
        algorithm=meta.get("algorithm", result.algorithm.value),
        params=result.params,
        seed=result.seed,
        k=result.k,
        status=RunStatus.OK,
        best_objective=result.best_objective,
        best_set=result.best_set,
        iterations=result.iterations,
        wall_time=result.wall_time,
        time_to_best=result.time_to_best,
        trace=result.trace,
    )
    return record.model_dump_json()


def append_run_records(path: PathLike, records: Iterable[RunRecord]) -> None:
    try:
        with open(path, "a", encoding="utf-8") as handle:
            for record in records:
                handle.write(record.model_dump_json() + "\n")
    except OSError as e:
        raise StorageException(f"{path}: {e}") from e


def read_run_records(path: PathLike) -> List[RunRecord]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return [RunRecord.model_validate_json(line) for line in handle if line.strip()]
    except OSError as e:
        raise StorageException(f"{path}: {e}") from e


def bench_frame(report: BenchReport) -> pd.DataFrame:
    """Per-run rows followed by one mean and one median row per algorithm."""
    records = [
        {
            "instance": row.instance,
            "algorithm": row.algorithm,
            "k": row.k,
            "seed": row.seed,
            "objective": row.objective,
            "deviation_pct": row.deviation_pct,
            "rank": row.rank,
            "iterations": row.iterations,
            "wall_ms": row.wall_ms,
        }
        for row in report.rows
    ]
    for agg in report.aggregates:
        records.append({
            "instance": "ALL:mean", "algorithm": agg.algorithm,
            "objective": agg.mean_objective, "deviation_pct": agg.mean_deviation, "rank": agg.mean_rank,
        })
        records.append({
            "instance": "ALL:median", "algorithm": agg.algorithm,
            "deviation_pct": agg.median_deviation, "rank": agg.median_rank,
        })
    frame = pd.DataFrame.from_records(records, columns=BENCH_CSV_COLUMNS)
    return frame.astype({"k": "Int64", "seed": "Int64", "iterations": "Int64"})


def write_bench_csv(report: BenchReport, path: Optional[PathLike] = None) -> str:
    """Render the bench summary CSV; also write it to ``path`` when given."""
    text = bench_frame(report).to_csv(index=False, lineterminator="\n")
    if path is not None:
        _write_text(path, text)
    return text


def _write_text(path: PathLike, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise StorageException(f"{path}: {e}") from e
