import io
import json

import numpy as np
import pandas as pd
import pytest

from hsp.enums import Algorithm, InstanceFormat, RunStatus
from hsp.exceptions import ParseException, StorageException, ValidationException
from hsp.models.graph import build_graph
from hsp.models.solution import objective_of
from hsp.schemas.bench import RunRecord
from hsp.schemas.solver import Budget, SolverParams
from hsp.services.generator_service import generate_gnp_weighted, generate_mdp_gaussian
from hsp.services.heuristics_service import solve
from hsp.services.io_service import (
    BENCH_CSV_COLUMNS,
    append_run_records,
    load_instance,
    read_edgelist,
    read_matrix,
    read_run_records,
    write_bench_csv,
    write_edgelist,
    write_matrix,
    write_run_record,
)


def _labelled_edges(g):
    return {frozenset((g.label_of(u), g.label_of(v))): w for u, v, w in g.edges()}


# edge lists

def test_read_single_edge(write_file):
    g = read_edgelist(write_file("one.edges", "a b 1.5\n"))
    assert g.n == 2
    assert list(g.edges()) == [(0, 1, 1.5)]
    assert g.labels == ("a", "b")


def test_read_aggregates_both_orientations(write_file):
    g = read_edgelist(write_file("agg.edges", "a b 1\nb a 2\n"))
    assert g.total_edge_count == 1
    assert g.edge_weight(0, 1) == 3.0


def test_read_skips_comments_and_blank_lines(write_file):
    text = "# header\n\nx y 2  # trailing\n   \ny z 0.5\n"
    g = read_edgelist(write_file("c.edges", text))
    assert g.labels == ("x", "y", "z")
    assert g.total_weight == 2.5


def test_zero_weight_line_registers_nodes_only(write_file):
    g = read_edgelist(write_file("z.edges", "a b 1\nc d 0\n"))
    assert g.n == 4
    assert g.total_edge_count == 1


@pytest.mark.parametrize("text,line", [
    ("a b 1\na b\n", 2),
    ("a b c\n", 1),
    ("a b 1 2\n", 1),
    ("a b nan\n", 1),
])
def test_read_reports_malformed_line(write_file, text, line):
    path = write_file("bad.edges", text)
    with pytest.raises(ParseException) as info:
        read_edgelist(path)
    assert info.value.line_number == line
    assert f"{path}:{line}:" in str(info.value)


@pytest.mark.parametrize("text", ["a b -1\n", "a a 1\n"])
def test_read_rejects_invalid_edges(write_file, text):
    with pytest.raises(ValidationException):
        read_edgelist(write_file("neg.edges", text))


def test_read_missing_file(tmp_path):
    with pytest.raises(StorageException):
        read_edgelist(tmp_path / "missing.edges")


@pytest.mark.parametrize("seed", range(5))
def test_edgelist_round_trip(tmp_path, seed):
    g = generate_gnp_weighted(25, 0.08, seed=seed)
    path = tmp_path / "g.edges"
    write_edgelist(g, path)
    back = read_edgelist(path)
    assert back.n == g.n
    assert _labelled_edges(back) == _labelled_edges(g)


def test_edgelist_round_trip_keeps_labels(tmp_path, write_file):
    g = read_edgelist(write_file("src.edges", "alpha beta 0.1\nbeta gamma 2.25\ndelta alpha 0\n"))
    path = tmp_path / "copy.edges"
    write_edgelist(g, path)
    back = read_edgelist(path)
    assert back.n == 4
    assert _labelled_edges(back) == _labelled_edges(g)


@pytest.mark.parametrize("n", [0, 1])
def test_edgelist_round_trip_without_edges(tmp_path, n):
    g = build_graph([], n=n)
    path = tmp_path / "tiny.edges"
    write_edgelist(g, path)
    back = read_edgelist(path)
    assert back.n == n
    assert back.total_edge_count == 0


def test_node_count_header_adds_trailing_isolated_nodes(write_file):
    g = read_edgelist(write_file("h.edges", "# n=5 m=1\na b 2\n"))
    assert g.n == 5
    assert g.labels == ("a", "b", "2", "3", "4")
    assert g.total_weight == 2.0


@pytest.mark.parametrize("text", ["# n=1\na b 1\n", "# n=3\n1 2 1\n"])
def test_node_count_header_conflicts(write_file, text):
    with pytest.raises(ParseException) as info:
        read_edgelist(write_file("h.edges", text))
    assert info.value.line_number == 1


@pytest.mark.parametrize("label", ["two words", "tab\tbed", "", "a#b"])
def test_write_rejects_unwritable_labels(tmp_path, label):
    g = build_graph([(0, 1, 1.0)], labels=["ok", label])
    with pytest.raises(ValidationException):
        write_edgelist(g, tmp_path / "bad.edges")
    assert not (tmp_path / "bad.edges").exists()


# matrix files

def test_read_matrix_triangle(write_file):
    g, k = read_matrix(write_file("tri.mat", "3 2\n0 1 1\n0 2 1\n1 2 1\n"))
    assert k == 2
    assert g.n == 3
    assert g.total_weight == 3.0


def test_read_matrix_header_only(write_file):
    g, k = read_matrix(write_file("empty.mat", "4 2\n"))
    assert (g.n, g.total_edge_count, k) == (4, 0, 2)


@pytest.mark.parametrize("text", [
    "",
    "3\n",
    "3 4\n",
    "3 2\n0 1 1\n0 1 2\n",
    "3 2\n1 0 1\n",
    "3 2\n0 3 1\n",
    "3 2\n0 1\n",
])
def test_read_matrix_rejects_malformed(write_file, text):
    with pytest.raises(ParseException):
        read_matrix(write_file("bad.mat", text))


def test_matrix_objective_matches_dense_sum(tmp_path):
    g = generate_mdp_gaussian(9, seed=4)
    path = tmp_path / "mdg.mat"
    write_matrix(g, 4, path)

    lines = path.read_text().splitlines()
    n, k = map(int, lines[0].split())
    dense = np.zeros((n, n))
    for line in lines[1:]:
        i, j, w = line.split()
        dense[int(i), int(j)] = dense[int(j), int(i)] = float(w)

    back, declared = read_matrix(path)
    assert declared == 4
    for subset in ([0, 1, 2, 3], [2, 5, 7, 8], [0, 8, 4, 6]):
        expected = dense[np.ix_(subset, subset)].sum() / 2
        assert objective_of(back, subset) == pytest.approx(expected, rel=1e-12)


def test_load_instance_by_suffix(write_file):
    matrix = load_instance(write_file("t.mdp", "2 1\n0 1 4\n"))
    assert matrix.format == InstanceFormat.MATRIX
    assert matrix.k == 1
    edges = load_instance(write_file("t.txt", "u v 4\n"))
    assert edges.format == InstanceFormat.EDGELIST
    assert edges.k is None
    forced = load_instance(write_file("t.dat", "2 1\n0 1 4\n"), InstanceFormat.MATRIX)
    assert forced.graph.total_weight == 4.0


# run records and CSV

def test_run_record_round_trip(triangle):
    params = SolverParams.for_algorithm(Algorithm.OVNS, 2, seed=5)
    result = solve(triangle, params, Budget(max_iterations=5))
    text = write_run_record(result, {"instance": "tri"})
    document = json.loads(text)
    for key in ("instance", "algorithm", "params", "seed", "k", "best_objective", "best_set",
                "iterations", "wall_time", "trace"):
        assert key in document
    record = RunRecord.model_validate_json(text)
    assert record.instance == "tri"
    assert record.algorithm == "ovns"
    assert record.params == params
    assert record.best_set == result.best_set
    assert record.trace == result.trace
    assert record.status == RunStatus.OK


def test_run_log_append_and_read(tmp_path):
    path = tmp_path / "runs.jsonl"
    first = RunRecord(instance="a", algorithm="x", seed=1, k=2, best_objective=3.0, best_set=[0, 1])
    second = RunRecord(instance="a", algorithm="x", seed=2, k=2, status=RunStatus.FAILED, error="boom")
    append_run_records(path, [first])
    append_run_records(path, [second])
    assert read_run_records(path) == [first, second]


def test_bench_csv_layout(bench_report):
    text = write_bench_csv(bench_report)
    assert text.splitlines()[0] == ",".join(BENCH_CSV_COLUMNS)
    assert text.splitlines()[0] == "instance,algorithm,k,seed,objective,deviation_pct,rank,iterations,wall_ms"

    frame = pd.read_csv(io.StringIO(text))
    runs = frame[~frame["instance"].str.startswith("ALL:")]
    assert len(runs) == len(bench_report.rows)
    for _, pool in runs.groupby(["instance", "k"]):
        assert pool["deviation_pct"].min() == 0.0


def test_bench_csv_aggregates_recomputable(bench_report, tmp_path):
    path = tmp_path / "bench.csv"
    write_bench_csv(bench_report, path)
    frame = pd.read_csv(path)
    runs = frame[~frame["instance"].str.startswith("ALL:")]
    for algorithm, group in runs.groupby("algorithm"):
        mean_row = frame[(frame["instance"] == "ALL:mean") & (frame["algorithm"] == algorithm)].iloc[0]
        median_row = frame[(frame["instance"] == "ALL:median") & (frame["algorithm"] == algorithm)].iloc[0]
        assert mean_row["deviation_pct"] == pytest.approx(np.mean(group["deviation_pct"]))
        assert mean_row["rank"] == pytest.approx(np.mean(group["rank"]))
        assert median_row["deviation_pct"] == pytest.approx(np.median(group["deviation_pct"]))
        assert median_row["rank"] == pytest.approx(np.median(group["rank"]))


def test_write_to_missing_directory(tmp_path, triangle):
    with pytest.raises(StorageException):
        write_edgelist(triangle, tmp_path / "nope" / "g.edges")
