import numpy as np
import pytest
from scipy.stats import chisquare

from hsp.enums import Algorithm, InitMode, SearchMode, ShakeMode
from hsp.exceptions import ParamException
from hsp.models.graph import build_graph, rank_neighbors, threshold_edges
from hsp.models.solution import apply_swap, init_state, objective_of
from hsp.schemas.solver import Budget, SolverParams
from hsp.services.generator_service import generate_bbv, generate_gnp_weighted
from hsp.services.heuristics_service import (
    bvns,
    drop_heuristic,
    neighborhood_change,
    neighborhood_search,
    ovns,
    random_init,
    sample_preferential,
    solve,
)
from hsp.services.oracle_service import exact_hsp, local_opt_check
from hsp.utils.seeding import make_rng


def _assert_state_consistent(g, state, k):
    assert state.k == k
    assert len(set(state.members)) == k
    assert state.objective == pytest.approx(objective_of(g, state.members), rel=1e-9, abs=1e-9)
    np.testing.assert_allclose(state.gain, init_state(g, state.members).gain, rtol=1e-9, atol=1e-9)


# drop_heuristic

def test_drop_removes_least_contributing_node(path_abc):
    nodes = drop_heuristic(path_abc, 2)
    assert nodes == [1, 2]
    assert objective_of(path_abc, nodes) == 2.0


def test_drop_breaks_ties_by_lowest_id(star):
    nodes = drop_heuristic(star, 2)
    assert nodes == [0, 3]
    assert objective_of(star, nodes) == 1.0


@pytest.mark.parametrize("k", [0, 5])
def test_drop_rejects_bad_k(star, k):
    with pytest.raises(ParamException):
        drop_heuristic(star, k)


def test_drop_within_bound_of_optimum(make_graph):
    for seed in range(20):
        n = 14 + seed % 5
        g = make_graph(n, 0.5, seed=100 + seed, integer=False)
        k = n // 2
        f_drop = objective_of(g, drop_heuristic(g, k))
        f_star = exact_hsp(g, k).best_objective
        assert f_drop > 0
        assert f_star / f_drop <= 2.5


# random_init

def test_random_init_single_draw_is_valid(make_graph):
    g = make_graph(10, 0.5, seed=3)
    nodes = random_init(g, 4, 1, make_rng(0))
    assert len(set(nodes)) == 4
    assert all(0 <= node < 10 for node in nodes)


def test_random_init_replays_rng_stream(make_graph):
    g = make_graph(10, 0.5, seed=5, integer=False)
    nodes = random_init(g, 3, 10_000, make_rng(42))

    replay = make_rng(42)
    best = max(
        objective_of(g, replay.choice(g.n, size=3, replace=False).tolist())
        for _ in range(10_000)
    )
    assert objective_of(g, nodes) == pytest.approx(best, rel=1e-12)


def test_random_init_finds_optimum_on_tiny_instance(make_graph):
    g = make_graph(8, 0.6, seed=11, integer=False)
    nodes = random_init(g, 3, 2_000, make_rng(1))
    assert objective_of(g, nodes) == pytest.approx(exact_hsp(g, 3).best_objective)


def test_random_init_rejects_zero_draws(triangle):
    with pytest.raises(ParamException):
        random_init(triangle, 2, 0, make_rng(0))


# sample_preferential

def _strength_fixture():
    """Nodes 0..3 have strengths 1, 2, 3, 4 through hub 4."""
    return build_graph([(0, 4, 1.0), (1, 4, 2.0), (2, 4, 3.0), (3, 4, 4.0)])


def test_preferential_two_candidates():
    g = build_graph([(0, 2, 1.0), (1, 2, 3.0)])
    rng = make_rng(7)
    draws = np.array([sample_preferential(g, {2}, 1, rng)[0] for _ in range(20_000)])
    assert np.mean(draws == 1) == pytest.approx(0.75, abs=0.02)


def test_preferential_frequencies_follow_strengths():
    g = _strength_fixture()
    rng = make_rng(2023)
    draws = 100_000
    counts = np.bincount([sample_preferential(g, {4}, 1, rng)[0] for _ in range(draws)], minlength=4)
    expected = np.array([0.1, 0.2, 0.3, 0.4])
    sigma = np.sqrt(expected * (1 - expected) / draws)
    assert np.all(np.abs(counts / draws - expected) <= 3 * sigma)
    assert chisquare(counts, expected * draws).pvalue > 0.001


def test_preferential_without_replacement():
    g = _strength_fixture()
    rng = make_rng(3)
    for _ in range(200):
        nodes = sample_preferential(g, {4}, 3, rng)
        assert len(set(nodes)) == 3
        assert 4 not in nodes


def test_preferential_zero_strength_is_uniform():
    g = build_graph([], n=5)
    rng = make_rng(5)
    counts = np.bincount([sample_preferential(g, {0}, 1, rng)[0] for _ in range(8_000)], minlength=5)
    assert counts[0] == 0
    assert chisquare(counts[1:]).pvalue > 0.001
    assert sorted(sample_preferential(g, {0}, 4, rng)) == [1, 2, 3, 4]


def test_preferential_falls_back_after_positive_candidates():
    g = build_graph([(0, 1, 1.0)], n=4)
    nodes = sample_preferential(g, {0}, 2, make_rng(0))
    assert nodes[0] == 1
    assert nodes[1] in (2, 3)


def test_preferential_rejects_large_p(triangle):
    with pytest.raises(ParamException):
        sample_preferential(triangle, {0}, 3, make_rng(0))


# neighborhood_change

@pytest.mark.parametrize("shake_mode", list(ShakeMode))
def test_change_with_p_equal_k_replaces_everything(make_graph, shake_mode):
    g = make_graph(10, 0.5, seed=2)
    state = init_state(g, [0, 1, 2, 3, 4])
    shaken = neighborhood_change(g, state, 5, shake_mode, make_rng(0))
    assert shaken.member_set() == {5, 6, 7, 8, 9}
    assert state.member_set() == {0, 1, 2, 3, 4}
    _assert_state_consistent(g, shaken, 5)


@pytest.mark.parametrize("shake_mode", list(ShakeMode))
def test_change_with_p_one_swaps_one_member(make_graph, shake_mode):
    g = make_graph(20, 0.3, seed=8)
    state = init_state(g, list(range(6)))
    for seed in range(30):
        shaken = neighborhood_change(g, state, 1, shake_mode, make_rng(seed))
        assert len(shaken.member_set() - state.member_set()) == 1
        _assert_state_consistent(g, shaken, 6)


def test_change_rejects_bad_p(make_graph):
    g = make_graph(10, 0.5, seed=2)
    state = init_state(g, [0, 1, 2])
    for p in (0, 4):
        with pytest.raises(ParamException):
            neighborhood_change(g, state, p, ShakeMode.UNIFORM, make_rng(0))


# neighborhood_search

def test_search_leaves_local_optimum_unchanged(triangle):
    state = init_state(triangle, [0, 1])
    result = neighborhood_search(triangle, rank_neighbors(triangle), state, SearchMode.FIRST)
    assert result.members == [0, 1]
    assert result.objective == 1.0


@pytest.mark.parametrize("search_mode", list(SearchMode))
def test_search_moves_pendant_into_triangle(search_mode):
    g = build_graph([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (0, 3, 1.0)])
    state = init_state(g, [3, 1])
    result = neighborhood_search(g, rank_neighbors(g), state, search_mode)
    assert result.objective == 1.0
    assert result.member_set() <= {0, 1, 2}


@pytest.mark.parametrize("search_mode", list(SearchMode))
def test_search_output_is_locally_optimal(make_graph, search_mode):
    rng = make_rng(99)
    for seed in range(50):
        g = make_graph(30, 0.15, seed=seed, integer=seed % 2 == 0)
        k = int(rng.integers(3, 15))
        state = init_state(g, rng.choice(g.n, size=k, replace=False).tolist())
        before = state.objective
        result = neighborhood_search(g, rank_neighbors(g), state, search_mode)
        assert result.objective >= before
        _assert_state_consistent(g, result, k)
        assert local_opt_check(g, result.members).is_local_optimum


def test_search_on_thresholded_ranking_uses_full_graph_gains(make_graph):
    g = make_graph(30, 0.3, seed=17, integer=False)
    ranked = rank_neighbors(threshold_edges(g, 0.2))
    state = init_state(g, list(range(8)))
    result = neighborhood_search(g, ranked, state, SearchMode.FIRST)
    _assert_state_consistent(g, result, 8)


def _row_by_row_search(g, ranked, state, search_mode):
    """Member by member, rank by rank; restarts from the first member after every swap."""
    while True:
        move, best = None, 0.0
        tol = 1e-12 * max(1.0, abs(state.objective))
        for u in list(state.members):
            nbrs, ws = ranked.row(u)
            for v, w in zip(nbrs.tolist(), ws.tolist()):
                if state.in_h[v]:
                    continue
                delta = state.gain[v] - state.gain[u] - w
                if delta > tol and (move is None or delta > best):
                    move, best = (u, v), delta
                    if search_mode == SearchMode.FIRST:
                        break
            if move is not None and search_mode == SearchMode.FIRST:
                break
        if move is None:
            return state
        apply_swap(state, g, *move)


@pytest.mark.parametrize("search_mode", list(SearchMode))
def test_search_matches_row_by_row_scan(make_graph, search_mode):
    rng = make_rng(4)
    for seed in range(25):
        g = make_graph(40, 0.12, seed=seed, integer=seed % 3 == 0)
        ranked = rank_neighbors(threshold_edges(g, 0.6) if seed % 2 else g)
        k = int(rng.integers(3, 16))
        start = rng.choice(g.n, size=k, replace=False).tolist()
        fast = neighborhood_search(g, ranked, init_state(g, start), search_mode)
        slow = _row_by_row_search(g, ranked, init_state(g, start), search_mode)
        assert fast.members == slow.members
        assert fast.objective == pytest.approx(slow.objective)


# drivers

def test_ovns_p_step_preset():
    assert SolverParams.for_algorithm(Algorithm.OVNS, 1000).p_step == 100
    assert SolverParams.for_algorithm(Algorithm.OVNS, 7).p_step == 1
    assert SolverParams.for_algorithm(Algorithm.BVNS, 1000).p_step == 1


def test_ovns_zero_budget_returns_drop_solution(make_graph):
    g = make_graph(20, 0.3, seed=6)
    params = SolverParams.for_algorithm(Algorithm.OVNS, 6)
    result = ovns(g, params, Budget(max_iterations=0))
    assert result.best_set == drop_heuristic(g, 6)
    assert result.iterations == 0
    assert result.best_objective == result.initial_objective


def test_bvns_zero_budget_returns_random_init(make_graph):
    g = make_graph(20, 0.3, seed=6)
    params = SolverParams.for_algorithm(Algorithm.BVNS, 6, seed=13, init_draws=50)
    result = bvns(g, params, Budget(max_iterations=0), make_rng(13))
    assert result.best_set == random_init(g, 6, 50, make_rng(13))
    assert [(it, value) for it, value, _ in result.trace] == [(0, result.best_objective)]


def test_zero_wall_time_stops_before_first_cycle(make_graph):
    g = make_graph(20, 0.3, seed=6)
    result = solve(g, SolverParams.for_algorithm(Algorithm.OVNS, 5), Budget(max_wall_time=0.0))
    assert result.iterations == 0


@pytest.mark.parametrize("algorithm", list(Algorithm))
def test_run_trace_and_objective(make_graph, algorithm):
    g = make_graph(40, 0.2, seed=21, integer=False)
    params = SolverParams.for_algorithm(algorithm, 8, seed=3, init_draws=20)
    result = solve(g, params, Budget(max_iterations=300))
    values = [value for _, value, _ in result.trace]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert [it for it, _, _ in result.trace] == sorted(it for it, _, _ in result.trace)
    elapsed = [seconds for _, _, seconds in result.trace]
    assert elapsed == sorted(elapsed)
    assert result.time_to_best == elapsed[-1] <= result.wall_time
    assert result.best_objective >= result.initial_objective
    assert result.best_objective == objective_of(g, result.best_set)
    assert result.best_objective == pytest.approx(values[-1])
    assert result.iterations == 300
    assert len(result.best_set) == 8


@pytest.mark.parametrize("algorithm", list(Algorithm))
def test_runs_are_deterministic(make_graph, algorithm):
    g = make_graph(40, 0.2, seed=33)
    params = SolverParams.for_algorithm(algorithm, 10, seed=7, init_draws=30)
    first = solve(g, params, Budget(max_iterations=200))
    second = solve(g, params, Budget(max_iterations=200))
    assert first.best_set == second.best_set
    assert first.best_objective == second.best_objective
    assert [event[:2] for event in first.trace] == [event[:2] for event in second.trace]


def test_ovns_with_threshold_and_random_init(make_graph):
    g = make_graph(40, 0.3, seed=12, integer=False)
    params = SolverParams.for_algorithm(
        Algorithm.OVNS, 6, q=0.3, init_mode=InitMode.RANDOM, init_draws=10, search_mode=SearchMode.BEST,
    )
    result = ovns(g, params, Budget(max_iterations=100))
    assert result.best_objective == objective_of(g, result.best_set)
    assert result.params.q == 0.3


@pytest.mark.parametrize("algorithm", list(Algorithm))
def test_k_equal_n_returns_all_nodes(triangle, algorithm):
    result = solve(triangle, SolverParams.for_algorithm(algorithm, 3, init_draws=1), Budget(max_iterations=50))
    assert result.best_set == [0, 1, 2]
    assert result.best_objective == 3.0
    assert result.iterations == 0


def test_schedule_errors(make_graph):
    g = make_graph(10, 0.5, seed=1)
    with pytest.raises(ParamException):
        solve(g, SolverParams.for_algorithm(Algorithm.OVNS, 11), Budget(max_iterations=1))
    with pytest.raises(ParamException):
        solve(g, SolverParams.for_algorithm(Algorithm.OVNS, 4, p_max=5), Budget(max_iterations=1))
    with pytest.raises(ParamException):
        solve(g, SolverParams.for_algorithm(Algorithm.OVNS, 4, p_min=3, p_max=2), Budget(max_iterations=1))
    with pytest.raises(ParamException):
        solve(g, SolverParams.for_algorithm(Algorithm.BVNS, 4, p_step=4), Budget(max_iterations=1))


def test_budget_needs_a_limit():
    with pytest.raises(ValueError):
        Budget()


@pytest.mark.slow
def test_drivers_match_exact_optimum_on_small_instances():
    hits = {Algorithm.OVNS: 0, Algorithm.BVNS: 0}
    rng = make_rng(5)
    for index in range(40):
        n = int(rng.integers(12, 19))
        k = int(rng.integers(4, n // 2 + 1))
        if index % 2 == 0:
            g = generate_gnp_weighted(n, 0.4, seed=index)
        else:
            g = generate_bbv(n, m=2, seed=index)
        optimum = exact_hsp(g, k).best_objective
        for algorithm in hits:
            params = SolverParams.for_algorithm(algorithm, k, seed=index)
            result = solve(g, params, Budget(max_iterations=5_000))
            if result.best_objective >= optimum * (1 - 1e-9):
                hits[algorithm] += 1
    assert hits[Algorithm.OVNS] >= 38
    assert hits[Algorithm.BVNS] >= 36


@pytest.mark.slow
def test_cycles_stay_fast_on_large_bbv_instance():
    g = generate_bbv(2000, m=2, seed=0)
    for algorithm in Algorithm:
        params = SolverParams.for_algorithm(algorithm, 100, seed=1)
        result = solve(g, params, Budget(max_iterations=1_000))
        assert result.iterations == 1_000
        assert result.wall_time < 10.0
