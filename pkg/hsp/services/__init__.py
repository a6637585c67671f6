from .bench_service import BenchService, run_bench
from .heuristics_service import bvns, ovns, solve
from .oracle_service import exact_hsp, local_opt_check
