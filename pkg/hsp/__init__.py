"""Heaviest k-subgraph toolkit: OVNS and BVNS solvers, exact oracle, instance generators and benchmarks."""

__version__ = "1.0.0"
