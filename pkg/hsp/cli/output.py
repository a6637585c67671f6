from typing import Sequence

import click

from ..models.graph import WeightedGraph


def echo_result(g: WeightedGraph, objective: float, members: Sequence[int]) -> None:
    click.echo(f"objective: {objective!r}")
    click.echo("members: " + " ".join(g.label_of(node) for node in members))
