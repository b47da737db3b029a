# oracles/greedy.py
from typing import Sequence

import numpy as np

from core.errors import GraphError
from network.model import Edge, Graph, Matching, normalize_edge


def greedy_matching(graph: Graph, order: int | Sequence[Sequence[int]]) -> Matching:
    """
    Process edges in order and keep each one disjoint from those kept so far.

    Args:
        order: a seed (edges are shuffled with numpy's default generator) or
            an explicit sequence of the graph's edges

    Raises:
        GraphError: an explicit order names a non-edge
    """
    if isinstance(order, (int, np.integer)):
        edges = list(graph.edges)
        perm = np.random.default_rng(int(order)).permutation(len(edges))
        sequence: list[Edge] = [edges[i] for i in perm]
    else:
        sequence = [normalize_edge(int(e[0]), int(e[1])) for e in order]
        for u, v in sequence:
            if not graph.has_edge(u, v):
                raise GraphError(f"({u}, {v}) in the order is not an edge")

    used: set[int] = set()
    kept = []
    for u, v in sequence:
        if u in used or v in used:
            continue
        kept.append((u, v))
        used.update((u, v))
    return Matching.of(kept)
