# network/enumeration.py
"""
Exhaustive enumeration of small connected graphs up to isomorphism.

Every connected graph on n >= 2 vertices has a non-cut vertex, so the graphs
on n vertices are exactly the connected graphs on n - 1 vertices with one
new vertex joined to a non-empty neighbor set. Candidates are bucketed by
Weisfeiler-Lehman hash and only compared with networkx's exact isomorphism
test inside a bucket.
"""

import itertools
import logging
from typing import Iterator

import networkx as nx

from core.errors import GuardExceededError
from network.model import Graph

logger = logging.getLogger(__name__)

MAX_ENUMERATION_NODES = 7


def _augment(graph: nx.Graph) -> Iterator[nx.Graph]:
    n = graph.number_of_nodes()
    for size in range(1, n + 1):
        for neighborhood in itertools.combinations(range(n), size):
            grown = graph.copy()
            grown.add_node(n)
            grown.add_edges_from((n, u) for u in neighborhood)
            yield grown


def connected_graphs(n: int, limit: int = MAX_ENUMERATION_NODES) -> list[Graph]:
    """
    All connected graphs on exactly n vertices, one per isomorphism class.

    Raises:
        GuardExceededError: n above `limit`
    """
    if n > limit:
        raise GuardExceededError("connected_graphs", n, limit)
    if n < 1:
        return []

    layer = [nx.empty_graph(1)]
    for size in range(2, n + 1):
        buckets: dict[str, list[nx.Graph]] = {}
        for base in layer:
            for candidate in _augment(base):
                key = nx.weisfeiler_lehman_graph_hash(candidate, iterations=3)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(candidate, kept) for kept in bucket):
                    bucket.append(candidate)
        layer = [g for bucket in buckets.values() for g in bucket]
        logger.debug("connected graphs on %d vertices: %d", size, len(layer))

    graphs = [Graph.from_networkx(g) for g in layer]
    graphs.sort(key=lambda g: (g.m, g.edges))
    return graphs


def connected_graphs_upto(max_n: int, min_n: int = 1,
                          limit: int = MAX_ENUMERATION_NODES) -> Iterator[Graph]:
    """Yield connected graphs for every size in [min_n, max_n]."""
    if max_n > limit:
        raise GuardExceededError("connected_graphs", max_n, limit)
    for n in range(max(1, min_n), max_n + 1):
        yield from connected_graphs(n, limit)
