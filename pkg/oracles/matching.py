# oracles/matching.py
"""Exact maximum matching size by memoized search over free-vertex bitmasks."""

from functools import lru_cache

from core.errors import GuardExceededError
from network.model import Graph

MAX_MATCHING_NODES = 16


def neighbor_masks(graph: Graph) -> list[int]:
    masks = []
    for row in graph.adjacency:
        mask = 0
        for u in row:
            mask |= 1 << u
        masks.append(mask)
    return masks


def maximum_matching_size(graph: Graph, limit: int = MAX_MATCHING_NODES) -> int:
    """
    Raises:
        GuardExceededError: n above `limit`
    """
    if graph.n > limit:
        raise GuardExceededError("maximum_matching_size", graph.n, limit)
    adj = neighbor_masks(graph)

    @lru_cache(maxsize=None)
    def best(free: int) -> int:
        if free == 0:
            return 0
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        result = best(rest)
        options = adj[v] & rest
        while options:
            low = options & -options
            result = max(result, 1 + best(rest & ~low))
            options ^= low
        return result

    return best((1 << graph.n) - 1)
