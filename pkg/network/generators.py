# network/generators.py
"""
Deterministic test-topology generators.

Every family is addressed by a spec string `family:arg1,arg2` so the CLI,
the sweep grid and the tests all name graphs the same way.
"""

import logging
from dataclasses import dataclass

import networkx as nx

from core.errors import GraphError
from network.model import Graph

logger = logging.getLogger(__name__)

FAMILIES = (
    "erdos_renyi",
    "grid",
    "star",
    "path",
    "complete",
    "cliques_joined_by_star",
)


@dataclass(frozen=True)
class GraphFamily:
    name: str
    params: tuple[float, ...]

    def label(self) -> str:
        args = ",".join(_format_param(p) for p in self.params)
        return f"{self.name}:{args}"


def _format_param(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def _require_int(name: str, value: float, minimum: int) -> int:
    if not float(value).is_integer() or value < minimum:
        raise GraphError(f"{name} must be an integer >= {minimum}, got {value}")
    return int(value)


def parse_family(spec: str) -> GraphFamily:
    """
    Parse `family:args`, e.g. `path:5`, `erdos_renyi:64,0.2`, `grid:4,3`.

    Raises:
        GraphError: unknown family or malformed arguments
    """
    name, _, raw = spec.strip().partition(":")
    name = name.strip()
    if name not in FAMILIES:
        raise GraphError(f"Unknown graph family '{name}'. Must be one of: {list(FAMILIES)}")
    try:
        params = tuple(float(part) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise GraphError(f"Malformed generator arguments in '{spec}'") from exc
    return GraphFamily(name, params)


def generate(family: GraphFamily | str, seed: int = 0) -> Graph:
    """
    Build a graph from a family description.

    Deterministic given (family, seed); only erdos_renyi consumes the seed.

    Raises:
        GraphError: parameter out of range
    """
    if isinstance(family, str):
        family = parse_family(family)
    params = family.params
    expected = 2 if family.name in ("erdos_renyi", "grid", "cliques_joined_by_star") else 1
    if len(params) != expected:
        raise GraphError(
            f"{family.name} takes {expected} argument(s), got {len(params)}"
        )

    if family.name == "erdos_renyi":
        n = _require_int("n", params[0], 1)
        p = params[1]
        if not 0.0 <= p <= 1.0:
            raise GraphError(f"p must be in [0, 1], got {p}")
        graph = nx.gnp_random_graph(n, p, seed=seed)
    elif family.name == "grid":
        width = _require_int("width", params[0], 1)
        height = _require_int("height", params[1], 1)
        return grid(width, height)
    elif family.name == "star":
        graph = nx.star_graph(_require_int("d", params[0], 0))
    elif family.name == "path":
        graph = nx.path_graph(_require_int("n", params[0], 1))
    elif family.name == "complete":
        graph = nx.complete_graph(_require_int("n", params[0], 1))
    else:
        cliques = _require_int("c", params[0], 1)
        size = _require_int("s", params[1], 1)
        return cliques_joined_by_star(cliques, size)

    logger.debug("generated %s (seed %d): n=%d m=%d",
                 family.label(), seed, graph.number_of_nodes(), graph.number_of_edges())
    return Graph.from_networkx(graph)


def grid(width: int, height: int) -> Graph:
    """width x height lattice; node (row, col) has index row * width + col."""
    edges = []
    for row in range(height):
        for col in range(width):
            v = row * width + col
            if col + 1 < width:
                edges.append((v, v + 1))
            if row + 1 < height:
                edges.append((v, v + width))
    return Graph.from_edges(width * height, edges)


def cliques_joined_by_star(cliques: int, size: int) -> Graph:
    """
    `cliques` disjoint cliques of `size` nodes plus a hub.

    The hub is node 0; clique i occupies nodes 1 + i*size .. (i+1)*size and
    its first node is the designated member joined to the hub.
    """
    edges = []
    for i in range(cliques):
        members = [1 + i * size + j for j in range(size)]
        edges.append((0, members[0]))
        for a in range(size):
            for b in range(a + 1, size):
                edges.append((members[a], members[b]))
    return Graph.from_edges(1 + cliques * size, edges)
