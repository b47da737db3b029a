# network/edgelist.py
"""
Edge-list file format, the single on-disk graph representation.

    # comment lines start with '#', blank lines are ignored
    n m
    u v        (m lines, 0-based node indices, whitespace separated)
"""

from pathlib import Path

from core.errors import GraphError
from network.model import Graph


def parse_edge_list(text: str, source: str = "<string>") -> Graph:
    """
    Parse edge-list text.

    Raises:
        GraphError: malformed header or edge line, edge count mismatch, non-simple graph
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphError(f"{source}:{lineno}: expected two integers, got '{line}'")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise GraphError(f"{source}:{lineno}: expected two integers, got '{line}'") from exc

        if header is None:
            if a < 0 or b < 0:
                raise GraphError(f"{source}:{lineno}: header counts must be non-negative")
            header = (a, b)
        else:
            edges.append((a, b))

    if header is None:
        raise GraphError(f"{source}: missing 'n m' header line")

    n, m = header
    if len(edges) != m:
        raise GraphError(f"{source}: header declares {m} edges but {len(edges)} were listed")

    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise GraphError(f"{source}: {exc}") from exc


def read_edge_list(path: str | Path) -> Graph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"Cannot read graph file {path}: {exc}") from exc
    return parse_edge_list(text, source=str(path))


def format_edge_list(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def write_edge_list(graph: Graph, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_edge_list(graph), encoding="utf-8")
