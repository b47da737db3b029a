# network/model.py
"""
Value types for the network topology and the structures built on it:
Graph, NodeId, Matching and NafAssignment, plus their validity checks.

Nodes are identified by their dense index in [0, n). Wire ids exist only for
the random-ID mode of the radio layer.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import networkx as nx
import numpy as np

from core.errors import (
    ConfigError,
    DuplicateWireIdError,
    GraphError,
    InvalidAssignmentError,
    InvalidMatchingError,
)

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class NodeId:
    index: int
    wire_id: str | None = None

    @property
    def wire_value(self) -> int:
        """Integer carried in messages: the wire id in random-ID mode, else the index."""
        if self.wire_id is None:
            return self.index
        return int(self.wire_id, 2)


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple undirected graph.

    Fields:
        n: node count
        adjacency: per-node sorted tuple of neighbor indices
    """
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """
        Build a graph from an edge list.

        Raises:
            GraphError: negative n, endpoint out of range, self-loop or duplicate edge
        """
        if n < 0:
            raise GraphError(f"Node count must be non-negative, got {n}")

        neighbors: list[set[int]] = [set() for _ in range(n)]
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise GraphError(f"Self-loop at node {u}")
            if v in neighbors[u]:
                raise GraphError(f"Duplicate edge ({u}, {v})")
            neighbors[u].add(v)
            neighbors[v].add(u)

        return cls(n=n, adjacency=tuple(tuple(sorted(s)) for s in neighbors))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Relabel nodes by sorted order and copy the edges."""
        order = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(order)}
        return cls.from_edges(len(order), ((index[u], index[v]) for u, v in graph.edges()))

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError(f"Adjacency has {len(self.adjacency)} rows for n={self.n}")
        for u, row in enumerate(self.adjacency):
            if list(row) != sorted(set(row)):
                raise GraphError(f"Adjacency row {u} is not sorted and duplicate-free")
            for v in row:
                if v == u:
                    raise GraphError(f"Self-loop at node {u}")
                if not 0 <= v < self.n:
                    raise GraphError(f"Neighbor {v} of node {u} is outside [0, {self.n})")
                if u not in self.adjacency[v]:
                    raise GraphError(f"Adjacency is not symmetric for edge ({u}, {v})")

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u, row in enumerate(self.adjacency) for v in row if u < v)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(row) for row in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edge_set

    def isolated_vertices(self) -> list[int]:
        return [v for v, row in enumerate(self.adjacency) if not row]

    def induced_max_degree(self, nodes: Iterable[int]) -> int:
        """Maximum degree of the subgraph induced by `nodes`."""
        keep = set(nodes)
        return max((sum(1 for u in self.adjacency[v] if u in keep) for v in keep), default=0)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class Matching:
    """Set of unordered node pairs, stored as sorted (u, v) tuples with u < v."""
    pairs: frozenset[Edge] = field(default_factory=frozenset)

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "Matching":
        return cls(frozenset(normalize_edge(int(p[0]), int(p[1])) for p in pairs))

    @classmethod
    def from_partners(cls, partner: Sequence[int | None]) -> "Matching":
        """
        Collect {v, partner[v]} for every node with a partner.

        Only mutual pairs are well defined; a one-sided entry is kept as a pair
        too so validate_matching can report it.
        """
        pairs = set()
        for v, w in enumerate(partner):
            if w is None or w < 0:
                continue
            pairs.add(normalize_edge(v, int(w)))
        return cls(frozenset(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def covered(self) -> set[int]:
        return {v for pair in self.pairs for v in pair}

    def issubset(self, other: "Matching") -> bool:
        return self.pairs <= other.pairs

    def partner_map(self) -> dict[int, int]:
        mapping = {}
        for u, v in self.pairs:
            mapping[u] = v
            mapping[v] = u
        return mapping


class MatchingCheck(NamedTuple):
    valid: bool
    violation: str | None = None


def validate_matching(graph: Graph, matching: Matching) -> MatchingCheck:
    """Check that every pair is an edge of `graph` and no node is in two pairs."""
    seen: dict[int, Edge] = {}
    for pair in sorted(matching.pairs):
        u, v = pair
        if u == v:
            return MatchingCheck(False, f"pair ({u}, {v}) is a self-loop")
        if not (0 <= u < graph.n and 0 <= v < graph.n):
            return MatchingCheck(False, f"pair ({u}, {v}) has an endpoint outside the graph")
        if not graph.has_edge(u, v):
            return MatchingCheck(False, f"pair ({u}, {v}) is not an edge")
        for node in pair:
            if node in seen:
                return MatchingCheck(
                    False, f"node {node} appears in pairs {seen[node]} and {pair}"
                )
            seen[node] = pair
    return MatchingCheck(True)


def is_maximal(graph: Graph, matching: Matching) -> bool:
    """
    True iff no edge of `graph` has both endpoints unmatched.

    Raises:
        InvalidMatchingError: matching is not valid for graph
    """
    check = validate_matching(graph, matching)
    if not check.valid:
        raise InvalidMatchingError(check.violation)
    covered = matching.covered()
    return all(u in covered or v in covered for u, v in graph.edges)


@dataclass(frozen=True)
class NafAssignment:
    """Partial map node -> neighbor; target[v] is None while v is unassigned."""
    target: tuple[int | None, ...]

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> "NafAssignment":
        return cls(tuple(mapping.get(v) for v in range(n)))

    @classmethod
    def from_array(cls, target: Sequence[int]) -> "NafAssignment":
        """Build from an integer array where negative entries mean unassigned."""
        return cls(tuple(int(t) if t >= 0 else None for t in target))

    @property
    def n(self) -> int:
        return len(self.target)

    def assigned(self) -> list[int]:
        return [v for v, t in enumerate(self.target) if t is not None]

    def unassigned(self) -> list[int]:
        return [v for v, t in enumerate(self.target) if t is None]

    def is_total(self) -> bool:
        return all(t is not None for t in self.target)

    def loads(self) -> list[int]:
        counts = [0] * self.n
        for t in self.target:
            if t is not None:
                counts[t] += 1
        return counts

    def load(self) -> int:
        return max(self.loads(), default=0)


class NafLoad(NamedTuple):
    load: int
    partial: bool


def naf_load(graph: Graph, assignment: NafAssignment) -> NafLoad:
    """
    Maximum in-degree of the assignment digraph.

    A partial assignment is measured over its assigned nodes and flagged.

    Raises:
        InvalidAssignmentError: size mismatch, or target(v) not adjacent to v
    """
    if assignment.n != graph.n:
        raise InvalidAssignmentError(
            f"Assignment covers {assignment.n} nodes but the graph has {graph.n}"
        )
    for v, t in enumerate(assignment.target):
        if t is not None and not graph.has_edge(v, t):
            raise InvalidAssignmentError(f"target({v}) = {t} is not a neighbor of {v}")
    return NafLoad(load=assignment.load(), partial=not assignment.is_total())


def id_width(n: int, id_mode: str = "index", id_bits_factor: int = 3) -> int:
    """Bits per id: ceil(log2 n) in index mode, id_bits_factor times that in random-ID mode."""
    base = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    if id_mode == "random":
        if id_bits_factor < 1:
            raise ConfigError(f"id bits factor must be >= 1, got {id_bits_factor}")
        return id_bits_factor * base
    if id_mode != "index":
        raise GraphError(f"Unknown id mode '{id_mode}'")
    return base


def assign_wire_ids(n: int, id_bits_factor: int, seed: int) -> tuple[NodeId, ...]:
    """
    Draw an independent uniform bit string for every node.

    Raises:
        DuplicateWireIdError: two or more nodes drew the same string
    """
    width = id_width(n, "random", id_bits_factor)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0x1D,)))
    bits = rng.integers(0, 2, size=(n, width), dtype=np.int8)
    wires = ["".join("1" if b else "0" for b in row) for row in bits]

    owners: dict[str, list[int]] = {}
    for v, wire in enumerate(wires):
        owners.setdefault(wire, []).append(v)
    collisions = {wire: nodes for wire, nodes in owners.items() if len(nodes) > 1}
    if collisions:
        raise DuplicateWireIdError(collisions)

    return tuple(NodeId(index=v, wire_id=wire) for v, wire in enumerate(wires))


def index_ids(n: int) -> tuple[NodeId, ...]:
    return tuple(NodeId(index=v) for v in range(n))
