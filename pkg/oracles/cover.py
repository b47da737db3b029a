# oracles/cover.py
"""
Matching cover number, minimum NAF load, and the constructions linking them.

The vertex sets coverable by one matching are the independent sets of the
matching matroid, so a cover only ever needs matchings of maximum size: any
matching extends to one covering a superset of its vertices.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from core.errors import GraphError, GuardExceededError, InvalidAssignmentError, InvalidMatchingError
from network.model import Graph, Matching, NafAssignment, naf_load, validate_matching
from oracles.matching import neighbor_masks

logger = logging.getLogger(__name__)

MAX_COVER_NODES = 12
MAX_NAF_NODES = 10
MAX_NAF_DEGREE_PRODUCT = 10 ** 7


def _require_no_isolated(graph: Graph, oracle: str) -> None:
    isolated = graph.isolated_vertices()
    if isolated:
        raise GraphError(f"{oracle}: isolated vertices {isolated} cannot be covered")


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class _PerfectSets:
    """perfect[mask] -> an edge (v, u) starting a perfect matching of G[mask], or None."""

    def __init__(self, graph: Graph):
        n = graph.n
        adj = neighbor_masks(graph)
        self.choice: list[tuple[int, int] | None] = [None] * (1 << n)
        self.ok = bytearray(1 << n)
        self.ok[0] = 1
        for mask in range(1, 1 << n):
            if bin(mask).count("1") % 2:
                continue
            v = (mask & -mask).bit_length() - 1
            for u in _bits(adj[v] & mask):
                if self.ok[mask ^ (1 << v) ^ (1 << u)]:
                    self.ok[mask] = 1
                    self.choice[mask] = (v, u)
                    break

    def matching(self, mask: int) -> Matching:
        pairs = []
        while mask:
            v, u = self.choice[mask]
            pairs.append((v, u))
            mask ^= (1 << v) | (1 << u)
        return Matching.of(pairs)


@dataclass(frozen=True)
class CoverResult:
    size: int
    matchings: tuple[Matching, ...]


def minimum_matching_cover(graph: Graph, limit: int = MAX_COVER_NODES) -> CoverResult:
    """
    Smallest set of matchings whose union covers every vertex.

    Iterative deepening over k; the search always extends the cover to the
    lowest uncovered vertex and memoizes failed (uncovered set, k) states.

    Raises:
        GraphError: isolated vertex
        GuardExceededError: n above `limit`
    """
    if graph.n > limit:
        raise GuardExceededError("matching_cover_number", graph.n, limit)
    _require_no_isolated(graph, "matching_cover_number")
    if graph.n == 0:
        return CoverResult(0, ())

    perfect = _PerfectSets(graph)
    largest = max(bin(m).count("1") for m in range(1 << graph.n) if perfect.ok[m])
    bases = [m for m in range(1 << graph.n) if perfect.ok[m] and bin(m).count("1") == largest]

    @lru_cache(maxsize=None)
    def cover(uncovered: int, k: int) -> tuple[int, ...] | None:
        if uncovered == 0:
            return ()
        if k == 0 or k * largest < bin(uncovered).count("1"):
            return None
        v = (uncovered & -uncovered).bit_length() - 1
        for base in bases:
            if base >> v & 1:
                rest = cover(uncovered & ~base, k - 1)
                if rest is not None:
                    return (base,) + rest
        return None

    full = (1 << graph.n) - 1
    for k in range(1, graph.n + 1):
        found = cover(full, k)
        if found is not None:
            return CoverResult(k, tuple(perfect.matching(mask) for mask in found))
    raise AssertionError("a graph without isolated vertices always has a matching cover")


def matching_cover_number(graph: Graph, limit: int = MAX_COVER_NODES) -> int:
    return minimum_matching_cover(graph, limit).size


def _check_naf_guard(graph: Graph, max_nodes: int, max_degree_product: int) -> None:
    if graph.n <= max_nodes:
        return
    product = math.prod(max(1, graph.degree(v)) for v in range(graph.n))
    if product > max_degree_product:
        raise GuardExceededError("min_naf_load", product, max_degree_product, measure="degree product")


def minimum_naf(graph: Graph, max_nodes: int = MAX_NAF_NODES,
                max_degree_product: int = MAX_NAF_DEGREE_PRODUCT) -> NafAssignment:
    """
    A total assignment of minimum load, by backtracking with load-bound pruning.

    Raises:
        GraphError: isolated vertex
        GuardExceededError: both n and the degree product exceed their guards
    """
    _check_naf_guard(graph, max_nodes, max_degree_product)
    _require_no_isolated(graph, "min_naf_load")
    if graph.n == 0:
        return NafAssignment(())

    order = sorted(range(graph.n), key=lambda v: (graph.degree(v), v))

    def feasible(cap: int) -> dict[int, int] | None:
        loads = [0] * graph.n
        chosen: dict[int, int] = {}

        def place(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            for u in graph.neighbors(v):
                if loads[u] < cap:
                    loads[u] += 1
                    chosen[v] = u
                    if place(i + 1):
                        return True
                    loads[u] -= 1
            chosen.pop(v, None)
            return False

        return dict(chosen) if place(0) else None

    for cap in range(1, graph.max_degree + 1):
        found = feasible(cap)
        if found is not None:
            return NafAssignment.from_mapping(graph.n, found)
    raise AssertionError("load max_degree is always feasible")


def min_naf_load(graph: Graph, max_nodes: int = MAX_NAF_NODES,
                 max_degree_product: int = MAX_NAF_DEGREE_PRODUCT) -> int:
    return minimum_naf(graph, max_nodes, max_degree_product).load()


def cover_to_naf(graph: Graph, matchings: Sequence[Matching]) -> NafAssignment:
    """
    Assign every vertex to its partner in the first matching that covers it.

    Raises:
        InvalidMatchingError: one of the matchings is invalid
        InvalidAssignmentError: some vertex is not covered
    """
    mapping: dict[int, int] = {}
    for matching in matchings:
        check = validate_matching(graph, matching)
        if not check.valid:
            raise InvalidMatchingError(check.violation)
        for v, w in matching.partner_map().items():
            mapping.setdefault(v, w)
    missing = [v for v in range(graph.n) if v not in mapping]
    if missing:
        raise InvalidAssignmentError(f"vertices {missing} are not covered by the matchings")
    return NafAssignment.from_mapping(graph.n, mapping)


def reduce_leaves(graph: Graph, assignment: NafAssignment) -> NafAssignment:
    """
    Re-point targets at load-zero nodes until no rule applies.

    For a node v of load zero with u = target(v) not already in a 2-cycle,
    set target(u) = v. Each application puts two more nodes into 2-cycles,
    so at most n/2 applications happen, and no load ever increases beyond the
    input's maximum. Afterwards every component is a directed cycle, or a
    2-cycle with load-zero nodes pointing at its two ends.
    """
    naf_load(graph, assignment)
    if not assignment.is_total():
        raise InvalidAssignmentError("reduce_leaves needs a total assignment")
    target = list(assignment.target)

    changed = True
    while changed:
        changed = False
        loads = [0] * graph.n
        for t in target:
            loads[t] += 1
        for v in range(graph.n):
            u = target[v]
            if loads[v] == 0 and target[target[u]] != u:
                target[u] = v
                changed = True
                break
    return NafAssignment(tuple(target))


def naf_to_matching_cover(graph: Graph, assignment: NafAssignment) -> list[Matching]:
    """
    Build a matching cover from a total assignment.

    After reduce_leaves, cycles contribute alternate edges (an odd cycle needs a
    second matching for its last vertex) and each 2-cycle {r, x} with leaves
    pairs its i-th leaf edge at r with its i-th leaf edge at x. Size is at most
    the load when the load is >= 2, and at most 2 when it is 1.
    """
    reduced = reduce_leaves(graph, assignment)
    target = reduced.target
    loads = reduced.loads()
    layers: list[list[tuple[int, int]]] = []

    def put(layer: int, edge: tuple[int, int]) -> None:
        while len(layers) <= layer:
            layers.append([])
        layers[layer].append(edge)

    seen = [False] * graph.n
    for start in range(graph.n):
        if seen[start] or loads[start] == 0:
            continue
        # walk to the cycle of this component
        walk, v = [], start
        positions: dict[int, int] = {}
        while v not in positions:
            positions[v] = len(walk)
            walk.append(v)
            v = target[v]
        cycle = walk[positions[v]:]
        if any(seen[c] for c in cycle):
            continue
        for c in cycle:
            seen[c] = True

        if len(cycle) == 2:
            r, x = cycle
            leaves_r = [y for y in range(graph.n) if target[y] == r and y != x]
            leaves_x = [y for y in range(graph.n) if target[y] == x and y != r]
            for y in leaves_r + leaves_x:
                seen[y] = True
            if not leaves_r and not leaves_x:
                put(0, (r, x))
                continue
            if not leaves_r or not leaves_x:
                put(0, (r, x))
                offset = 1
            else:
                offset = 0
            for i, y in enumerate(leaves_r):
                put(i + offset, (y, r))
            for i, y in enumerate(leaves_x):
                put(i + offset, (y, x))
        else:
            length = len(cycle)
            for i in range(0, length - 1, 2):
                put(0, (cycle[i], cycle[i + 1]))
            if length % 2:
                put(1, (cycle[-1], cycle[0]))

    return [Matching.of(layer) for layer in layers]


@dataclass(frozen=True)
class TheoremCheck:
    consistent: bool
    naf_load: int
    cover_number: int
    constructions_ok: bool
    notes: list[str] = field(default_factory=list)


def verify_naf_mc_theorem(graph: Graph, cover_limit: int = MAX_COVER_NODES,
                          naf_max_nodes: int = MAX_NAF_NODES,
                          naf_max_degree_product: int = MAX_NAF_DEGREE_PRODUCT) -> TheoremCheck:
    """
    Compare minimum NAF load with the matching cover number.

    Consistent iff they are equal, or the load is 1 and the cover number is 1
    or 2. Both directions of the correspondence are also built from the
    optimal witnesses and checked.
    """
    best_naf = minimum_naf(graph, naf_max_nodes, naf_max_degree_product)
    cover = minimum_matching_cover(graph, cover_limit)
    load = best_naf.load()
    mc = cover.size
    consistent = load == mc or (load == 1 and mc in (1, 2))

    notes = []
    from_cover = cover_to_naf(graph, cover.matchings)
    if from_cover.load() > mc:
        notes.append(f"cover_to_naf produced load {from_cover.load()} > mc {mc}")

    built = naf_to_matching_cover(graph, best_naf)
    covered = set().union(*(m.covered() for m in built)) if built else set()
    if covered != set(range(graph.n)):
        notes.append("naf_to_matching_cover left vertices uncovered")
    if any(not validate_matching(graph, m).valid for m in built):
        notes.append("naf_to_matching_cover produced an invalid matching")
    allowed = 2 if load == 1 else load
    if len(built) > allowed:
        notes.append(f"naf_to_matching_cover used {len(built)} matchings for load {load}")

    if not consistent:
        logger.warning("counterexample: load %d, mc %d, edges %s", load, mc, graph.edges)
    return TheoremCheck(consistent, load, mc, not notes, notes)
