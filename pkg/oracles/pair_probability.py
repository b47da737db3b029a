# oracles/pair_probability.py
"""
Exact probability that two unmatched neighbors pair with each other in one
round of the handshake, by enumerating joint role outcomes.

The round semantics are coded here from the protocol description alone and
share nothing with the simulator beyond the Graph type.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import networkx as nx

from core.errors import ConfigError, GuardExceededError
from network.model import Graph

logger = logging.getLogger(__name__)

MAX_PAIR_NODES = 14

ASLEEP, RECRUITER, ACCEPTER = 0, 1, 2


@dataclass(frozen=True)
class ExactProbability:
    value: Fraction
    method: str
    enumerated_nodes: int

    def __float__(self) -> float:
        return float(self.value)


def _as_fraction(r: float | Fraction) -> Fraction:
    if isinstance(r, Fraction):
        return r
    # decimal string keeps 0.1 as 1/10 instead of its binary expansion
    return Fraction(str(r))


def residual_max_degree(graph: Graph, matched: Iterable[int]) -> int:
    """Maximum degree of the subgraph induced by the unmatched nodes."""
    matched = set(matched)
    return graph.induced_max_degree(v for v in range(graph.n) if v not in matched)


def lemma_bound(r: float | Fraction, max_degree: int) -> Fraction:
    """Lower bound (r^2 / 2) (1 - r)^(max_degree - 1) on the pairing probability."""
    r = _as_fraction(r)
    return r * r / 2 * (1 - r) ** max(max_degree - 1, 0)


def relevant_nodes(graph: Graph, matched: Iterable[int], edge: tuple[int, int]) -> list[int]:
    """Unmatched nodes within distance 2 of either endpoint in the residual graph."""
    matched = set(matched)
    residual = graph.to_networkx().subgraph(v for v in range(graph.n) if v not in matched)
    near: set[int] = set()
    for endpoint in edge:
        near.update(nx.single_source_shortest_path_length(residual, endpoint, cutoff=2))
    return sorted(near)


def _pairs_up(graph: Graph, roles: dict[int, int], v: int, w: int) -> bool:
    """Play one round under fixed roles; True iff v and w end as each other's partner."""
    recruiters = [u for u, role in roles.items() if role == RECRUITER]
    accepters = [u for u, role in roles.items() if role == ACCEPTER]

    # step 1: recruiters announce; an accepter hears iff exactly one recruiter neighbor
    heard: dict[int, int] = {}
    for a in accepters:
        sources = [u for u in graph.neighbors(a) if roles.get(u) == RECRUITER]
        if len(sources) == 1:
            heard[a] = sources[0]

    # step 2: accepters that heard propose (heard[a], a); recruiters listen
    proposal: dict[int, int] = {}
    for z in recruiters:
        senders = [u for u in graph.neighbors(z) if u in heard]
        if len(senders) == 1 and heard[senders[0]] == z:
            proposal[z] = senders[0]

    # step 3: recruiters with a proposal confirm; proposing accepters listen
    partner: dict[int, int] = dict(proposal)
    for a in heard:
        senders = [u for u in graph.neighbors(a) if u in proposal]
        if len(senders) == 1 and proposal[senders[0]] == a:
            partner[a] = senders[0]

    return partner.get(v) == w and partner.get(w) == v


def pair_probability_exact(graph: Graph, matched: Iterable[int], r: float | Fraction,
                           edge: tuple[int, int], reduce: bool = True,
                           limit: int = MAX_PAIR_NODES) -> ExactProbability:
    """
    P(v and w set each other as partners in one round at participation rate r).

    Every unmatched node is independently a Recruiter or an Accepter with
    probability r/2 each and asleep otherwise; matched nodes sleep. Only
    outcomes where v and w take opposite roles can succeed, so the
    enumeration fixes those two and walks the 3^(m-2) outcomes of the rest.
    With `reduce`, only unmatched nodes within distance 2 of the edge are
    enumerated; the others cannot reach either endpoint's receptions.

    Raises:
        ConfigError: r outside (0, 1], edge not an unmatched edge
        GuardExceededError: more than `limit` nodes to enumerate
    """
    rate = _as_fraction(r)
    if not 0 < rate <= 1:
        raise ConfigError(f"r must be in (0, 1], got {r}")
    matched = frozenset(matched)
    v, w = edge
    if not graph.has_edge(v, w):
        raise ConfigError(f"{edge} is not an edge")
    if v in matched or w in matched:
        raise ConfigError(f"Edge {edge} has a matched endpoint")

    if reduce:
        nodes = relevant_nodes(graph, matched, edge)
    else:
        nodes = [u for u in range(graph.n) if u not in matched]
    if len(nodes) > limit:
        raise GuardExceededError("pair_probability_exact", len(nodes), limit)

    others = [u for u in nodes if u not in (v, w)]
    successes: Counter[int] = Counter()
    for roles_vw in ((RECRUITER, ACCEPTER), (ACCEPTER, RECRUITER)):
        for rest in itertools.product((ASLEEP, RECRUITER, ACCEPTER), repeat=len(others)):
            roles = {v: roles_vw[0], w: roles_vw[1]}
            roles.update((u, role) for u, role in zip(others, rest) if role != ASLEEP)
            if _pairs_up(graph, roles, v, w):
                successes[len(roles)] += 1

    m = len(nodes)
    half = rate / 2
    value = sum((count * half ** k * (1 - rate) ** (m - k) for k, count in successes.items()),
                Fraction(0))
    method = f"{'distance-2' if reduce else 'full'} enumeration over {m} nodes"
    logger.debug("pair %s at r=%s: %s (%s)", edge, rate, value, method)
    return ExactProbability(value=value, method=method, enumerated_nodes=m)
