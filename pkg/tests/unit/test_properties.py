# tests/unit/test_properties.py
"""
Property-based checks over small random graphs.
"""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from agents.matching_agent.protocol import ScheduleParams
from agents.matching_agent.tool import MatchingAgentTool, MatchingOptions
from core import test_wrapper
from network.model import Graph, NafAssignment, is_maximal, validate_matching
from oracles import (
    cover_to_naf,
    greedy_matching,
    lemma_bound,
    maximum_matching_size,
    min_naf_load,
    minimum_matching_cover,
    naf_to_matching_cover,
    pair_probability_exact,
    residual_max_degree,
)
from radio import LISTEN, SLEEP, Solo, deliver, send

PROFILE = settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=1, max_n=7, no_isolated=False):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [pair for pair, keep in zip(pairs, mask) if keep]
    if no_isolated:
        touched = {v for edge in edges for v in edge}
        # hook every isolated vertex to its successor (or predecessor)
        for v in range(n):
            if v not in touched:
                u = v + 1 if v + 1 < n else v - 1
                edge = (min(u, v), max(u, v))
                if edge not in edges:
                    edges.append(edge)
                touched.update(edge)
    return Graph.from_edges(n, edges)


@PROFILE
@given(graphs(), st.data())
@test_wrapper
def test_delivery_rule(graph, data):
    """A listener hears iff exactly one neighbor sends"""
    choices = st.sampled_from(["send", "listen", "sleep"])
    kinds = data.draw(st.lists(choices, min_size=graph.n, max_size=graph.n))
    actions = [
        send(Solo(v)) if kind == "send" else (LISTEN if kind == "listen" else SLEEP)
        for v, kind in enumerate(kinds)
    ]
    received = deliver(graph, actions)
    for v in range(graph.n):
        senders = [u for u in graph.neighbors(v) if kinds[u] == "send"]
        if kinds[v] == "listen" and len(senders) == 1:
            assert received[v].message == Solo(senders[0])
        else:
            assert v not in received


@PROFILE
@given(graphs(max_n=6), st.integers(min_value=0, max_value=2 ** 31))
@test_wrapper
def test_protocol_output_is_always_a_valid_matching(graph, seed):
    tool = MatchingAgentTool()
    params = ScheduleParams(n=graph.n, C=0.5)
    options = MatchingOptions(capture_history=True)
    ids = tool.node_ids(graph, options, seed)
    result, process = tool.simulate(graph, params, seed, ids, options)
    run = tool.extract_matching(graph, params, result, process)

    assert run.check.valid
    assert run.latency_ok
    assert run.energy_matches_participation
    for v, w in run.matching:
        assert run.partner[v] == w and run.partner[w] == v


@PROFILE
@given(graphs(max_n=8), st.integers(min_value=0, max_value=1000))
@test_wrapper
def test_greedy_is_maximal_and_half_optimal(graph, seed):
    matching = greedy_matching(graph, seed)
    assert validate_matching(graph, matching).valid
    assert is_maximal(graph, matching)
    assert 2 * len(matching) >= maximum_matching_size(graph)


@PROFILE
@given(graphs(min_n=2, max_n=6, no_isolated=True))
@test_wrapper
def test_cover_and_naf_bound_each_other(graph):
    cover = minimum_matching_cover(graph)
    load = min_naf_load(graph)
    assert cover_to_naf(graph, cover.matchings).load() <= cover.size
    assert load <= cover.size <= (2 if load == 1 else load)


@PROFILE
@given(graphs(min_n=2, max_n=6, no_isolated=True))
@test_wrapper
def test_naf_to_cover_from_any_total_assignment(graph):
    """Pointing every node at its first neighbor still yields a valid cover"""
    assignment = NafAssignment(tuple(graph.neighbors(v)[0] for v in range(graph.n)))
    load = assignment.load()
    cover = naf_to_matching_cover(graph, assignment)
    assert set().union(*(m.covered() for m in cover)) == set(range(graph.n))
    assert all(validate_matching(graph, m).valid for m in cover)
    assert len(cover) <= (2 if load == 1 else load)


@PROFILE
@given(graphs(min_n=2, max_n=6), st.data())
@test_wrapper
def test_exact_pair_probability_meets_bound(graph, data):
    if not graph.edges:
        return
    edge = data.draw(st.sampled_from(graph.edges))
    others = [v for v in range(graph.n) if v not in edge]
    matched = data.draw(st.lists(st.sampled_from(others), unique=True)) if others else []
    r = Fraction(data.draw(st.integers(min_value=1, max_value=10)), 10)

    exact = pair_probability_exact(graph, matched, r, edge)
    full = pair_probability_exact(graph, matched, r, edge, reduce=False)
    assert exact.value == full.value
    assert exact.value >= lemma_bound(r, residual_max_degree(graph, matched))
