# tests/unit/test_matching_agent_tool.py
"""
Unit tests for the matching protocol pieces and MatchingAgentTool.

Schedule arithmetic, per-round state machines, and the tool methods driven
directly (no langgraph).
"""

import math
from unittest.mock import Mock

import numpy as np

from agents.matching_agent.protocol import (
    FixedRate,
    NodeState,
    PairEvent,
    Role,
    ScheduleParams,
    accept_round,
    choose_role,
    choose_roles,
    recruit_round,
)
from agents.matching_agent.tool import MatchingAgentTool, MatchingOptions, PairEstimate
from core import test_wrapper
from core.errors import ConfigError, ProtocolError
from network.model import Matching, index_ids
from radio.ledger import ActionTrace
from radio.messages import LISTEN, SLEEP, Pair, Solo, send


# ============================================================================
# Schedule
# ============================================================================

@test_wrapper
def test_schedule_small_n_clamps_log():
    """ln 2 < 1 so logn is clamped to 1"""
    params = ScheduleParams(n=2, C=100)
    assert params.logn == 1.0
    assert params.t_max == 200
    assert params.total_timesteps == 600
    assert params.energy_bound == 2000
    assert math.isclose(params.rate(1), 300 / 599)
    assert math.isclose(params.rate(200), 0.75)


@test_wrapper
def test_schedule_log_modes():
    natural = ScheduleParams(n=64, C=1)
    binary = ScheduleParams(n=64, C=1, log_mode="binary")
    assert natural.t_max == math.ceil(64 * math.log(64))
    assert binary.t_max == 384
    assert binary.energy_bound == 720


@test_wrapper
def test_schedule_rate_increases_to_three_quarters():
    params = ScheduleParams(n=50, C=2)
    rates = [params.rate(t) for t in range(1, params.t_max + 1)]
    assert all(a < b for a, b in zip(rates, rates[1:]))
    assert math.isclose(rates[-1], 0.75)
    assert 0 < rates[0] < 0.75


@test_wrapper
def test_rate_is_three_eighths_four_c_log_rounds_before_the_end():
    for n in (16, 1024):
        params = ScheduleParams(n=n, C=100, log_mode="binary")
        t = params.t_max - int(4 * params.C * params.logn)
        assert math.isclose(params.rate(t), 3 / 8)
    assert ScheduleParams(n=16, C=100, log_mode="binary").t_max == 6400


@test_wrapper
def test_first_round_rate_is_below_four_over_n():
    for log_mode in ("natural", "binary"):
        for n in (16, 32, 64, 128, 1024):
            params = ScheduleParams(n=n, C=100, log_mode=log_mode)
            assert params.rate(1) < 4 / n, (log_mode, n)


@test_wrapper
def test_schedule_validation():
    for kwargs, fragment in (
        ({"n": 0}, "n must be"),
        ({"n": 4, "C": 0}, "C must be positive"),
        ({"n": 4, "log_mode": "ten"}, "log_mode"),
    ):
        try:
            ScheduleParams(**kwargs)
            assert False, "Should have raised ConfigError"
        except ConfigError as e:
            assert fragment in str(e)


@test_wrapper
def test_rate_outside_schedule():
    params = ScheduleParams(n=2, C=1)
    try:
        params.rate(params.t_max + 1)
        assert False, "Should have raised ProtocolError"
    except ProtocolError as e:
        assert "outside" in str(e)


@test_wrapper
def test_fixed_rate():
    fixed = FixedRate(0.25, t_max=4)
    assert fixed.rate(3) == 0.25
    assert fixed.total_timesteps == 12
    try:
        FixedRate(1.5)
        assert False, "Should have raised ConfigError"
    except ConfigError as e:
        assert "(0, 1]" in str(e)


# ============================================================================
# Roles and the handshake state machine
# ============================================================================

@test_wrapper
def test_choose_role_boundaries():
    assert choose_role(0.5, 0.25) is Role.RECRUITER
    assert choose_role(0.5, 0.5) is Role.ACCEPTER
    assert choose_role(0.5, 0.51) is Role.ASLEEP
    assert choose_role(0.5, 1.0) is Role.ASLEEP
    roles = choose_roles(0.5, np.array([0.25, 0.5, 0.51, 0.0]))
    assert roles.tolist() == [Role.RECRUITER, Role.ACCEPTER, Role.ASLEEP, Role.RECRUITER]


@test_wrapper
def test_role_frequencies_match_rate():
    """10^6 draws land within three standard deviations of r/2, r/2, 1 - r"""
    draws = 1_000_000
    rng = np.random.default_rng(12345)
    for rate in (0.1, 0.5, 0.75):
        roles = choose_roles(rate, rng.random(draws))
        for role, p in ((Role.RECRUITER, rate / 2), (Role.ACCEPTER, rate / 2), (Role.ASLEEP, 1 - rate)):
            count = int(np.count_nonzero(roles == role))
            sigma = math.sqrt(draws * p * (1 - p))
            assert abs(count - draws * p) <= 3 * sigma, (rate, role, count)


@test_wrapper
def test_recruiter_confirms_proposal_addressed_to_it():
    actions, state = recruit_round(NodeState(my_id=3), [None, Pair(3, 5), None])
    assert actions == (send(Solo(3)), LISTEN, send(Pair(3, 5)))
    assert state.partner == 5


@test_wrapper
def test_recruiter_ignores_foreign_proposal():
    actions, state = recruit_round(NodeState(my_id=3), [None, Pair(4, 5), None])
    assert actions[2] == SLEEP
    assert state.partner is None


@test_wrapper
def test_accepter_completes_handshake():
    actions, state = accept_round(NodeState(my_id=5), [Solo(3), None, Pair(3, 5)])
    assert actions == (LISTEN, send(Pair(3, 5)), LISTEN)
    assert state.partner == 3


@test_wrapper
def test_accepter_confirmed_for_someone_else_stays_unmatched():
    """Step 3 names another node: no partner, and the node was awake all three steps"""
    actions, state = accept_round(NodeState(my_id=5), [Solo(3), None, Pair(3, 6)])
    assert actions == (LISTEN, send(Pair(3, 5)), LISTEN)
    assert state.partner is None
    assert sum(1 for action in actions if action != SLEEP) == 3


@test_wrapper
def test_accepter_hearing_nothing_sleeps():
    actions, state = accept_round(NodeState(my_id=5), [None, None, None])
    assert actions == (LISTEN, SLEEP, SLEEP)
    assert state.partner is None


@test_wrapper
def test_accepter_without_confirmation_stays_unmatched():
    actions, state = accept_round(NodeState(my_id=5), [Solo(3), None, None])
    assert actions[2] == LISTEN
    assert state.partner is None


@test_wrapper
def test_round_needs_three_receptions():
    try:
        recruit_round(NodeState(my_id=0), [None, None])
        assert False, "Should have raised ProtocolError"
    except ProtocolError as e:
        assert "three receptions" in str(e)


# ============================================================================
# MatchingAgentTool
# ============================================================================

def _simulate(tool, graph, params, seed, options=None):
    options = options or MatchingOptions()
    ids = tool.node_ids(graph, options, seed)
    result, process = tool.simulate(graph, params, seed, ids, options)
    return tool.extract_matching(graph, params, result, process), ids


@test_wrapper
def test_node_ids_modes():
    tool = MatchingAgentTool()
    graph = Mock(n=4)
    assert tool.node_ids(graph, MatchingOptions(), 0) == index_ids(4)
    random_ids = tool.node_ids(graph, MatchingOptions(id_mode="random", id_bits_factor=16), 1)
    assert all(len(node.wire_id) == 32 for node in random_ids)
    try:
        tool.node_ids(graph, MatchingOptions(id_mode="hex"), 0)
        assert False, "Should have raised ConfigError"
    except ConfigError as e:
        assert "hex" in str(e)


@test_wrapper
def test_single_edge_is_matched(edge_graph):
    tool = MatchingAgentTool()
    params = ScheduleParams(n=2, C=100)
    run, _ = _simulate(tool, edge_graph, params, seed=7)

    assert run.check.valid
    assert run.maximal
    assert run.matching.pairs == frozenset({(0, 1)})
    assert run.partner.tolist() == [1, 0]
    assert run.latency_ok
    assert run.energy_bound_ok
    assert run.energy_matches_participation
    assert len(run.events) == 1


@test_wrapper
def test_history_checkpoints_only_grow(path4):
    tool = MatchingAgentTool()
    params = ScheduleParams(n=4, C=3)
    run, _ = _simulate(tool, path4, params, seed=2, options=MatchingOptions(capture_history=True))

    assert run.history[0] == (0, Matching())
    rounds = [t for t, _ in run.history]
    assert rounds == sorted(rounds)
    for (_, before), (_, after) in zip(run.history, run.history[1:]):
        assert before.issubset(after)
    assert run.history[-1][1] == run.matching


@test_wrapper
def test_role_filter_can_silence_everyone(path4):
    tool = MatchingAgentTool()
    params = ScheduleParams(n=4, C=1)
    options = MatchingOptions(role_filter=lambda roles: np.zeros_like(roles))
    run, _ = _simulate(tool, path4, params, seed=0, options=options)

    assert len(run.matching) == 0
    assert run.ledger.total() == 0
    assert run.participation.sum() == 0
    assert not run.maximal
    assert run.latency_ok


@test_wrapper
def test_random_ids_match_like_index_ids(edge_graph):
    tool = MatchingAgentTool()
    params = ScheduleParams(n=2, C=100)
    options = MatchingOptions(id_mode="random", id_bits_factor=32)
    run, _ = _simulate(tool, edge_graph, params, seed=4, options=options)
    assert run.matching.pairs == frozenset({(0, 1)})


@test_wrapper
def test_audit_of_traced_run_is_clean(edge_graph):
    tool = MatchingAgentTool()
    params = ScheduleParams(n=2, C=100)
    run, ids = _simulate(tool, edge_graph, params, seed=3, options=MatchingOptions(trace_cap=1000))

    assert not run.trace.truncated
    assert run.trace.energy_actions() == run.ledger.total()
    assert tool.audit_handshakes(run, ids) == []


@test_wrapper
def test_audit_reports_missing_steps():
    tool = MatchingAgentTool()
    run = Mock(trace=ActionTrace(cap=10), events=[PairEvent(2, 0, 1)])
    problems = tool.audit_handshakes(run, index_ids(2))
    assert problems == [
        "round 2: no trace entry for step 4",
        "round 2: no trace entry for step 5",
        "round 2: no trace entry for step 6",
    ]


@test_wrapper
def test_audit_requires_trace():
    tool = MatchingAgentTool()
    try:
        tool.audit_handshakes(Mock(trace=None, events=[]), index_ids(2))
        assert False, "Should have raised ConfigError"
    except ConfigError as e:
        assert "trace_cap" in str(e)


@test_wrapper
def test_estimate_pair_probability_on_single_edge(edge_graph):
    """With r = 1 the edge pairs exactly when the two roles differ"""
    tool = MatchingAgentTool()
    estimate = tool.estimate_pair_probability(edge_graph, [], 1.0, (0, 1), rounds=400, seed=5)
    assert estimate.rounds == 400
    assert estimate.agrees_with(0.5, sigmas=5)


@test_wrapper
def test_estimate_pair_probability_rejects_bad_edge(path3):
    tool = MatchingAgentTool()
    for matched, edge, fragment in (([1], (0, 1), "matched endpoint"), ([], (0, 2), "not an edge")):
        try:
            tool.estimate_pair_probability(path3, matched, 0.5, edge, rounds=10, seed=0)
            assert False, "Should have raised ConfigError"
        except ConfigError as e:
            assert fragment in str(e)


@test_wrapper
def test_pair_estimate_statistics():
    estimate = PairEstimate(hits=30, rounds=100)
    assert estimate.frequency == 0.3
    assert math.isclose(estimate.standard_error, math.sqrt(0.21 / 100))
    assert estimate.agrees_with(0.3)
    assert not estimate.agrees_with(0.9)
