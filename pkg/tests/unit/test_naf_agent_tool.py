# tests/unit/test_naf_agent_tool.py
"""
Unit tests for NafAgentTool and the role restriction of later iterations.
"""

import math

import numpy as np

from agents.matching_agent.protocol import Role
from agents.naf_agent.controller import recursion_limit_for
from agents.naf_agent.tool import NafAgentTool, NafRunConfig, restrict_roles
from core import test_wrapper
from core.errors import ConfigError
from network.model import Graph, Matching


@test_wrapper
def test_resolve_k_from_load_hint():
    assert NafRunConfig(load_hint=2).resolve_k(100) == math.ceil(4 * math.log(100))
    assert NafRunConfig(load_hint=3).resolve_k(1) == 0
    assert NafRunConfig(k=5, load_hint=3).resolve_k(100) == 5


@test_wrapper
def test_naf_run_config_validation():
    for kwargs, fragment in (
        ({}, "either k or a load hint"),
        ({"k": -1}, "k must be >= 0"),
        ({"load_hint": 0}, "L must be >= 1"),
    ):
        try:
            NafRunConfig(**kwargs)
            assert False, "Should have raised ConfigError"
        except ConfigError as e:
            assert fragment in str(e)


@test_wrapper
def test_restrict_roles():
    """Unassigned nodes only recruit, assigned nodes only accept"""
    assigned = np.array([False, False, True, True])
    roles = np.array([Role.RECRUITER, Role.ACCEPTER, Role.RECRUITER, Role.ACCEPTER], dtype=np.int8)
    restricted = restrict_roles(assigned)(roles)
    assert restricted.tolist() == [Role.RECRUITER, Role.ASLEEP, Role.ASLEEP, Role.ACCEPTER]
    # input untouched
    assert roles.tolist() == [Role.RECRUITER, Role.ACCEPTER, Role.RECRUITER, Role.ACCEPTER]


@test_wrapper
def test_restrict_roles_snapshots_assignment():
    assigned = np.array([False, True])
    apply = restrict_roles(assigned)
    assigned[0] = True
    roles = np.array([Role.RECRUITER, Role.ACCEPTER], dtype=np.int8)
    assert apply(roles).tolist() == [Role.RECRUITER, Role.ACCEPTER]


@test_wrapper
def test_initial_state_reports_isolated_vertices():
    tool = NafAgentTool()
    graph = Graph.from_edges(4, [(0, 1)])
    assigned, target, isolated = tool.initial_state(graph)
    assert not assigned.any()
    assert target.tolist() == [-1, -1, -1, -1]
    assert isolated == [2, 3]


@test_wrapper
def test_apply_matching_points_endpoints_at_each_other():
    tool = NafAgentTool()
    assigned = np.array([True, False, False, False])
    target = np.array([1, -1, -1, -1])
    new_assigned, new_target = tool.apply_matching(assigned, target, Matching.of([(1, 0), (2, 3)]))
    assert new_assigned.tolist() == [True, True, True, True]
    assert new_target.tolist() == [1, 0, 3, 2]
    assert target.tolist() == [1, -1, -1, -1]


@test_wrapper
def test_apply_matching_overwrites_previous_target():
    """An accepter matched again points at its newest partner"""
    tool = NafAgentTool()
    assigned = np.array([True, True, False])
    target = np.array([1, 0, -1])
    _, new_target = tool.apply_matching(assigned, target, Matching.of([(1, 2)]))
    assert new_target.tolist() == [1, 2, 1]


@test_wrapper
def test_no_unassigned_edge(path4):
    tool = NafAgentTool()
    assert tool.no_unassigned_edge(path4, np.array([False, True, True, False]))
    assert not tool.no_unassigned_edge(path4, np.array([True, True, False, False]))


@test_wrapper
def test_finish_measures_load(star3):
    tool = NafAgentTool()
    assignment, load = tool.finish(star3, np.array([1, 0, 0, -1]))
    assert assignment.target == (1, 0, 0, None)
    assert load.load == 2
    assert load.partial


@test_wrapper
def test_recursion_limit_covers_all_iterations():
    assert recursion_limit_for(0) >= 4
    assert recursion_limit_for(20) >= 2 * 21 + 2
