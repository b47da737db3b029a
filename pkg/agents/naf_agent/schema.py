# agents/naf_agent/schema.py
from typing import Any, List, TypedDict

from langgraph.graph import END

from core import BaseSchema

# ========================================================
# State definition
# ========================================================
class NafAgentState(TypedDict, total=False):
    """
    State for NafAgent.

    Input fields:
        graph: network topology
        naf_config: NafRunConfig (k or load hint)
        params: ScheduleParams reused by every iteration
        seed: master seed; iteration i salts every node stream with i
        options: MatchingOptions template (id mode, trace); role filter is set per iteration

    Loop fields:
        k: resolved iteration count
        iteration: index of the matching run in progress (0 = unrestricted)
        assigned / target: assignment under construction
        coverage_curve: assigned count after each iteration
        matching_sizes: size of each iteration's matching
        ledger: energy summed over iterations
        matching_run: result of the latest matching subgraph call

    Output fields:
        result: NafRun
    """
    graph: Any
    naf_config: Any
    params: Any
    seed: int
    options: Any
    k: int
    iteration: int
    assigned: Any
    target: Any
    unassignable: List[int]
    coverage_curve: List[int]
    matching_sizes: List[int]
    first_matching_maximal: bool
    ledger: Any
    timesteps: int
    matching_run: Any
    result: Any

# ========================================================
# Node definitions
# ========================================================
def init_assignment(state: NafAgentState) -> dict:
    """
    Resolve k and start from an empty assignment.
    Implementation in controller.
    """
    return state

def run_iteration(state: NafAgentState) -> dict:
    """
    Run one matching instance (restricted after iteration 0).
    Implementation in controller.
    """
    return state

def apply_matching(state: NafAgentState) -> dict:
    """
    (Re-)assign the endpoints of every matched edge to each other.
    Implementation in controller.
    """
    return state

def finish(state: NafAgentState) -> dict:
    """
    Package the final assignment.
    Implementation in controller.
    """
    return state

# ========================================================
# Edge definitions
# ========================================================
def route_after_apply(state: NafAgentState) -> str:
    """
    Route after an iteration's matching was applied.
    Implementation in controller.
    """
    raise NotImplementedError("Routing logic implemented in controller.")

# ========================================================
# Schema Definition
# ========================================================
class NafAgentSchema(BaseSchema):
    state_type = NafAgentState

    nodes = [
        ("init_assignment", init_assignment),
        ("run_iteration", run_iteration),
        ("apply_matching", apply_matching),
        ("finish", finish),
    ]

    conditional_edges = [
        ("apply_matching", route_after_apply, {
            "run_iteration": "run_iteration",
            "finish": "finish",
        }),
    ]

    direct_edges = [
        ("init_assignment", "run_iteration"),
        ("run_iteration", "apply_matching"),
        ("finish", END),
    ]
