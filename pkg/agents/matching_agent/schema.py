# agents/matching_agent/schema.py
from typing import Any, TypedDict

from core import BaseSchema

# ========================================================
# State definition
# ========================================================
class MatchingAgentState(TypedDict, total=False):
    """
    State for MatchingAgent.

    Input fields:
        graph: network topology (network.model.Graph)
        params: ScheduleParams (C, n, log mode)
        seed: master seed of the run
        options: MatchingOptions (id mode, role filter, history, trace)

    Internal fields:
        ids: NodeId per node
        engine_result: radio.engine.RunResult
        process: the MatchingProcess after the run

    Output fields:
        run: MatchingRun (matching, checks, ledger, history, trace)
    """
    graph: Any
    params: Any
    seed: int
    options: Any
    ids: Any
    engine_result: Any
    process: Any
    run: Any

# ========================================================
# Node definitions
# ========================================================
def assign_ids(state: MatchingAgentState) -> dict:
    """
    Give every node the id it will put in messages.
    Implementation in controller.
    """
    return state

def simulate(state: MatchingAgentState) -> dict:
    """
    Run 3 * t_max timesteps of the handshake protocol.
    Implementation in controller.
    """
    return state

def extract(state: MatchingAgentState) -> dict:
    """
    Turn partner variables into a checked MatchingRun.
    Implementation in controller.
    """
    return state

# ========================================================
# Schema Definition
# ========================================================
class MatchingAgentSchema(BaseSchema):
    state_type = MatchingAgentState

    # State mapping for subgraph invocation from NafAgent
    state_mapping = {
        "matching": {
            "input": {
                "graph": "graph",
                "matching_params": "params",
                "matching_seed": "seed",
                "matching_options": "options",
            },
            "output": {
                "run": "matching_run",
            }
        }
    }

    nodes = [
        ("assign_ids", assign_ids),
        ("simulate", simulate),
        ("extract", extract),
    ]

    conditional_edges = []

    direct_edges = [
        ("assign_ids", "simulate"),
        ("simulate", "extract"),
    ]
