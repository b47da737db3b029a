# agents/orchestrator/schema.py
from typing import Any, Dict, List, TypedDict

from langgraph.graph import END

from core import BaseSchema

# ========================================================
# State definition
# ========================================================
class OrchestratorState(TypedDict, total=False):
    """
    State for Orchestrator (top-level batch controller).

    Runs one batch of `match` or `naf` trials on a single graph.

    Fields:
        run_config: RunConfig of the batch
        progress: show a progress bar while trials run
        graph: network topology
        graph_source: file path or generator label
        plan: TrialSpec per trial (index and spawned seed)
        trials: per-trial records, ordered by trial index
        batch: aggregates and bound-check flags
        report: the assembled report dictionary
    """
    run_config: Any
    progress: bool
    graph: Any
    graph_source: str
    plan: List[Any]
    trials: List[Dict[str, Any]]
    batch: Dict[str, Any]
    report: Dict[str, Any]

# ========================================================
# Node definitions
# ========================================================
def load_graph(state: OrchestratorState) -> dict:
    """
    Read or generate the graph.
    """
    return state

def plan_trials(state: OrchestratorState) -> dict:
    """
    Spawn one seed per trial from the master seed.
    """
    return state

def run_trials(state: OrchestratorState) -> dict:
    """
    Execute the trials (optionally in a process pool, within the budget).
    """
    return state

def aggregate(state: OrchestratorState) -> dict:
    """
    Compute batch statistics and bound checks.
    """
    return state

def build_report(state: OrchestratorState) -> dict:
    """
    Assemble the schema-versioned report.
    """
    return state

# ========================================================
# Schema Definition
# ========================================================
class OrchestratorSchema(BaseSchema):
    state_type = OrchestratorState

    # No state_mapping needed (Orchestrator is top-level)
    state_mapping = {}

    nodes = [
        ("load_graph", load_graph),
        ("plan_trials", plan_trials),
        ("run_trials", run_trials),
        ("aggregate", aggregate),
        ("build_report", build_report),
    ]

    conditional_edges = []

    direct_edges = [
        ("load_graph", "plan_trials"),
        ("plan_trials", "run_trials"),
        ("run_trials", "aggregate"),
        ("aggregate", "build_report"),
        ("build_report", END),
    ]
