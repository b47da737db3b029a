# agents/naf_agent/controller.py
import logging
from dataclasses import replace
from functools import lru_cache

from agents.matching_agent.controller import MatchingAgent
from agents.matching_agent.protocol import ScheduleParams
from agents.matching_agent.schema import MatchingAgentSchema
from agents.matching_agent.tool import MatchingOptions
from agents.naf_agent.schema import NafAgentSchema
from agents.naf_agent.tool import NafAgentTool, NafRun, NafRunConfig, restrict_roles
from core import BaseGraph
from network.model import Graph
from radio.ledger import EnergyLedger

logger = logging.getLogger(__name__)


class NafAgent(BaseGraph):
    """
    Neighbor assignment by repeated matchings.

    Iteration 0 runs the unmodified matching protocol; iterations 1..k run it
    with only unassigned nodes recruiting and only assigned nodes accepting.
    Every matched edge points both endpoints at each other. All k iterations
    run even when everyone is assigned early.
    """

    def __init__(self):
        super().__init__(NafAgentSchema.state_type)

        # Import schema definitions
        self.nodes = NafAgentSchema.nodes
        self.direct_edges = NafAgentSchema.direct_edges

        # Override conditional edges so routing uses controller logic.
        self.conditional_edges = [
            ("apply_matching", self.route_after_apply, {
                "run_iteration": "run_iteration",
                "finish": "finish",
            }),
        ]

        self.tool = NafAgentTool()

        matching_agent = MatchingAgent()
        self.subgraphs = {
            "matching_agent": self.register_subgraph(
                matching_agent.compile(), MatchingAgentSchema.state_mapping
            )
        }

    # ========================================================
    # Node implementations
    # ========================================================

    def init_assignment(self, state: dict) -> dict:
        graph = state["graph"]
        assigned, target, isolated = self.tool.initial_state(graph)
        k = state["naf_config"].resolve_k(graph.n)
        logger.info("NAF run on n=%d with k=%d", graph.n, k)
        return {
            "k": k,
            "iteration": 0,
            "assigned": assigned,
            "target": target,
            "unassignable": isolated,
            "coverage_curve": [],
            "matching_sizes": [],
            "ledger": EnergyLedger(graph.n),
            "timesteps": 0,
            "options": state.get("options") or MatchingOptions(),
        }

    def run_iteration(self, state: dict) -> dict:
        iteration = state["iteration"]
        role_filter = None if iteration == 0 else restrict_roles(state["assigned"])
        options = replace(
            state["options"],
            role_filter=role_filter,
            stream_salt=(iteration,),
            capture_history=False,
        )
        call_state = {
            "graph": state["graph"],
            "matching_params": state["params"],
            "matching_seed": state["seed"],
            "matching_options": options,
        }
        result = self.subgraphs["matching_agent"]("matching", call_state)
        return {"matching_run": result["matching_run"]}

    def apply_matching(self, state: dict) -> dict:
        run = state["matching_run"]
        graph = state["graph"]
        assigned, target = self.tool.apply_matching(state["assigned"], state["target"], run.matching)

        ledger = state["ledger"]
        ledger.absorb(run.ledger, round_offset=state["iteration"] * state["params"].t_max)

        updates = {
            "assigned": assigned,
            "target": target,
            "coverage_curve": state["coverage_curve"] + [int(assigned.sum())],
            "matching_sizes": state["matching_sizes"] + [len(run.matching)],
            "ledger": ledger,
            "timesteps": state["timesteps"] + run.timesteps,
            "iteration": state["iteration"] + 1,
        }
        if state["iteration"] == 0:
            updates["first_matching_maximal"] = self.tool.no_unassigned_edge(graph, assigned)
        logger.info("NAF iteration %d: %d/%d assigned",
                    state["iteration"], int(assigned.sum()), graph.n)
        return updates

    def finish(self, state: dict) -> dict:
        graph = state["graph"]
        assignment, load = self.tool.finish(graph, state["target"])
        curve = state["coverage_curve"]
        first_full = next((i for i, c in enumerate(curve) if c == graph.n), None)
        k = state["k"]
        ledger = state["ledger"]
        bound = (k + 1) * state["params"].energy_bound
        return {
            "result": NafRun(
                assignment=assignment,
                load=load,
                k=k,
                coverage_curve=list(curve),
                matching_sizes=list(state["matching_sizes"]),
                first_full_iteration=first_full,
                unassignable=list(state["unassignable"]),
                first_matching_maximal=state.get("first_matching_maximal", True),
                ledger=ledger,
                timesteps=state["timesteps"],
                energy_ok=ledger.max_energy() <= bound,
            )
        }

    # ========================================================
    # Edge routing implementations
    # ========================================================

    def route_after_apply(self, state: dict) -> str:
        """Iterations 0..k inclusive, then finish."""
        if state["iteration"] <= state["k"]:
            return "run_iteration"
        return "finish"

    def compile(self):
        """Compile the NafAgent graph using BaseGraph logic."""
        return super().compile()


@lru_cache(maxsize=1)
def compiled_naf_agent():
    return NafAgent().compile()


def recursion_limit_for(k: int) -> int:
    return 2 * (k + 1) + 10


def run_naf(graph: Graph, config: NafRunConfig, params: ScheduleParams, seed: int,
            options: MatchingOptions | None = None) -> NafRun:
    """Build a neighbor assignment with k + 1 matching runs."""
    k = config.resolve_k(graph.n)
    state = {
        "graph": graph,
        "naf_config": config,
        "params": params,
        "seed": seed,
        "options": options or MatchingOptions(),
    }
    result = compiled_naf_agent().invoke(state, config={"recursion_limit": recursion_limit_for(k)})
    return result["result"]
