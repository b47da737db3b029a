# agents/matching_agent/controller.py
import logging
from functools import lru_cache

from agents.matching_agent.protocol import ScheduleParams
from agents.matching_agent.schema import MatchingAgentSchema
from agents.matching_agent.tool import MatchingAgentTool, MatchingOptions, MatchingRun
from core import BaseGraph
from network.model import Graph

logger = logging.getLogger(__name__)


class MatchingAgent(BaseGraph):
    """
    Distributed maximal matching in a no-CD radio network.

    assign_ids -> simulate -> extract
    """

    def __init__(self):
        super().__init__(MatchingAgentSchema.state_type)

        # Import schema definitions
        self.nodes = MatchingAgentSchema.nodes
        self.conditional_edges = MatchingAgentSchema.conditional_edges
        self.direct_edges = MatchingAgentSchema.direct_edges
        self.state_mapping = MatchingAgentSchema.state_mapping

        self.tool = MatchingAgentTool()

    def assign_ids(self, state: dict) -> dict:
        options = state.get("options") or MatchingOptions()
        return {
            "options": options,
            "ids": self.tool.node_ids(state["graph"], options, state["seed"]),
        }

    def simulate(self, state: dict) -> dict:
        result, process = self.tool.simulate(
            state["graph"], state["params"], state["seed"], state["ids"], state["options"]
        )
        return {"engine_result": result, "process": process}

    def extract(self, state: dict) -> dict:
        run = self.tool.extract_matching(
            state["graph"], state["params"], state["engine_result"], state["process"]
        )
        logger.info(
            "matching on n=%d: size %d, valid %s, maximal %s, max energy %d",
            state["graph"].n, len(run.matching), run.check.valid, run.maximal,
            run.ledger.max_energy(),
        )
        return {"run": run}

    def compile(self):
        """Compile the MatchingAgent graph using BaseGraph logic."""
        return super().compile()


@lru_cache(maxsize=1)
def compiled_matching_agent():
    return MatchingAgent().compile()


def run_matching(graph: Graph, params: ScheduleParams, seed: int,
                 options: MatchingOptions | None = None) -> MatchingRun:
    """Run the protocol once and return the checked result."""
    state = {"graph": graph, "params": params, "seed": seed,
             "options": options or MatchingOptions()}
    return compiled_matching_agent().invoke(state)["run"]
