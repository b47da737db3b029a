# agents/orchestrator/controller.py
import logging
from dataclasses import replace
from typing import Any, Sequence

from agents.orchestrator.schema import OrchestratorSchema
from agents.orchestrator.tool import OrchestratorTool, RunConfig, SweepCell
from config.runtime_config import RuntimeConfig
from core import BaseGraph
from core.errors import ConfigError

logger = logging.getLogger(__name__)


class Orchestrator(BaseGraph):
    """
    Top-level batch controller.

    load_graph -> plan_trials -> run_trials -> aggregate -> build_report

    Trial seeds are spawned from the master seed, so a batch is reproducible
    regardless of worker count or completion order.
    """

    def __init__(self):
        super().__init__(OrchestratorSchema.state_type)

        # Import schema definitions
        self.nodes = OrchestratorSchema.nodes
        self.conditional_edges = OrchestratorSchema.conditional_edges
        self.direct_edges = OrchestratorSchema.direct_edges

        # Initialize tool (loads config)
        self.tool = OrchestratorTool()

    # ========================================================
    # Node implementations
    # ========================================================

    def load_graph(self, state: dict) -> dict:
        graph, source = self.tool.load_graph(state["run_config"])
        cli = RuntimeConfig.cli_interface
        if cli is not None:
            cli.show_batch_header(state["run_config"], source, graph)
        return {"graph": graph, "graph_source": source}

    def plan_trials(self, state: dict) -> dict:
        return {"plan": self.tool.plan_trials(state["run_config"])}

    def run_trials(self, state: dict) -> dict:
        trials = self.tool.run_trials(
            state["graph"], state["run_config"], state["plan"], progress=state.get("progress", False)
        )
        return {"trials": trials}

    def aggregate(self, state: dict) -> dict:
        batch = self.tool.aggregate(state["graph"], state["run_config"], state["trials"])
        logger.info("batch finished: %d/%d trials completed",
                    batch["completed_trials"], len(state["trials"]))
        return {"batch": batch}

    def build_report(self, state: dict) -> dict:
        report = self.tool.build_report(
            state["graph"], state["graph_source"], state["run_config"],
            state["trials"], state["batch"],
        )
        return {"report": report}

    # ========================================================
    # Compile
    # ========================================================

    def compile(self):
        """Compile the Orchestrator graph using BaseGraph logic."""
        return super().compile()


def run_batch(run_config: RunConfig, progress: bool = False) -> dict[str, Any]:
    """Run every trial of one batch and return the report dictionary."""
    compiled = Orchestrator().compile()
    result = compiled.invoke({"run_config": run_config, "progress": progress})
    return result["report"]


def run_sweep(template: RunConfig, generator_template: str, n_values: Sequence[int],
              c_values: Sequence[float], progress: bool = False) -> dict[str, Any]:
    """
    Run one `match` batch per (n, C) cell.

    generator_template names the family with an `{n}` placeholder, e.g.
    `erdos_renyi:{n},0.2` or `path:{n}`.

    Raises:
        ConfigError: empty grid or a template without the placeholder
    """
    if "{n}" not in generator_template:
        raise ConfigError(f"Sweep generator '{generator_template}' needs an {{n}} placeholder")
    if not n_values or not c_values:
        raise ConfigError("Sweep needs at least one n and one C value")

    compiled = Orchestrator().compile()
    cells = []
    for n in n_values:
        for c in c_values:
            generator = generator_template.replace("{n}", str(n))
            cell_config = replace(template, command="match", generator=generator, graph_path=None, C=c)
            logger.info("sweep cell n=%d C=%s (%s)", n, c, generator)
            report = compiled.invoke({"run_config": cell_config, "progress": progress})["report"]
            cell = SweepCell(n=report["graph"]["n"], C=c, generator=generator, batch=report["batch"])
            done = [t for t in report["trials"] if t["completed"]]
            cell.total_timesteps = done[0]["total_timesteps"] if done else 0
            cells.append(cell.row())

    config = template.to_report()
    config.update({"generator": generator_template, "n_values": list(n_values), "C_values": list(c_values)})
    return {
        "schema_version": int(RuntimeConfig.config_data.get("report_schema_version", 1)),
        "command": "sweep",
        "config": config,
        "cells": cells,
    }
