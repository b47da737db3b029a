# agents/orchestrator/tool.py
import logging
import time
from concurrent.futures import FIRST_COMPLETED, Future, ProcessPoolExecutor, wait
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np
from tqdm import tqdm

from agents.matching_agent import MatchingAgentTool, MatchingOptions, ScheduleParams, run_matching
from agents.naf_agent import NafRunConfig, run_naf
from config.config_loader import load_config, validate_config
from config.runtime_config import RuntimeConfig
from core import BaseTool, auto_wrap_error
from core.errors import ConfigError, DuplicateWireIdError, GraphError
from network.edgelist import read_edge_list
from network.generators import generate, parse_family
from network.model import Graph
from oracles.matching import MAX_MATCHING_NODES, maximum_matching_size

logger = logging.getLogger(__name__)

COMMANDS = ("match", "naf")


@dataclass(frozen=True)
class RunConfig:
    """
    Resolved parameters of one batch.

    Exactly one of graph_path / generator names the graph. seed_source records
    whether the seed came from the command line or the config default.
    """
    command: str
    graph_path: str | None = None
    generator: str | None = None
    graph_seed: int = 0
    C: float = 100.0
    log_mode: str = "natural"
    seed: int = 0
    seed_source: str = "config_default"
    trials: int = 1
    k: int | None = None
    L: int | None = None
    history: bool = False
    trace_cap: int = 0
    id_mode: str = "index"
    id_bits_factor: int = 3
    workers: int = 1
    budget_seconds: float | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'. Must be one of: {list(COMMANDS)}")
        if (self.graph_path is None) == (self.generator is None):
            raise ConfigError("Give exactly one of a graph file or a generator")
        if not self.C > 0:
            raise ConfigError(f"C must be positive, got {self.C}")
        if self.trials < 1:
            raise ConfigError(f"trials must be positive, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")
        if self.seed < 0 or self.graph_seed < 0:
            raise ConfigError("seeds must be non-negative")
        if self.budget_seconds is not None and not self.budget_seconds > 0:
            raise ConfigError(f"budget must be positive, got {self.budget_seconds}")
        if self.trace_cap < 0:
            raise ConfigError(f"trace cap must be >= 0, got {self.trace_cap}")
        if self.id_mode not in ("index", "random"):
            raise ConfigError(f"id mode must be index or random, got '{self.id_mode}'")
        if self.id_bits_factor < 1:
            raise ConfigError(f"id bits factor must be >= 1, got {self.id_bits_factor}")
        if self.command == "naf":
            # NafRunConfig validates k / L
            NafRunConfig(k=self.k, load_hint=self.L)

    def schedule(self, n: int) -> ScheduleParams:
        return ScheduleParams(n=n, C=self.C, log_mode=self.log_mode)

    def matching_options(self) -> MatchingOptions:
        return MatchingOptions(
            id_mode=self.id_mode,
            id_bits_factor=self.id_bits_factor,
            capture_history=self.history,
            trace_cap=self.trace_cap if self.history else 0,
        )

    def to_report(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class TrialSpec:
    trial: int
    seed: int


def spawn_trial_seeds(master_seed: int, trials: int) -> list[TrialSpec]:
    """Independent per-trial seeds spawned from the master seed."""
    children = np.random.SeedSequence(master_seed).spawn(trials)
    return [TrialSpec(i, int(child.generate_state(1, dtype=np.uint32)[0]))
            for i, child in enumerate(children)]


def _match_trial(graph: Graph, config: RunConfig, spec: TrialSpec) -> dict[str, Any]:
    params = config.schedule(graph.n)
    options = config.matching_options()
    run = run_matching(graph, params, spec.seed, options)
    record = {
        "matching_size": len(run.matching),
        "valid": run.check.valid,
        "violation": run.check.violation,
        "maximal": run.maximal,
        "energy": [int(e) for e in run.ledger.energy],
        "max_energy": run.ledger.max_energy(),
        "max_round_energy": int(run.ledger.max_round_energy.max()) if graph.n else 0,
        "participation": [int(p) for p in run.participation],
        "energy_matches_participation": run.energy_matches_participation,
        "total_timesteps": run.timesteps,
        "latency_ok": run.latency_ok,
        "energy_bound_ok": run.energy_bound_ok,
        "history_checked": run.history is not None,
        "handshake_problems": None,
        "trace_energy_ok": None,
        "maximum_matching_size": None,
        "two_approx_ok": None,
    }
    if run.trace is not None:
        tool = MatchingAgentTool()
        ids = tool.node_ids(graph, options, spec.seed)
        record["handshake_problems"] = len(tool.audit_handshakes(run, ids))
        if not run.trace.truncated:
            record["trace_energy_ok"] = run.trace.energy_actions() == run.ledger.total()
    if graph.n <= MAX_MATCHING_NODES:
        best = maximum_matching_size(graph)
        record["maximum_matching_size"] = best
        record["two_approx_ok"] = 2 * len(run.matching) >= best
    return record


def _naf_trial(graph: Graph, config: RunConfig, spec: TrialSpec) -> dict[str, Any]:
    params = config.schedule(graph.n)
    naf_config = NafRunConfig(k=config.k, load_hint=config.L)
    run = run_naf(graph, naf_config, params, spec.seed, config.matching_options())
    return {
        "k": run.k,
        "load": run.load.load,
        "coverage_fraction": run.coverage_fraction,
        "coverage_curve": list(run.coverage_curve),
        "first_full_iteration": run.first_full_iteration,
        "unassignable": list(run.unassignable),
        "load_bound_ok": run.load_bound_ok,
        "max_energy": run.ledger.max_energy(),
        "energy_bound_ok": run.energy_ok,
        "first_matching_maximal": run.first_matching_maximal,
        "total_timesteps": run.timesteps,
    }


TRIAL_RUNNERS: dict[str, Callable[[Graph, RunConfig, TrialSpec], dict[str, Any]]] = {
    "match": _match_trial,
    "naf": _naf_trial,
}


def execute_trial(graph: Graph, config: RunConfig, spec: TrialSpec) -> dict[str, Any]:
    """Run one trial; module level so a process pool can pickle it."""
    start = time.perf_counter()
    logger.info("trial %d (seed %d) started", spec.trial, spec.seed)
    record = {"trial": spec.trial, "seed": spec.seed, "completed": True}
    try:
        record.update(TRIAL_RUNNERS[config.command](graph, config, spec))
    except DuplicateWireIdError as exc:
        # the batch goes on; the collision is reported on this trial
        logger.warning("trial %d (seed %d): %s", spec.trial, spec.seed, exc)
        record.update(duplicate_id_trial(exc))
    record["timing"] = {"wall_seconds": time.perf_counter() - start}
    logger.info("trial %d finished", spec.trial)
    return record


def skipped_trial(spec: TrialSpec) -> dict[str, Any]:
    return {"trial": spec.trial, "seed": spec.seed, "completed": False,
            "timing": {"wall_seconds": 0.0}}


def duplicate_id_trial(exc: DuplicateWireIdError) -> dict[str, Any]:
    """Fields of a trial whose random wire ids collided; the protocol never ran."""
    return {"completed": False, "valid": False, "violation": str(exc),
            "duplicate_wire_ids": {wire: list(nodes) for wire, nodes in exc.collisions.items()}}


def _duplicate_id_trials(trials: list[dict[str, Any]]) -> int:
    return sum(1 for t in trials if "duplicate_wire_ids" in t)


def _all(values) -> bool:
    return all(bool(v) for v in values)


def aggregate_match(trials: list[dict[str, Any]], schedule: ScheduleParams) -> dict[str, Any]:
    done = [t for t in trials if t["completed"]]
    energies = np.concatenate([np.asarray(t["energy"], dtype=np.int64) for t in done]) if done else np.array([])
    if energies.size:
        p50, p90, p99 = np.percentile(energies, [50, 90, 99])
        percentiles = {"p50": float(p50), "p90": float(p90), "p99": float(p99),
                       "max": float(energies.max())}
    else:
        percentiles = None
    checked_approx = [t["two_approx_ok"] for t in done if t["two_approx_ok"] is not None]
    audited = [t["handshake_problems"] for t in done if t["handshake_problems"] is not None]
    return {
        "completed_trials": len(done),
        "maximality_rate": (sum(1 for t in done if t["maximal"]) / len(done)) if done else None,
        "validity_violations": sum(1 for t in done if not t["valid"]),
        "energy_percentiles": percentiles,
        "energy_bound": schedule.energy_bound,
        "energy_bound_ok": _all(t["energy_bound_ok"] for t in done),
        "energy_matches_participation": _all(t["energy_matches_participation"] for t in done),
        "latency_ok": _all(t["latency_ok"] for t in done),
        "two_approx_ok": _all(checked_approx) if checked_approx else None,
        "handshake_problems": sum(audited) if audited else None,
        "duplicate_id_trials": _duplicate_id_trials(trials),
    }


def aggregate_naf(trials: list[dict[str, Any]], n: int, load_hint: int | None) -> dict[str, Any]:
    done = [t for t in trials if t["completed"]]
    batch = {
        "completed_trials": len(done),
        "full_coverage_rate": (sum(1 for t in done if t["coverage_fraction"] == 1.0) / len(done))
        if done else None,
        "load_bound_ok": _all(t["load_bound_ok"] for t in done),
        "energy_bound_ok": _all(t["energy_bound_ok"] for t in done),
        "mean_load": float(np.mean([t["load"] for t in done])) if done else None,
        "mean_uncovered_curve": None,
        "uncovered_bound_curve": None,
        "duplicate_id_trials": _duplicate_id_trials(trials),
    }
    if done and n:
        curves = np.array([t["coverage_curve"] for t in done], dtype=float)
        batch["mean_uncovered_curve"] = [float(x) for x in (1.0 - curves / n).mean(axis=0)]
        if load_hint:
            length = curves.shape[1]
            batch["uncovered_bound_curve"] = [(1 - 1 / (2 * load_hint)) ** i for i in range(length)]
    return batch


class OrchestratorTool(BaseTool):
    """
    Tool for Orchestrator: configuration, graph ingestion, trial execution
    and aggregation.
    """

    def __init__(self):
        super().__init__()

        # Load and validate config once per process
        if RuntimeConfig.config_data is None:
            config = load_config()
            validate_config(config)
            RuntimeConfig.config_data = config
        self.config = RuntimeConfig.config_data

    @auto_wrap_error
    def load_graph(self, run_config: RunConfig) -> tuple[Graph, str]:
        """
        Returns:
            (graph, source label)

        Raises:
            GraphError: unreadable file, bad generator, or a graph without nodes
        """
        if run_config.graph_path is not None:
            graph = read_edge_list(run_config.graph_path)
            source = run_config.graph_path
        else:
            family = parse_family(run_config.generator)
            graph = generate(family, seed=run_config.graph_seed)
            source = family.label()
        if graph.n == 0:
            raise GraphError(f"{source}: graph has no nodes")
        self.logger.info("graph %s: n=%d m=%d max degree %d", source, graph.n, graph.m, graph.max_degree)
        return graph, source

    @auto_wrap_error
    def plan_trials(self, run_config: RunConfig) -> list[TrialSpec]:
        return spawn_trial_seeds(run_config.seed, run_config.trials)

    @auto_wrap_error
    def run_trials(self, graph: Graph, run_config: RunConfig, plan: list[TrialSpec],
                   progress: bool = False) -> list[dict[str, Any]]:
        """
        Execute the planned trials, in a process pool when workers > 1.

        The wall-clock budget is checked before each trial starts: trials not
        started in time are reported with completed = false, a trial already
        running is never interrupted. Results are ordered by trial index.
        """
        deadline = (time.monotonic() + run_config.budget_seconds
                    if run_config.budget_seconds is not None else None)

        def out_of_time() -> bool:
            return deadline is not None and time.monotonic() >= deadline

        results: dict[int, dict[str, Any]] = {}
        bar = tqdm(total=len(plan), desc=run_config.command, unit="trial", disable=not progress)
        try:
            if run_config.workers == 1:
                for spec in plan:
                    results[spec.trial] = skipped_trial(spec) if out_of_time() \
                        else execute_trial(graph, run_config, spec)
                    bar.update()
            else:
                with ProcessPoolExecutor(max_workers=run_config.workers) as pool:
                    pending: dict[Future, TrialSpec] = {}
                    queue = list(plan)
                    while queue or pending:
                        while queue and len(pending) < run_config.workers:
                            spec = queue.pop(0)
                            if out_of_time():
                                results[spec.trial] = skipped_trial(spec)
                                bar.update()
                                continue
                            pending[pool.submit(execute_trial, graph, run_config, spec)] = spec
                        if not pending:
                            continue
                        finished, _ = wait(pending, return_when=FIRST_COMPLETED)
                        for future in finished:
                            spec = pending.pop(future)
                            results[spec.trial] = future.result()
                            bar.update()
        finally:
            bar.close()

        skipped = sum(1 for r in results.values() if not r["completed"] and "violation" not in r)
        if skipped:
            self.logger.warning("budget exhausted: %d of %d trials not started", skipped, len(plan))
        return [results[spec.trial] for spec in sorted(plan, key=lambda s: s.trial)]

    @auto_wrap_error
    def aggregate(self, graph: Graph, run_config: RunConfig,
                  trials: list[dict[str, Any]]) -> dict[str, Any]:
        if run_config.command == "match":
            return aggregate_match(trials, run_config.schedule(graph.n))
        return aggregate_naf(trials, graph.n, run_config.L)

    @auto_wrap_error
    def build_report(self, graph: Graph, source: str, run_config: RunConfig,
                     trials: list[dict[str, Any]], batch: dict[str, Any]) -> dict[str, Any]:
        return {
            "schema_version": int(self.config.get("report_schema_version", 1)),
            "command": run_config.command,
            "config": run_config.to_report(),
            "graph": {"source": source, "n": graph.n, "m": graph.m, "max_degree": graph.max_degree},
            "trials": trials,
            "batch": batch,
        }


@dataclass
class SweepCell:
    n: int
    C: float
    generator: str
    batch: dict[str, Any] = field(default_factory=dict)
    total_timesteps: int = 0

    def row(self) -> dict[str, Any]:
        percentiles = self.batch.get("energy_percentiles") or {}
        bound = self.batch.get("energy_bound")
        max_energy = percentiles.get("max")
        return {
            "n": self.n,
            "C": self.C,
            "generator": self.generator,
            "completed_trials": self.batch.get("completed_trials"),
            "maximality_rate": self.batch.get("maximality_rate"),
            "validity_violations": self.batch.get("validity_violations"),
            "max_energy": max_energy,
            "energy_bound_ratio": (max_energy / bound) if max_energy is not None and bound else None,
            "total_timesteps": self.total_timesteps,
        }
