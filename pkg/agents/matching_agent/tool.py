# agents/matching_agent/tool.py
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from agents.matching_agent.protocol import (
    MatchingProcess,
    PairEvent,
    RepeatedRoundProcess,
    RoleFilter,
    ScheduleParams,
)
from core import BaseTool, auto_wrap_error
from core.errors import ConfigError
from network.model import (
    Graph,
    Matching,
    MatchingCheck,
    NodeId,
    assign_wire_ids,
    id_width,
    index_ids,
    is_maximal,
    validate_matching,
)
from radio import engine
from radio.engine import RunResult
from radio.ledger import ActionTrace, EnergyLedger, RoundClock
from radio.messages import ActionKind, Pair, Solo


@dataclass(frozen=True)
class MatchingOptions:
    """
    Knobs of a single protocol run besides the schedule and seed.

    Fields:
        id_mode: "index" or "random" (wire ids of id_bits_factor * ceil(log2 n) bits)
        role_filter: restriction applied to sampled roles (NAF iterations)
        capture_history: per-round validity checks and M(t) checkpoints
        trace_cap: keep up to this many non-idle timesteps (0 disables the trace)
        stream_salt: extra key mixed into every node's stream seed
    """
    id_mode: str = "index"
    id_bits_factor: int = 3
    role_filter: RoleFilter | None = None
    capture_history: bool = False
    trace_cap: int = 0
    stream_salt: tuple[int, ...] = ()


@dataclass
class MatchingRun:
    matching: Matching
    check: MatchingCheck
    maximal: bool | None
    ledger: EnergyLedger
    participation: np.ndarray
    partner: np.ndarray
    timesteps: int
    schedule: ScheduleParams
    events: list[PairEvent] = field(default_factory=list)
    history: list[tuple[int, Matching]] | None = None
    trace: ActionTrace | None = None

    @property
    def latency_ok(self) -> bool:
        return self.timesteps == self.schedule.total_timesteps

    @property
    def energy_bound_ok(self) -> bool:
        return self.ledger.max_energy() <= self.schedule.energy_bound

    @property
    def energy_matches_participation(self) -> bool:
        """Every node spent at most 3 units per participated round and nothing otherwise."""
        counted = self.ledger.participation_counts()
        return bool(
            np.array_equal(counted, self.participation)
            and np.all(self.ledger.energy <= 3 * self.participation)
            and np.all(self.ledger.max_round_energy <= 3)
        )


@dataclass(frozen=True)
class PairEstimate:
    hits: int
    rounds: int

    @property
    def frequency(self) -> float:
        return self.hits / self.rounds

    @property
    def standard_error(self) -> float:
        p = self.frequency
        return math.sqrt(max(p * (1 - p), 0.0) / self.rounds)

    def agrees_with(self, p: float, sigmas: float = 4.0) -> bool:
        """Within `sigmas` binomial standard deviations of p (computed at p itself)."""
        sd = math.sqrt(p * (1 - p) / self.rounds)
        return abs(self.frequency - p) <= sigmas * sd + 1e-12


class MatchingAgentTool(BaseTool):
    """Runs the handshake protocol through the radio engine and checks the outcome."""

    @auto_wrap_error
    def node_ids(self, graph: Graph, options: MatchingOptions, seed: int) -> tuple[NodeId, ...]:
        if options.id_mode == "index":
            return index_ids(graph.n)
        if options.id_mode == "random":
            return assign_wire_ids(graph.n, options.id_bits_factor, seed)
        raise ConfigError(f"Unknown id_mode '{options.id_mode}'")

    @auto_wrap_error
    def simulate(self, graph: Graph, params: ScheduleParams, seed: int,
                 ids: Sequence[NodeId], options: MatchingOptions) -> tuple[RunResult, MatchingProcess]:
        """Drive exactly 3 * t_max timesteps of the protocol."""
        process = MatchingProcess(
            params, ids,
            role_filter=options.role_filter,
            capture_history=options.capture_history,
        )
        result = engine.run(
            graph, process, params.total_timesteps, seed,
            id_width=id_width(graph.n, options.id_mode, options.id_bits_factor),
            trace_cap=options.trace_cap or None,
            stream_salt=options.stream_salt,
        )
        self.logger.debug("simulated %d timesteps on n=%d (seed %d)", result.timesteps, graph.n, seed)
        return result, process

    @auto_wrap_error
    def extract_matching(self, graph: Graph, params: ScheduleParams, result: RunResult,
                         process: MatchingProcess) -> MatchingRun:
        """Read the partner variables into a Matching and check it."""
        matching = Matching.from_partners(process.partner)
        check = validate_matching(graph, matching)
        maximal = is_maximal(graph, matching) if check.valid else None
        return MatchingRun(
            matching=matching,
            check=check,
            maximal=maximal,
            ledger=result.ledger,
            participation=process.rounds_participated.copy(),
            partner=process.partner.copy(),
            timesteps=result.timesteps,
            schedule=params,
            events=list(process.events),
            history=list(process.history) if process.capture_history else None,
            trace=result.trace,
        )

    @auto_wrap_error
    def audit_handshakes(self, run: MatchingRun, ids: Sequence[NodeId]) -> list[str]:
        """
        Check every pair formed in a traced run against the trace.

        For a pair (v recruiter, w accepter) formed in round t the trace must show
        Solo(v) from v heard by w, Pair(v, w) from w heard by v, then Pair(v, w)
        from v heard by w, in timesteps 3t-2, 3t-1, 3t.

        Returns:
            problems found; empty when every handshake checks out. Pairs formed
            after the trace was truncated are skipped.
        """
        if run.trace is None:
            raise ConfigError("audit_handshakes needs a run with trace_cap > 0")
        by_step = {entry.step: entry for entry in run.trace.entries}
        last_step = run.trace.entries[-1].step if run.trace.entries else 0
        problems = []
        for event in run.events:
            steps = RoundClock.steps(event.round)
            if run.trace.truncated and steps[-1] > last_step:
                continue
            v, w = event.recruiter, event.accepter
            vid, wid = ids[v].wire_value, ids[w].wire_value
            expected = [
                (steps[0], v, w, Solo(vid)),
                (steps[1], w, v, Pair(vid, wid)),
                (steps[2], v, w, Pair(vid, wid)),
            ]
            for step, sender, listener, message in expected:
                entry = by_step.get(step)
                if entry is None:
                    problems.append(f"round {event.round}: no trace entry for step {step}")
                    continue
                action = entry.actions.get(sender)
                if action is None or action.kind is not ActionKind.SEND or action.message != message:
                    problems.append(f"step {step}: node {sender} did not send {message}")
                if entry.receptions.get(listener) != (sender, message):
                    problems.append(f"step {step}: node {listener} did not hear {message} from {sender}")
        return problems

    @auto_wrap_error
    def estimate_pair_probability(self, graph: Graph, matched: Iterable[int], rate: float,
                                  edge: tuple[int, int], rounds: int, seed: int) -> PairEstimate:
        """Monte Carlo frequency of `edge` pairing in one round at a fixed rate."""
        matched = frozenset(matched)
        v, w = edge
        if v in matched or w in matched:
            raise ConfigError(f"Edge {edge} has a matched endpoint")
        if not graph.has_edge(v, w):
            raise ConfigError(f"{edge} is not an edge")
        process = RepeatedRoundProcess(rate, rounds, index_ids(graph.n), (v, w), inactive=matched)
        engine.run(graph, process, 3 * rounds, seed, id_width=id_width(graph.n))
        return PairEstimate(process.hits, rounds)
