# agents/matching_agent/protocol.py
"""
Per-node state machine of the three-step handshake matching protocol.

Each round an unmatched node samples x from its own stream and becomes a
Recruiter (x <= r(t)/2), an Accepter (r(t)/2 < x <= r(t)) or sleeps.

Recruiter: step 1 send Solo(me); step 2 listen; if it heard Pair(me, y) it
takes y as partner and sends Pair(me, y) at step 3, otherwise it sleeps.
Accepter: step 1 listen; on Solo(x) it sends Pair(x, me) at step 2 and
listens at step 3, taking x' as partner if it hears Pair(x', me). Anything
else makes it sleep for the rest of the round.

A node with a partner sleeps for the rest of the run.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from core.errors import ConfigError, InvariantViolation, ProtocolError
from network.model import Graph, Matching, NodeId, validate_matching
from radio.ledger import RoundClock
from radio.messages import LISTEN, SLEEP, Action, Message, Pair, Solo, send
from radio.protocol import Protocol
from radio.streams import NodeStreams

logger = logging.getLogger(__name__)

LOG_MODES = ("natural", "binary")


@dataclass(frozen=True)
class ScheduleParams:
    """
    Participation schedule r(t) = 3C logn / (4C logn + t_max - t).

    logn = max(1, ln n) (or log2 n when log_mode is "binary"),
    t_max = ceil(C n logn).
    """
    n: int
    C: float = 100.0
    log_mode: str = "natural"

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if not self.C > 0:
            raise ConfigError(f"C must be positive, got {self.C}")
        if self.log_mode not in LOG_MODES:
            raise ConfigError(f"log_mode must be one of {LOG_MODES}, got '{self.log_mode}'")

    @property
    def logn(self) -> float:
        value = math.log(self.n) if self.log_mode == "natural" else math.log2(self.n)
        return max(1.0, value)

    @property
    def t_max(self) -> int:
        return math.ceil(self.C * self.n * self.logn)

    @property
    def total_timesteps(self) -> int:
        return 3 * self.t_max

    @property
    def energy_bound(self) -> float:
        return 20 * self.C * self.logn ** 2

    def rate(self, t: int) -> float:
        if not 1 <= t <= self.t_max:
            raise ProtocolError(f"Round {t} outside [1, {self.t_max}]")
        c_log = self.C * self.logn
        return 3 * c_log / (4 * c_log + self.t_max - t)


@dataclass(frozen=True)
class FixedRate:
    """Constant participation rate r for `t_max` rounds."""
    r: float
    t_max: int = 1

    def __post_init__(self):
        if not 0 < self.r <= 1:
            raise ConfigError(f"rate must be in (0, 1], got {self.r}")

    @property
    def total_timesteps(self) -> int:
        return 3 * self.t_max

    def rate(self, t: int) -> float:
        if not 1 <= t <= self.t_max:
            raise ProtocolError(f"Round {t} outside [1, {self.t_max}]")
        return self.r


class Role(IntEnum):
    ASLEEP = 0
    RECRUITER = 1
    ACCEPTER = 2


def choose_role(rate: float, x: float) -> Role:
    if x <= rate / 2:
        return Role.RECRUITER
    if x <= rate:
        return Role.ACCEPTER
    return Role.ASLEEP


def choose_roles(rate: float, xs: np.ndarray) -> np.ndarray:
    """Vector form of choose_role with the same boundaries."""
    roles = np.full(xs.shape, Role.ASLEEP, dtype=np.int8)
    roles[xs <= rate] = Role.ACCEPTER
    roles[xs <= rate / 2] = Role.RECRUITER
    return roles


RoleFilter = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, slots=True)
class NodeState:
    my_id: int
    partner: int | None = None
    role: Role = Role.ASLEEP
    heard: int | None = None


END_OF_ROUND = 4


def recruit_step(state: NodeState, phase: int, last: Message | None) -> tuple[Action | None, NodeState]:
    """
    One step of the recruiter side.

    `last` is what the node received in the previous step of the round;
    phase END_OF_ROUND consumes the step-3 reception and returns no action.
    """
    if phase == 1:
        return send(Solo(state.my_id)), state
    if phase == 2:
        return LISTEN, state
    if phase == 3:
        if isinstance(last, Pair) and last.first == state.my_id:
            return send(Pair(last.first, last.second)), replace(state, partner=last.second)
        return SLEEP, state
    return None, state


def accept_step(state: NodeState, phase: int, last: Message | None) -> tuple[Action | None, NodeState]:
    """One step of the accepter side; same conventions as recruit_step."""
    if phase == 1:
        return LISTEN, state
    if phase == 2:
        if isinstance(last, Solo):
            return send(Pair(last.sender, state.my_id)), replace(state, heard=last.sender)
        return SLEEP, replace(state, heard=None)
    if phase == 3:
        return (LISTEN if state.heard is not None else SLEEP), state
    if state.heard is not None and isinstance(last, Pair) and last.second == state.my_id:
        return None, replace(state, partner=last.first)
    return None, state


STEP_FUNCTIONS = {Role.RECRUITER: recruit_step, Role.ACCEPTER: accept_step}


def _play_round(step_fn, state: NodeState,
                receptions: Sequence[Message | None]) -> tuple[tuple[Action, ...], NodeState]:
    if len(receptions) != 3:
        raise ProtocolError(f"A round has three receptions, got {len(receptions)}")
    actions = []
    last = None
    for phase in (1, 2, 3):
        action, state = step_fn(state, phase, last)
        actions.append(action)
        # senders and sleepers hear Nothing
        last = receptions[phase - 1] if action is LISTEN else None
    _, state = step_fn(state, END_OF_ROUND, last)
    return tuple(actions), state


def recruit_round(state: NodeState, receptions: Sequence[Message | None]) -> tuple[tuple[Action, ...], NodeState]:
    """Play a whole recruiter round against the given per-step receptions."""
    return _play_round(recruit_step, replace(state, role=Role.RECRUITER, heard=None), receptions)


def accept_round(state: NodeState, receptions: Sequence[Message | None]) -> tuple[tuple[Action, ...], NodeState]:
    """Play a whole accepter round against the given per-step receptions."""
    return _play_round(accept_step, replace(state, role=Role.ACCEPTER, heard=None), receptions)


@dataclass(frozen=True)
class PairEvent:
    round: int
    recruiter: int
    accepter: int


class MatchingProcess(Protocol):
    """
    All nodes running the matching protocol under one schedule.

    Args:
        schedule: ScheduleParams or FixedRate
        ids: NodeId per node; messages carry NodeId.wire_value
        role_filter: optional map over the sampled role vector (NAF restriction)
        inactive: nodes forced to sleep throughout
        capture_history: check matching validity every round and keep
            checkpoints of M(t) whenever it grows
    """

    def __init__(self, schedule, ids: Sequence[NodeId], role_filter: RoleFilter | None = None,
                 inactive: Iterable[int] = (), capture_history: bool = False):
        self.schedule = schedule
        self.ids = tuple(ids)
        self.role_filter = role_filter
        self.inactive = frozenset(inactive)
        self.capture_history = capture_history

    def start(self, graph: Graph, streams: NodeStreams) -> None:
        if len(self.ids) != graph.n:
            raise ProtocolError(f"{len(self.ids)} ids for {graph.n} nodes")
        self.graph = graph
        self.streams = streams
        self.nodes = [NodeState(my_id=node.wire_value) for node in self.ids]
        self.wire_to_index = {node.wire_value: node.index for node in self.ids}
        self.partner = np.full(graph.n, -1, dtype=np.int64)
        self.eligible = np.ones(graph.n, dtype=bool)
        for v in self.inactive:
            self.eligible[v] = False
        self.rounds_participated = np.zeros(graph.n, dtype=np.int64)
        self.active: list[int] = []
        self.last: dict[int, Message | None] = {}
        self.events: list[PairEvent] = []
        self.history: list[tuple[int, Matching]] = [(0, Matching())] if self.capture_history else []

    def _begin_round(self, t: int) -> None:
        xs = self.streams.round_uniforms(t)
        roles = choose_roles(self.schedule.rate(t), xs)
        roles[~self.eligible] = Role.ASLEEP
        if self.role_filter is not None:
            roles = self.role_filter(roles)
            roles[~self.eligible] = Role.ASLEEP
        self.active = [int(v) for v in np.flatnonzero(roles != Role.ASLEEP)]
        for v in self.active:
            self.nodes[v] = replace(self.nodes[v], role=Role(int(roles[v])), heard=None)
        self.rounds_participated[self.active] += 1
        self.last = {}

    def actions(self, step: int) -> Mapping[int, Action]:
        t, phase = RoundClock.round_of(step), RoundClock.phase_of(step)
        if phase == 1:
            self._begin_round(t)
        acts = {}
        for v in self.active:
            state = self.nodes[v]
            action, self.nodes[v] = STEP_FUNCTIONS[state.role](state, phase, self.last.get(v))
            if action is not SLEEP:
                acts[v] = action
        return acts

    def observe(self, step: int, receptions: Mapping[int, Message]) -> None:
        self.last = {v: receptions.get(v) for v in self.active}
        if RoundClock.phase_of(step) == 3:
            self._end_round(RoundClock.round_of(step))

    def _end_round(self, t: int) -> None:
        formed = []
        for v in self.active:
            state = self.nodes[v]
            _, state = STEP_FUNCTIONS[state.role](state, END_OF_ROUND, self.last.get(v))
            self.nodes[v] = replace(state, role=Role.ASLEEP, heard=None)
            if state.partner is not None:
                w = self.wire_to_index.get(state.partner)
                if w is None:
                    raise InvariantViolation(f"Node {v} paired with unknown id {state.partner}")
                self.partner[v] = w
                self.eligible[v] = False
                if state.role is Role.RECRUITER:
                    formed.append(PairEvent(t, v, w))
        self.events.extend(formed)
        self.active = []
        self.last = {}
        if self.capture_history:
            self._check_round(t, bool(formed))

    def _check_round(self, t: int, grew: bool) -> None:
        matched = np.flatnonzero(self.partner >= 0)
        mates = self.partner[matched]
        if not np.array_equal(self.partner[mates], matched):
            raise InvariantViolation(f"Round {t}: partner variables are not mutual")
        if not grew:
            return
        current = Matching.from_partners(self.partner)
        check = validate_matching(self.graph, current)
        if not check.valid:
            raise InvariantViolation(f"Round {t}: {check.violation}")
        previous = self.history[-1][1]
        if not previous.issubset(current):
            raise InvariantViolation(f"Round {t}: matching lost pairs of round {self.history[-1][0]}")
        self.history.append((t, current))
        logger.debug("round %d: matching size %d", t, len(current))

    def states(self) -> list[NodeState]:
        return list(self.nodes)


class RepeatedRoundProcess(MatchingProcess):
    """
    Independent copies of a single round.

    Before every round all nodes outside `inactive` are reset to unmatched;
    after it, the round counts as a hit when `watch` = (v, w) paired with
    each other.
    """

    def __init__(self, rate: float, rounds: int, ids: Sequence[NodeId],
                 watch: tuple[int, int], inactive: Iterable[int] = ()):
        super().__init__(FixedRate(rate, rounds), ids, inactive=inactive)
        self.watch = watch
        self.hits = 0

    def _begin_round(self, t: int) -> None:
        self.partner.fill(-1)
        self.eligible.fill(True)
        for v in self.inactive:
            self.eligible[v] = False
        self.nodes = [NodeState(my_id=node.wire_value) for node in self.ids]
        super()._begin_round(t)

    def _end_round(self, t: int) -> None:
        super()._end_round(t)
        v, w = self.watch
        if self.partner[v] == w and self.partner[w] == v:
            self.hits += 1
