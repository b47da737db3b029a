# radio/engine.py
"""
Globally synchronized timestep loop of the no-collision-detection radio model.

A listener receives a message iff exactly one of its neighbors sends in that
timestep; silence and collisions both read as Nothing. Sending or listening
costs one energy unit, sleeping costs nothing.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping, NamedTuple, Sequence

from core.errors import ProtocolError
from network.model import Graph
from radio.ledger import ActionTrace, EnergyLedger
from radio.messages import Action, ActionKind, Message, check_message
from radio.protocol import Protocol
from radio.streams import NodeStreams

logger = logging.getLogger(__name__)


class RadioModel(Enum):
    NO_CD = "no_cd"
    # Listed so configurations can name it; the engine rejects it.
    CD = "cd"


class Reception(NamedTuple):
    sender: int
    message: Message


@dataclass
class RunResult:
    states: list[Any]
    ledger: EnergyLedger
    trace: ActionTrace | None
    timesteps: int


def _as_mapping(graph: Graph, actions: Mapping[int, Action] | Sequence[Action]) -> Mapping[int, Action]:
    if isinstance(actions, Mapping):
        for v in actions:
            if not 0 <= v < graph.n:
                raise ProtocolError(f"Action for node {v} outside [0, {graph.n})")
        return actions
    if len(actions) != graph.n:
        raise ProtocolError(f"Expected {graph.n} actions, got {len(actions)}")
    return dict(enumerate(actions))


def deliver(graph: Graph, actions: Mapping[int, Action] | Sequence[Action]) -> dict[int, Reception]:
    """
    Apply the delivery rule to one timestep.

    Args:
        actions: one Action per node (sequence) or a sparse mapping where
            missing nodes sleep

    Returns:
        {listener: Reception} for every listener with exactly one sending
        neighbor; every other node receives Nothing.
    """
    actions = _as_mapping(graph, actions)
    hits: dict[int, int] = {}
    last_sender: dict[int, int] = {}
    for v, action in actions.items():
        if action.kind is not ActionKind.SEND:
            continue
        for u in graph.adjacency[v]:
            hits[u] = hits.get(u, 0) + 1
            last_sender[u] = v

    received = {}
    for u, count in hits.items():
        if count != 1:
            continue
        action = actions.get(u)
        if action is None or action.kind is not ActionKind.LISTEN:
            continue
        sender = last_sender[u]
        received[u] = Reception(sender, actions[sender].message)
    return received


def run(graph: Graph, protocol: Protocol, total_timesteps: int, seed: int,
        id_width: int, trace_cap: int | None = None,
        stream_salt: tuple[int, ...] = (),
        model: RadioModel = RadioModel.NO_CD) -> RunResult:
    """
    Execute exactly `total_timesteps` synchronized timesteps.

    Each timestep: collect actions, check message sizes, deliver, charge
    energy, hand receptions back to the protocol.

    Raises:
        ProtocolError: unsupported model, negative step count, bad action
        MessageSizeError: a message exceeds the size bound
    """
    if model is not RadioModel.NO_CD:
        raise ProtocolError(f"Radio model {model.value} is not supported; only no_cd is")
    if total_timesteps < 0:
        raise ProtocolError(f"total_timesteps must be >= 0, got {total_timesteps}")

    streams = NodeStreams(seed, graph.n, stream_salt)
    ledger = EnergyLedger(graph.n)
    trace = ActionTrace(trace_cap) if trace_cap else None

    protocol.start(graph, streams)
    for step in range(1, total_timesteps + 1):
        actions = protocol.actions(step)
        receptions: dict[int, Reception] = {}
        if actions:
            for v, action in actions.items():
                if action.kind is ActionKind.SEND:
                    check_message(action.message, id_width)
            receptions = deliver(graph, actions)
            ledger.charge(step, [v for v, a in actions.items() if a.costs_energy])
            if trace is not None:
                trace.record(step, actions, {u: (r.sender, r.message) for u, r in receptions.items()})
        ledger.close_step(step)
        protocol.observe(step, {u: r.message for u, r in receptions.items()})

    if trace is not None and trace.truncated:
        logger.info("trace truncated at %d entries", trace.cap)
    return RunResult(protocol.states(), ledger, trace, total_timesteps)
