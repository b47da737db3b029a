# radio/protocol.py
from abc import ABC, abstractmethod
from typing import Any, Mapping

from network.model import Graph
from radio.messages import Action, Message
from radio.streams import NodeStreams


class Protocol(ABC):
    """
    The per-node processes of one run, driven by the engine.

    Every node's action at a timestep must depend only on its own state, the
    timestep, what it received earlier and its own random stream. Nodes left
    out of the mapping returned by actions() sleep.
    """

    @abstractmethod
    def start(self, graph: Graph, streams: NodeStreams) -> None:
        ...

    @abstractmethod
    def actions(self, step: int) -> Mapping[int, Action]:
        ...

    @abstractmethod
    def observe(self, step: int, receptions: Mapping[int, Message]) -> None:
        """receptions holds only the listeners that received a message."""

    @abstractmethod
    def states(self) -> list[Any]:
        ...


class ScriptedProtocol(Protocol):
    """Replays fixed actions: script[step][node] -> Action. Records what each node heard."""

    def __init__(self, script: Mapping[int, Mapping[int, Action]] | None = None):
        self.script = {step: dict(acts) for step, acts in (script or {}).items()}
        self.heard: list[list[tuple[int, Message]]] = []

    def start(self, graph: Graph, streams: NodeStreams) -> None:
        self.heard = [[] for _ in range(graph.n)]

    def actions(self, step: int) -> Mapping[int, Action]:
        return self.script.get(step, {})

    def observe(self, step: int, receptions: Mapping[int, Message]) -> None:
        for v, message in receptions.items():
            self.heard[v].append((step, message))

    def states(self) -> list[Any]:
        return self.heard
