# core/workflow.py
import logging
from typing import Any, Callable

from langgraph.graph import END, START, StateGraph

logger = logging.getLogger(__name__)


class BaseGraph:
    """
    Base class for agent controllers.

    Subclasses copy nodes and edges from their schema and implement every
    node as a method with the same name. compile() binds those methods into
    a langgraph StateGraph.
    """

    def __init__(self, state_type: type):
        self.state_type = state_type
        self.nodes: list[tuple[str, Callable[..., Any]]] = []
        self.direct_edges: list[tuple[str, str]] = []
        self.conditional_edges: list[tuple[str, Callable[..., str], dict[str, str]]] = []

    def _resolve_node(self, name: str, stub: Callable[..., Any]) -> Callable[..., Any]:
        method = getattr(self, name, None)
        if callable(method):
            return self._logged(name, method)
        return stub

    @staticmethod
    def _logged(name: str, method: Callable[..., Any]) -> Callable[..., Any]:
        def node(state: dict) -> dict:
            logger.debug("node %s", name)
            return method(state)

        node.__name__ = name
        return node

    def compile(self):
        """Build and compile the StateGraph described by nodes and edges."""
        if not self.nodes:
            raise ValueError(f"{type(self).__name__} declares no nodes")

        builder = StateGraph(self.state_type)
        for name, stub in self.nodes:
            builder.add_node(name, self._resolve_node(name, stub))

        builder.add_edge(START, self.nodes[0][0])

        has_exit = set()
        for source, target in self.direct_edges:
            builder.add_edge(source, target)
            has_exit.add(source)
        for source, router, mapping in self.conditional_edges:
            builder.add_conditional_edges(source, router, mapping)
            has_exit.add(source)

        for name, _ in self.nodes:
            if name not in has_exit:
                builder.add_edge(name, END)

        return builder.compile()

    @staticmethod
    def register_subgraph(compiled, state_mapping: dict[str, dict[str, dict[str, str]]]):
        """
        Wrap a compiled subgraph so a parent node can call it with its own state.

        Returns:
            callable(mapping_key, parent_state, config=None) -> dict of parent keys
        """

        def invoke(mapping_key: str, parent_state: dict, config: dict | None = None) -> dict:
            if mapping_key not in state_mapping:
                raise KeyError(f"Unknown state mapping '{mapping_key}'")
            mapping = state_mapping[mapping_key]
            child_input = {
                child_key: parent_state[parent_key]
                for parent_key, child_key in mapping["input"].items()
                if parent_key in parent_state
            }
            result = compiled.invoke(child_input, config=config)
            return {
                parent_key: result[child_key]
                for child_key, parent_key in mapping["output"].items()
                if child_key in result
            }

        return invoke
