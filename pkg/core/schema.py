# core/schema.py
from typing import Any, Callable


class BaseSchema:
    """
    Declarative description of an agent workflow.

    Attributes:
        state_type: TypedDict describing the workflow state
        state_mapping: {key: {"input": {parent: child}, "output": {child: parent}}}
            used when the workflow runs as a subgraph of another agent
        nodes: [(name, stub)] in execution order; the first one is the entry point
        direct_edges: [(source, target)]
        conditional_edges: [(source, router, {route: target})]
    """
    state_type: type = dict
    state_mapping: dict[str, dict[str, dict[str, str]]] = {}
    nodes: list[tuple[str, Callable[..., Any]]] = []
    direct_edges: list[tuple[str, str]] = []
    conditional_edges: list[tuple[str, Callable[..., str], dict[str, str]]] = []
