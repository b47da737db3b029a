# tests/unit/test_core.py
"""
Unit tests for the core workflow helpers: error wrapping, graph compilation
and subgraph invocation.
"""

from typing import TypedDict

from core import BaseGraph, BaseTool, auto_wrap_error, test_wrapper
from core.errors import GraphError, ToolExecutionError


class _Tool(BaseTool):
    @auto_wrap_error
    def explode(self):
        raise KeyError("missing")

    @auto_wrap_error
    def refuse(self):
        raise GraphError("bad graph")


class _CounterState(TypedDict, total=False):
    value: int
    doubled: int


class _Counter(BaseGraph):
    def __init__(self):
        super().__init__(_CounterState)
        self.nodes = [("add_one", None), ("double", None)]
        self.direct_edges = [("add_one", "double")]

    def add_one(self, state: dict) -> dict:
        return {"value": state["value"] + 1}

    def double(self, state: dict) -> dict:
        return {"doubled": state["value"] * 2}


@test_wrapper
def test_auto_wrap_error_names_origin():
    try:
        _Tool().explode()
        assert False, "Should have raised ToolExecutionError"
    except ToolExecutionError as e:
        assert str(e).startswith("_Tool.explode:")
        assert isinstance(e.__cause__, KeyError)


@test_wrapper
def test_auto_wrap_error_passes_domain_errors():
    try:
        _Tool().refuse()
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "bad graph" in str(e)


@test_wrapper
def test_compile_binds_methods():
    result = _Counter().compile().invoke({"value": 4})
    assert result == {"value": 5, "doubled": 10}


@test_wrapper
def test_compile_without_nodes():
    graph = BaseGraph(dict)
    try:
        graph.compile()
        assert False, "Should have raised ValueError"
    except ValueError as e:
        assert "no nodes" in str(e)


@test_wrapper
def test_register_subgraph_maps_keys():
    mapping = {"count": {"input": {"start": "value"}, "output": {"doubled": "result"}}}
    call = BaseGraph.register_subgraph(_Counter().compile(), mapping)
    assert call("count", {"start": 1, "unrelated": "x"}) == {"result": 4}


@test_wrapper
def test_register_subgraph_unknown_key():
    call = BaseGraph.register_subgraph(_Counter().compile(), {})
    try:
        call("count", {})
        assert False, "Should have raised KeyError"
    except KeyError as e:
        assert "count" in str(e)
