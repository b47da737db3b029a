# tests/unit/test_graph_sources.py
"""
Unit tests for graph ingestion: generators, the edge-list format and the
exhaustive connected-graph enumeration.
"""

import networkx as nx

from core import test_wrapper
from core.errors import GraphError, GuardExceededError
from network.edgelist import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from network.enumeration import connected_graphs, connected_graphs_upto
from network.generators import GraphFamily, generate, parse_family


@test_wrapper
def test_parse_family():
    family = parse_family("erdos_renyi:64,0.2")
    assert family == GraphFamily("erdos_renyi", (64.0, 0.2))
    assert family.label() == "erdos_renyi:64,0.2"


@test_wrapper
def test_parse_family_rejects_unknown_name():
    try:
        parse_family("hypercube:3")
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "hypercube" in str(e)


@test_wrapper
def test_generate_rejects_wrong_arity():
    try:
        generate("grid:4")
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "2 argument" in str(e)


@test_wrapper
def test_generate_rejects_fractional_size():
    try:
        generate("path:2.5")
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "integer" in str(e)


@test_wrapper
def test_deterministic_families():
    path = generate("path:4")
    assert path.edges == ((0, 1), (1, 2), (2, 3))

    star = generate("star:3")
    assert star.n == 4
    assert star.degree(0) == 3

    complete = generate("complete:5")
    assert complete.m == 10


@test_wrapper
def test_grid_indexing():
    """Node (row, col) is row * width + col"""
    grid = generate("grid:3,2")
    assert grid.n == 6
    assert grid.m == 7
    assert grid.has_edge(0, 1) and grid.has_edge(0, 3) and grid.has_edge(4, 5)
    assert not grid.has_edge(2, 3)


@test_wrapper
def test_cliques_joined_by_star():
    graph = generate("cliques_joined_by_star:3,4")
    assert graph.n == 13
    assert graph.neighbors(0) == (1, 5, 9)
    # 3 hub spokes + 3 * C(4, 2) clique edges
    assert graph.m == 3 + 3 * 6


@test_wrapper
def test_erdos_renyi_depends_only_on_seed():
    first = generate("erdos_renyi:30,0.3", seed=5)
    second = generate("erdos_renyi:30,0.3", seed=5)
    other = generate("erdos_renyi:30,0.3", seed=6)
    assert first == second
    assert first.n == 30
    assert first != other


@test_wrapper
def test_parse_edge_list_with_comments():
    text = "# two edges\n3 2\n\n0 1\n# middle\n1 2\n"
    graph = parse_edge_list(text)
    assert graph.n == 3
    assert graph.edges == ((0, 1), (1, 2))


@test_wrapper
def test_parse_edge_list_count_mismatch():
    try:
        parse_edge_list("3 2\n0 1\n", source="g.edges")
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "declares 2 edges but 1" in str(e)
        assert "g.edges" in str(e)


@test_wrapper
def test_parse_edge_list_reports_line_number():
    try:
        parse_edge_list("2 1\n0 x\n", source="bad.edges")
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "bad.edges:2" in str(e)


@test_wrapper
def test_parse_edge_list_rejects_self_loop():
    try:
        parse_edge_list("2 1\n1 1\n")
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "self-loop" in str(e).lower()


@test_wrapper
def test_edge_list_file_round_trip(tmp_path):
    graph = generate("grid:2,2")
    path = tmp_path / "nested" / "grid.edges"
    write_edge_list(graph, path)
    assert path.read_text().startswith("4 4\n")
    assert read_edge_list(path) == graph
    assert format_edge_list(graph) == path.read_text()


@test_wrapper
def test_read_missing_file(tmp_path):
    try:
        read_edge_list(tmp_path / "missing.edges")
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "missing.edges" in str(e)


@test_wrapper
def test_connected_graph_counts():
    """Connected graphs up to isomorphism for n = 1..6"""
    counts = [len(connected_graphs(n)) for n in range(1, 7)]
    assert counts == [1, 1, 2, 6, 21, 112]


@test_wrapper
def test_connected_graphs_are_connected_and_pairwise_non_isomorphic():
    graphs = connected_graphs(5)
    nx_graphs = [g.to_networkx() for g in graphs]
    assert all(nx.is_connected(g) for g in nx_graphs)
    for i in range(len(nx_graphs)):
        for j in range(i + 1, len(nx_graphs)):
            assert not nx.is_isomorphic(nx_graphs[i], nx_graphs[j])


@test_wrapper
def test_connected_graphs_upto_concatenates_sizes():
    graphs = list(connected_graphs_upto(4, min_n=2))
    assert [g.n for g in graphs] == [2, 3, 3] + [4] * 6


@test_wrapper
def test_enumeration_guard():
    try:
        connected_graphs(8)
        assert False, "Should have raised GuardExceededError"
    except GuardExceededError as e:
        assert "n=8" in str(e)
        assert "limit 7" in str(e)
