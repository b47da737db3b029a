# tests/integration/test_cli.py
"""
Integration tests for the command-line surface, driven through main().
"""

import json
from unittest.mock import patch

from cli.commands import build_parser
from core import test_wrapper
from core.errors import ConfigError, GraphError
from main import main


@test_wrapper
def test_match_writes_json_report(tmp_path):
    out = tmp_path / "match.json"
    code = main(["--quiet", "match", "--gen", "path:2", "--seed", "3", "--output", str(out)])

    assert code == 0
    report = json.loads(out.read_text())
    assert report["config"]["seed"] == 3
    assert report["config"]["seed_source"] == "cli"
    assert report["batch"]["validity_violations"] == 0


@test_wrapper
def test_match_default_output_path(tmp_path):
    with patch.dict("os.environ", {"RADIOMATCH_OUTPUT_DIR": str(tmp_path)}):
        code = main(["--quiet", "match", "--gen", "path:2", "--C", "1"])
    assert code == 0
    report = json.loads((tmp_path / "match_path_2_seed0.json").read_text())
    assert report["config"]["seed_source"] == "config_default"
    assert report["config"]["C"] == 1.0


@test_wrapper
def test_match_report_to_stdout_as_csv(capsys):
    code = main(["--quiet", "match", "--gen", "path:3", "--C", "1", "--trials", "2",
                 "--output", "-", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("trial,seed,completed,")
    assert len(lines) == 3


@test_wrapper
def test_match_from_edge_list_file(tmp_path):
    graph_file = tmp_path / "triangle.edges"
    graph_file.write_text("# triangle\n3 3\n0 1\n1 2\n0 2\n")
    out = tmp_path / "report.json"
    code = main(["--quiet", "match", "--graph", str(graph_file), "--C", "1", "--history",
                 "--trace-cap", "5000", "--output", str(out)])

    assert code == 0
    trial = json.loads(out.read_text())["trials"][0]
    assert trial["history_checked"]
    assert trial["handshake_problems"] == 0


@test_wrapper
def test_naf_command(tmp_path):
    out = tmp_path / "naf.json"
    code = main(["--quiet", "naf", "--gen", "path:2", "--k", "0", "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["trials"][0]["load"] == 1
    assert report["batch"]["full_coverage_rate"] == 1.0


@test_wrapper
def test_oracle_mc_json(capsys):
    code = main(["oracle", "mc", "--gen", "star:3", "--json"])
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert result["mc"] == 3
    assert len(result["witness"]) == 3


@test_wrapper
def test_oracle_nafload_json(capsys):
    code = main(["oracle", "nafload", "--gen", "complete:3", "--json"])
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert result["load"] == 1
    assert len(result["witness"]) == 3


@test_wrapper
def test_oracle_pairprob_json(capsys):
    code = main(["oracle", "pairprob", "--gen", "path:2", "--edge", "0,1", "--r", "0.5", "--json"])
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert result["exact"] == "1/8"
    assert result["bound"] == 0.125
    assert result["verdict"] == "exact >= bound"


@test_wrapper
def test_oracle_pairprob_needs_rate():
    try:
        main(["oracle", "pairprob", "--gen", "path:2", "--edge", "0,1"])
        assert False, "Should have raised ConfigError"
    except ConfigError as e:
        assert "--r" in str(e)


@test_wrapper
def test_oracle_verify_all_connected_graphs(capsys):
    code = main(["oracle", "verify_thm2", "--all-connected-graphs-upto", "4", "--json"])
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert result["verdict"] == "consistent: 9 graphs, 0 counterexamples"
    assert result["construction_failures"] == 0


@test_wrapper
def test_oracle_greedy_reports_optimum(capsys):
    code = main(["oracle", "greedy", "--gen", "path:4", "--order-seed", "2", "--json"])
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert result["maximal"]
    assert result["maximum_matching_size"] == 2
    assert result["size"] in (1, 2)


@test_wrapper
def test_sweep_command(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(["--quiet", "sweep", "--gen", "path:{n}", "--n", "2,3", "--C", "1",
                 "--output", str(out), "--format", "csv"])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("n,C,generator,")
    assert len(lines) == 3


@test_wrapper
def test_unknown_generator_propagates():
    try:
        main(["--quiet", "match", "--gen", "hypercube:3", "--output", "-"])
        assert False, "Should have raised GraphError"
    except GraphError as e:
        assert "hypercube" in str(e)


@test_wrapper
def test_graph_sources_are_exclusive():
    try:
        main(["match", "--gen", "path:2", "--graph", "g.edges"])
        assert False, "Should have exited"
    except SystemExit as e:
        assert e.code == 2


@test_wrapper
def test_budget_help_says_running_trials_finish(capsys):
    for command in ("match", "naf", "sweep"):
        try:
            build_parser().parse_args([command, "--help"])
            assert False, "Should have exited after printing help"
        except SystemExit as e:
            assert e.code == 0
        help_text = " ".join(capsys.readouterr().out.split())
        assert "checked before each trial starts" in help_text, command
        assert "already running finishes" in help_text, command
