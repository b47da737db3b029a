# cli/commands.py
"""
Command-line surface: `match`, `naf`, `oracle <sub>` and `sweep`.

Every command returns its process exit status; errors derived from
RadioMatchError propagate to the entry point.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from agents.matching_agent import MatchingAgentTool
from agents.orchestrator import RunConfig, run_batch, run_sweep
from cli.cli_interface import CLIInterface
from cli.report import FORMATS, render, write_report
from core.errors import ConfigError
from network.edgelist import read_edge_list
from network.enumeration import connected_graphs_upto
from network.generators import generate, parse_family
from network.model import Graph, is_maximal
from oracles import (
    greedy_matching,
    lemma_bound,
    maximum_matching_size,
    minimum_matching_cover,
    minimum_naf,
    pair_probability_exact,
    residual_max_degree,
    verify_naf_mc_theorem,
)

logger = logging.getLogger(__name__)

ORACLES = ("mc", "nafload", "pairprob", "verify_thm2", "greedy")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from exc


def _edge(text: str) -> tuple[int, int]:
    values = _int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"an edge is two node indices 'u,v', got '{text}'")
    return values[0], values[1]


def _add_graph_source(parser: argparse.ArgumentParser, required: bool = True) -> None:
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("--gen", help="generator spec, e.g. path:8, erdos_renyi:64,0.2, grid:4,4")
    source.add_argument("--graph", help="edge-list file ('n m' header, then 'u v' lines)")
    parser.add_argument("--graph-seed", type=int, default=0, help="seed of random generators (default: 0)")


BUDGET_HELP = ("wall-clock budget checked before each trial starts; trials not started in time "
               "are marked incomplete, a trial already running finishes")


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--C", type=float, default=None, help="schedule constant (default: config)")
    parser.add_argument("--log-mode", choices=("natural", "binary"), default=None)
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: config default_seed)")
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--history", action="store_true",
                        help="per-round validity checks, action trace and handshake audit")
    parser.add_argument("--trace-cap", type=int, default=None, help="trace entries kept with --history")
    parser.add_argument("--id-mode", choices=("index", "random"), default=None)
    parser.add_argument("--id-bits-factor", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--budget-seconds", type=float, default=None, help=BUDGET_HELP)
    parser.add_argument("--output", default=None, help="report path, '-' for stdout")
    parser.add_argument("--format", choices=FORMATS, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radiomatch",
        description="Energy-efficient maximal matching and neighbor assignment in radio networks",
    )
    parser.add_argument("--config", default=None, help="path to config.json")
    parser.add_argument("--quiet", action="store_true", help="no console summary or progress bar")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="-v info, -vv debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    match = sub.add_parser("match", help="run the distributed matching protocol")
    _add_graph_source(match)
    _add_run_options(match)

    naf = sub.add_parser("naf", help="build a neighbor assignment from repeated matchings")
    _add_graph_source(naf)
    _add_run_options(naf)
    naf.add_argument("--k", type=int, default=None, help="restricted iterations after the first matching")
    naf.add_argument("--L", type=int, default=None, help="known NAF load; k = ceil(2 L ln n)")

    oracle = sub.add_parser("oracle", help="exact centralized computations on small graphs")
    oracle.add_argument("oracle", choices=ORACLES)
    _add_graph_source(oracle, required=False)
    oracle.add_argument("--all-connected-graphs-upto", type=int, default=None, metavar="N",
                        help="verify_thm2 over every connected graph with 2..N vertices")
    oracle.add_argument("--edge", type=_edge, default=None, help="pairprob edge 'v,w'")
    oracle.add_argument("--r", type=float, default=None, help="pairprob participation rate")
    oracle.add_argument("--matched", type=_int_list, default=[], help="pairprob matched nodes 'a,b,...'")
    oracle.add_argument("--full", action="store_true", help="pairprob: enumerate every unmatched node")
    oracle.add_argument("--mc-rounds", type=int, default=0,
                        help="pairprob: also simulate this many single rounds")
    oracle.add_argument("--seed", type=int, default=None, help="seed of the Monte Carlo rounds")
    oracle.add_argument("--order-seed", type=int, default=0, help="greedy edge shuffle seed")
    oracle.add_argument("--json", action="store_true", help="print the result as JSON")

    sweep = sub.add_parser("sweep", help="grid of match batches over n and C")
    sweep.add_argument("--gen", required=True, help="generator with an {n} placeholder, e.g. path:{n}")
    sweep.add_argument("--n", type=_int_list, required=True, help="comma-separated n values")
    sweep.add_argument("--C", type=_float_list, required=True, help="comma-separated C values")
    sweep.add_argument("--graph-seed", type=int, default=0)
    sweep.add_argument("--log-mode", choices=("natural", "binary"), default=None)
    sweep.add_argument("--seed", type=int, default=None)
    sweep.add_argument("--trials", type=int, default=None)
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--budget-seconds", type=float, default=None, help=BUDGET_HELP)
    sweep.add_argument("--output", default=None)
    sweep.add_argument("--format", choices=FORMATS, default=None)
    return parser


def _pick(value, fallback):
    return fallback if value is None else value


def resolve_seed(args: argparse.Namespace, config: dict[str, Any]) -> tuple[int, str]:
    if args.seed is not None:
        return args.seed, "cli"
    return int(config["default_seed"]), "config_default"


def run_config_from_args(args: argparse.Namespace, config: dict[str, Any]) -> RunConfig:
    """Merge parsed arguments over config defaults into a validated RunConfig."""
    seed, seed_source = resolve_seed(args, config)
    return RunConfig(
        command=args.command,
        graph_path=args.graph,
        generator=args.gen,
        graph_seed=args.graph_seed,
        C=_pick(args.C, config["schedule"]["C"]),
        log_mode=_pick(args.log_mode, config["schedule"]["log_mode"]),
        seed=seed,
        seed_source=seed_source,
        trials=_pick(args.trials, config["trials"]),
        k=getattr(args, "k", None),
        L=getattr(args, "L", None),
        history=args.history,
        trace_cap=_pick(args.trace_cap, config["trace_cap"]),
        id_mode=_pick(args.id_mode, config["id_mode"]),
        id_bits_factor=_pick(args.id_bits_factor, config["id_bits_factor"]),
        workers=_pick(args.workers, config["workers"]),
        budget_seconds=args.budget_seconds,
    )


def _slug(text: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in text).strip("_")


def emit_report(report: dict[str, Any], args: argparse.Namespace, config: dict[str, Any],
                cli: CLIInterface, label: str) -> None:
    fmt = _pick(args.format, config["report_format"])
    if args.output == "-":
        sys.stdout.write(render(report, fmt))
        return
    if args.output is not None:
        path = Path(args.output)
    else:
        seed = report["config"]["seed"]
        path = Path(config["output_dir"]) / f"{report['command']}_{_slug(label)}_seed{seed}.{fmt}"
    cli.show_saved(write_report(report, path, fmt))


def cmd_match(args: argparse.Namespace, config: dict[str, Any], cli: CLIInterface) -> int:
    run_config = run_config_from_args(args, config)
    report = run_batch(run_config, progress=cli.progress_enabled())
    cli.show_match_summary(report)
    emit_report(report, args, config, cli, report["graph"]["source"])
    # maximality misses are a rate, not a failure
    return 1 if report["batch"]["validity_violations"] else 0


def cmd_naf(args: argparse.Namespace, config: dict[str, Any], cli: CLIInterface) -> int:
    run_config = run_config_from_args(args, config)
    report = run_batch(run_config, progress=cli.progress_enabled())
    cli.show_naf_summary(report)
    emit_report(report, args, config, cli, report["graph"]["source"])
    return 0


def cmd_sweep(args: argparse.Namespace, config: dict[str, Any], cli: CLIInterface) -> int:
    if not args.n or not args.C:
        raise ConfigError("sweep needs at least one n and one C value")
    seed, seed_source = resolve_seed(args, config)
    template = RunConfig(
        command="match",
        generator=args.gen.replace("{n}", str(args.n[0])),
        graph_seed=args.graph_seed,
        C=args.C[0],
        log_mode=_pick(args.log_mode, config["schedule"]["log_mode"]),
        seed=seed,
        seed_source=seed_source,
        trials=_pick(args.trials, config["trials"]),
        id_mode=config["id_mode"],
        id_bits_factor=config["id_bits_factor"],
        workers=_pick(args.workers, config["workers"]),
        budget_seconds=args.budget_seconds,
    )
    report = run_sweep(template, args.gen, args.n, args.C, progress=cli.progress_enabled())
    cli.show_sweep_summary(report)
    emit_report(report, args, config, cli, args.gen)
    return 1 if any(row["validity_violations"] for row in report["cells"]) else 0


def load_graph(args: argparse.Namespace) -> Graph:
    if args.graph is not None:
        return read_edge_list(args.graph)
    if args.gen is not None:
        return generate(parse_family(args.gen), seed=args.graph_seed)
    raise ConfigError("Give a graph with --gen or --graph")


def _print_oracle(cli: CLIInterface, args: argparse.Namespace, title: str,
                  values: dict[str, Any], verdict: str | None = None) -> None:
    if args.json:
        payload = dict(values)
        if verdict:
            payload["verdict"] = verdict
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        cli.show_oracle_result(title, values, verdict)


def _verify_all(args: argparse.Namespace, limits: dict[str, Any], cli: CLIInterface) -> int:
    count, counterexamples, broken = 0, [], 0
    graphs = connected_graphs_upto(args.all_connected_graphs_upto, min_n=2,
                                   limit=limits["enumeration_max_nodes"])
    for graph in graphs:
        check = verify_naf_mc_theorem(graph, limits["cover_max_nodes"], limits["naf_max_nodes"],
                                      limits["naf_max_degree_product"])
        count += 1
        if not check.consistent:
            counterexamples.append({"n": graph.n, "edges": [list(e) for e in graph.edges],
                                    "load": check.naf_load, "mc": check.cover_number})
        if not check.constructions_ok:
            broken += 1
    verdict = (f"consistent: {count} graphs, {len(counterexamples)} counterexamples"
               if not counterexamples else
               f"inconsistent: {count} graphs, {len(counterexamples)} counterexamples")
    _print_oracle(cli, args, f"verify_thm2 over connected graphs up to n={args.all_connected_graphs_upto}",
                  {"graphs": count, "counterexamples": len(counterexamples),
                   "construction_failures": broken}, verdict)
    for example in counterexamples:
        logger.warning("counterexample %s", example)
    return 1 if counterexamples or broken else 0


def cmd_oracle(args: argparse.Namespace, config: dict[str, Any], cli: CLIInterface) -> int:
    limits = config["oracle_limits"]
    name = args.oracle

    if name == "verify_thm2" and args.all_connected_graphs_upto is not None:
        return _verify_all(args, limits, cli)

    graph = load_graph(args)
    label = args.gen or args.graph

    if name == "mc":
        cover = minimum_matching_cover(graph, limits["cover_max_nodes"])
        _print_oracle(cli, args, f"matching cover number of {label}", {
            "mc": cover.size,
            "witness": [sorted(list(p) for p in m.pairs) for m in cover.matchings],
        })
        return 0

    if name == "nafload":
        best = minimum_naf(graph, limits["naf_max_nodes"], limits["naf_max_degree_product"])
        _print_oracle(cli, args, f"minimum NAF load of {label}", {
            "load": best.load(),
            "witness": list(best.target),
        })
        return 0

    if name == "verify_thm2":
        check = verify_naf_mc_theorem(graph, limits["cover_max_nodes"], limits["naf_max_nodes"],
                                      limits["naf_max_degree_product"])
        verdict = "consistent" if check.consistent else "COUNTEREXAMPLE"
        _print_oracle(cli, args, f"NAF load vs matching cover number on {label}", {
            "load": check.naf_load,
            "mc": check.cover_number,
            "constructions_ok": check.constructions_ok,
        }, verdict)
        for note in check.notes:
            logger.warning(note)
        return 0 if check.consistent and check.constructions_ok else 1

    if name == "greedy":
        matching = greedy_matching(graph, args.order_seed)
        values = {
            "size": len(matching),
            "matching": [list(p) for p in matching],
            "maximal": is_maximal(graph, matching),
        }
        if graph.n <= limits["maximum_matching_max_nodes"]:
            values["maximum_matching_size"] = maximum_matching_size(graph, limits["maximum_matching_max_nodes"])
        _print_oracle(cli, args, f"greedy matching of {label} (order seed {args.order_seed})", values)
        return 0

    # pairprob
    if args.edge is None or args.r is None:
        raise ConfigError("pairprob needs --edge and --r")
    exact = pair_probability_exact(graph, args.matched, args.r, args.edge,
                                   reduce=not args.full, limit=limits["pair_max_nodes"])
    delta = residual_max_degree(graph, args.matched)
    bound = lemma_bound(args.r, delta)
    values = {
        "exact": str(exact.value),
        "exact_float": float(exact.value),
        "bound": float(bound),
        "residual_max_degree": delta,
        "method": exact.method,
    }
    ok = exact.value >= bound
    if args.mc_rounds > 0:
        seed = args.seed if args.seed is not None else int(config["default_seed"])
        estimate = MatchingAgentTool().estimate_pair_probability(
            graph, args.matched, args.r, args.edge, args.mc_rounds, seed
        )
        values.update({
            "monte_carlo": estimate.frequency,
            "monte_carlo_stderr": estimate.standard_error,
            "monte_carlo_agrees": estimate.agrees_with(float(exact.value)),
        })
    _print_oracle(cli, args, f"pair probability of {args.edge} on {label} at r={args.r}", values,
                  "exact >= bound" if ok else "exact < bound")
    return 0 if ok else 1


COMMANDS = {
    "match": cmd_match,
    "naf": cmd_naf,
    "oracle": cmd_oracle,
    "sweep": cmd_sweep,
}


def dispatch(args: argparse.Namespace, config: dict[str, Any], cli: CLIInterface) -> int:
    return COMMANDS[args.command](args, config, cli)


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
