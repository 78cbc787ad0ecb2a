"""
Command-line front end.

Subcommands: generate, discover, verify, bounds, export. Exit status is 0 on
success, 1 on invalid input or an infeasible request, and 2 when ``verify``
finds a recovered graph that differs from the truth.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import benchgen
from .graph import dumps_graph, graph_to_dict, loads_graph, rd, to_dot
from .oracle import InterventionalOracle
from .pipeline import PipelineConfig, PipelineResult, discover
from .sepsys import InfeasibleBound

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors share the validation exit code; 2 is reserved for mismatches
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _read_graph(path):
    try:
        return loads_graph(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _read_result(path):
    try:
        return PipelineResult.from_dict(json.loads(Path(path).read_text()))
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_mode(value):
    if value == "unbounded":
        return None
    if value.startswith("bounded:"):
        try:
            m = int(value.split(":", 1)[1])
        except ValueError:
            m = 0
        if m >= 1:
            return m
    raise argparse.ArgumentTypeError(f"expected 'unbounded' or 'bounded:M' with M >= 1, got {value!r}")


def _parse_cover(value):
    if value in ("exact", "greedy"):
        return value, None
    if value.startswith("random:"):
        try:
            return "randomized", int(value.split(":", 1)[1])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected exact, greedy or random:SEED, got {value!r}")


def _parse_layers(value):
    try:
        return [[int(s) for s in layer.split(",")] for layer in value.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected e.g. '2;1,3', got {value!r}") from None


def cmd_generate(args):
    if args.layers is not None:
        try:
            g = benchgen.worst_case_layered(args.layers)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    else:
        if args.n is None:
            raise CliError("generate needs --n or --layers")
        try:
            spec = benchgen.GenSpec(args.n, args.p_dir, args.p_bi, args.force_cycles, args.seed)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        g = benchgen.random_dmg(spec)
    _emit(dumps_graph(g), args.out)
    return EXIT_OK


def cmd_discover(args):
    g = _read_graph(args.graph)
    oracle = InterventionalOracle(g, args.scenario)
    cover, seed = args.cover
    if args.mode is not None and not oracle.m_feasible(args.mode):
        floor = max(1, oracle.bounded_floor())
        raise CliError(f"M={args.mode} is below this instance's floor of {floor}")
    config = PipelineConfig(bound=args.mode, cover=cover, seed=seed,
                            strong_coloring=args.strong_coloring, step0=args.step0)
    try:
        result = discover(oracle, config)
    except InfeasibleBound as exc:
        raise CliError(str(exc)) from None
    _emit(result.dumps(), args.out)
    if args.log:
        Path(args.log).write_text(oracle.log.to_json() + "\n")
    return EXIT_OK


def _verify_one(graph_path, result_path):
    truth = _read_graph(graph_path)
    result = _read_result(result_path)
    return result.recovered == rd(truth)


def cmd_verify(args):
    if args.dir is None:
        if not (args.graph and args.result):
            raise CliError("verify needs --graph and --result, or --dir")
        ok = _verify_one(args.graph, args.result)
        if not ok:
            print(f"{args.result}: recovered graph differs from the truth", file=sys.stderr)
        return EXIT_OK if ok else EXIT_MISMATCH
    root = Path(args.dir)
    graphs = sorted(p for p in root.glob("*.json") if not p.name.endswith(".result.json"))
    if not graphs:
        raise CliError(f"no instances found in {root}")

    def job(p):
        try:
            return p, _verify_one(p, p.with_name(p.stem + ".result.json")), None
        except CliError as exc:
            return p, False, str(exc)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        outcomes = list(pool.map(job, graphs))
    invalid = mismatch = False
    for p, ok, err in outcomes:
        if err:
            print(err, file=sys.stderr)
            invalid = True
        elif not ok:
            print(f"{p.name}: recovered graph differs from the truth", file=sys.stderr)
            mismatch = True
    if invalid:
        return EXIT_INVALID
    return EXIT_MISMATCH if mismatch else EXIT_OK


def cmd_bounds(args):
    g = _read_graph(args.graph)
    result = _read_result(args.result) if args.result else None
    report = benchgen.bounds_report(g, result, args.scenario)
    text = benchgen.report_json(report) if args.format == "json" else benchgen.report_table(report)
    _emit(text, args.out)
    return EXIT_OK


def cmd_export(args):
    g = _read_graph(args.graph)
    text = to_dot(g) if args.format == "dot" else json.dumps(graph_to_dict(g), indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="dmgdesign", description="Experiment design for causal structure discovery in directed mixed graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random or worst-case instance")
    g.add_argument("--n", type=int)
    g.add_argument("--p-dir", type=float, default=0.3)
    g.add_argument("--p-bi", type=float, default=0.2)
    g.add_argument("--force-cycles", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--layers", type=_parse_layers,
                   help="worst-case instance, SCC sizes per layer, e.g. '2;1,3'")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("discover", help="recover the graph through the interventional oracle")
    d.add_argument("--graph", required=True)
    d.add_argument("--scenario", choices=["d", "sigma"], default="sigma")
    d.add_argument("--mode", type=_parse_mode, default=None, metavar="{unbounded,bounded:M}")
    d.add_argument("--cover", type=_parse_cover, default=("exact", None),
                   metavar="{exact,greedy,random:SEED}")
    d.add_argument("--strong-coloring", choices=["exact", "greedy"], default="exact")
    d.add_argument("--step0", choices=["trusted", "faithful"], default="trusted")
    d.add_argument("--out")
    d.add_argument("--log", help="also write the experiment log as JSON")
    d.set_defaults(func=cmd_discover)

    v = sub.add_parser("verify", help="check a result against the truth")
    v.add_argument("--graph")
    v.add_argument("--result")
    v.add_argument("--dir", help="verify every NAME.json against NAME.result.json")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="report instance quantities and bound targets")
    b.add_argument("--graph", required=True)
    b.add_argument("--result")
    b.add_argument("--scenario", choices=["d", "sigma"], default="sigma")
    b.add_argument("--format", choices=["table", "json"], default="table")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    e = sub.add_parser("export", help="convert a graph to DOT or canonical JSON")
    e.add_argument("--graph", required=True)
    e.add_argument("--format", choices=["dot", "json"], default="dot")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors exit through _Parser.error
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
