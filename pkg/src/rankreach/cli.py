"""Command-line front end: reproducible graph analyses, CSV or JSON output.

Exit codes: 0 success, 1 parse/domain errors (including usage errors),
2 numerical failures, which also print a JSON diagnostic to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .competition import (
    competitivity_interval,
    effective_competitors,
    leadership_group,
)
from .errors import DomainError, NumericalError, ParseError
from .graph import DirectedGraph, parse_edge_list, parse_graph_json
from .localization import RankContext, achieve_value, pr_interval
from .oracle import monte_carlo_interval
from .stochastic import StochasticConfig, load_config, pagerank_solve


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: graph source, model parameters, output shape."""

    input_path: str
    format: str
    output: str
    model: StochasticConfig
    seed: int | None = None
    epsilon: float = 0.01
    samples: int = 10000
    concentration: float = 1.0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        base = StochasticConfig()
        if getattr(args, "config", None):
            base = load_config(_read_text(args.config))
        model = StochasticConfig(
            alpha=args.alpha if args.alpha is not None else base.alpha,
            u_spec=_vector_spec(args.u, base.u_spec),
            v_spec=_vector_spec(args.v, base.v_spec),
        )
        fmt = args.format
        if fmt is None:
            fmt = "json" if args.graph.endswith(".json") else "edgelist"
        return cls(
            input_path=args.graph,
            format=fmt,
            output=args.output or "csv",
            model=model,
            seed=getattr(args, "seed", None),
            epsilon=getattr(args, "epsilon", 0.01),
            samples=getattr(args, "samples", 10000),
            concentration=getattr(args, "concentration", 1.0),
        )


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None


def _vector_spec(flag_value, fallback):
    if flag_value is None:
        return fallback
    if flag_value == "uniform":
        return "uniform"
    return _read_vector_file(flag_value)


def _read_vector_file(path: str) -> tuple[float, ...]:
    values = []
    for lineno, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: expected one float per line") from None
    if not values:
        raise ParseError(f"{path}: empty vector file")
    return tuple(values)


def _load_graph(cfg: RunConfig) -> DirectedGraph:
    text = _read_text(cfg.input_path)
    if cfg.format == "json":
        return parse_graph_json(text)
    return parse_edge_list(text)


def _csv_cell(kind: str, value) -> str:
    if value is None:
        return ""
    if kind == "f6":
        return f"{value:.6f}"
    if kind == "g6":
        return f"{value:.6g}"
    if kind == "bool":
        return "true" if value else "false"
    return str(value)


def _json_cell(kind: str, value):
    if value is None:
        return None
    if kind == "f6":
        return round(float(value), 6)
    if kind == "g6":
        return float(f"{value:.6g}")
    if kind == "bool":
        return bool(value)
    return value


def _emit(cfg: RunConfig, spec: list[tuple[str, str]], rows: list[list]) -> None:
    if cfg.output == "json":
        payload = [
            {name: _json_cell(kind, v) for (name, kind), v in zip(spec, row)}
            for row in rows
        ]
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
        return
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow([name for name, _ in spec])
    for row in rows:
        writer.writerow([_csv_cell(kind, v) for (_, kind), v in zip(spec, row)])


def _cmd_pagerank(cfg, g, ctx, args):
    v = cfg.model.personalization(g.n)
    pi = pagerank_solve(cfg.model.alpha, ctx.p_u, v).pi
    spec = [("node", "label"), ("pagerank", "f6")]
    _emit(cfg, spec, [[g.labels[i], float(pi[i])] for i in range(g.n)])


def _cmd_xmatrix(cfg, g, ctx, args):
    x = ctx.fundamental().x
    spec = [("node", "label")] + [(label, "f6") for label in g.labels]
    rows = [[g.labels[i], *map(float, x[i])] for i in range(g.n)]
    _emit(cfg, spec, rows)


def _cmd_intervals(cfg, g, ctx, args):
    x = ctx.fundamental()
    spec = [("node", "label"), ("lo", "f6"), ("hi", "f6"), ("lo_witness", "label")]
    rows = []
    for i in range(g.n):
        iv = pr_interval(x, i)
        rows.append([g.labels[i], iv.lo, iv.hi, g.labels[iv.lo_witness]])
    _emit(cfg, spec, rows)


def _parse_pair(g: DirectedGraph, text: str) -> tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise DomainError(f"--pair expects 'i,j', got {text!r}")
    return g.index_of(parts[0]), g.index_of(parts[1])


def _cmd_competitors(cfg, g, ctx, args):
    x = ctx.fundamental()
    if args.pair:
        pairs = [_parse_pair(g, args.pair)]
    else:
        pairs = [(i, j) for i in range(g.n) for j in range(i + 1, g.n)]
    spec = [
        ("i", "label"),
        ("j", "label"),
        ("competes", "bool"),
        ("witness_k", "label"),
        ("witness_l", "label"),
    ]
    rows = []
    for i, j in pairs:
        verdict = effective_competitors(x, i, j)
        rows.append(
            [
                g.labels[i],
                g.labels[j],
                verdict.competes,
                None if verdict.witness_k is None else g.labels[verdict.witness_k],
                None if verdict.witness_l is None else g.labels[verdict.witness_l],
            ]
        )
    _emit(cfg, spec, rows)


def _cmd_leaders(cfg, g, ctx, args):
    group = leadership_group(ctx.fundamental())
    spec = [("leader", "label"), ("witness_row", "label")]
    rows = [
        [g.labels[i], g.labels[group.witness_rows[i]]]
        for i in sorted(group.leaders)
    ]
    _emit(cfg, spec, rows)


def _cmd_sc_interval(cfg, g, ctx, args):
    nodes = [g.index_of(args.node)] if args.node else list(range(g.n))
    spec = [("node", "label"), ("epsilon", "g6"), ("lo", "f6"), ("hi", "f6")]
    rows = []
    for i in nodes:
        sc = competitivity_interval(ctx, i, cfg.epsilon)
        rows.append([g.labels[i], sc.epsilon, sc.lo, sc.hi])
    _emit(cfg, spec, rows)


def _cmd_achieve(cfg, g, ctx, args):
    i = g.index_of(args.node)
    try:
        result = achieve_value(ctx, i, args.target, args.tol)
    except DomainError as exc:
        raise DomainError(f"node {args.node!r}: {exc}") from None
    spec = [
        ("node", "label"),
        ("target", "f6"),
        ("achieved", "f6"),
        ("lambda", "f6"),
        ("epsilon", "g6"),
    ]
    _emit(cfg, spec, [[g.labels[i], args.target, result.achieved,
                       result.lam, result.epsilon]])


def _cmd_verify(cfg, g, ctx, args):
    nodes = [g.index_of(args.node)] if args.node else list(range(g.n))
    per_node = {}
    bad = []
    for i in nodes:
        rep = monte_carlo_interval(
            ctx, i, cfg.samples, cfg.seed, concentration=cfg.concentration
        )
        per_node[g.labels[i]] = {
            "samples": rep.samples,
            "observed_min": round(rep.observed_min, 6),
            "observed_max": round(rep.observed_max, 6),
            "lo": round(rep.lo, 6),
            "hi": round(rep.hi, 6),
            "violations": rep.violations,
        }
        if rep.violations:
            bad.append(g.labels[i])
    report = {
        "pass": not bad,
        "alpha": round(cfg.model.alpha, 6),
        "samples": cfg.samples,
        "seed": cfg.seed,
        "concentration": float(f"{cfg.concentration:.6g}"),
        "nodes": per_node,
    }
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if bad:
        raise NumericalError(
            "sampled rank values escaped their analytic intervals",
            details={"violating_nodes": bad},
        )


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="rankreach",
        description="Attainable rank values, competitors, and leaders "
        "of a directed graph.",
    )
    common = _Parser(add_help=False)
    common.add_argument("graph", help="input graph file")
    common.add_argument("--alpha", type=float, default=None,
                        help="damping factor in (0, 1), default 0.85")
    common.add_argument("--u", default=None, metavar="PATH|uniform",
                        help="dangling distribution, one float per line")
    common.add_argument("--v", default=None, metavar="PATH|uniform",
                        help="personalization vector, one float per line")
    common.add_argument("--format", choices=["edgelist", "json"], default=None,
                        help="input format, inferred from extension by default")
    common.add_argument("--output", choices=["csv", "json"], default=None)
    common.add_argument("--config", default=None,
                        help='config JSON {"alpha", "u", "v"}; flags override')

    sub = parser.add_subparsers(dest="command", parser_class=_Parser,
                                required=True, metavar="SUBCOMMAND")

    sub.add_parser("pagerank", parents=[common],
                   help="rank vector for the given personalization"
                   ).set_defaults(handler=_cmd_pagerank)
    sub.add_parser("xmatrix", parents=[common],
                   help="fundamental matrix, one row per source node"
                   ).set_defaults(handler=_cmd_xmatrix)
    sub.add_parser("intervals", parents=[common],
                   help="attainable rank interval of every node"
                   ).set_defaults(handler=_cmd_intervals)

    competitors = sub.add_parser("competitors", parents=[common],
                                 help="effective-competitor verdicts")
    competitors.add_argument("--pair", default=None, metavar="I,J",
                             help="restrict to one labelled pair")
    competitors.set_defaults(handler=_cmd_competitors)

    sub.add_parser("leaders", parents=[common],
                   help="leadership group with witness rows"
                   ).set_defaults(handler=_cmd_leaders)

    sc = sub.add_parser("sc-interval", parents=[common],
                        help="rank hull over the concentrated family")
    sc.add_argument("--node", default=None, help="restrict to one label")
    sc.add_argument("--epsilon", type=float, default=0.01)
    sc.set_defaults(handler=_cmd_sc_interval)

    achieve = sub.add_parser("achieve", parents=[common],
                             help="realize a target rank value for a node")
    achieve.add_argument("--node", required=True)
    achieve.add_argument("--target", type=float, required=True)
    achieve.add_argument("--tol", type=float, default=1e-6)
    achieve.set_defaults(handler=_cmd_achieve)

    verify = sub.add_parser("verify", parents=[common],
                            help="Monte-Carlo containment report")
    verify.add_argument("--seed", type=int, required=True)
    verify.add_argument("--node", default=None, help="restrict to one label")
    verify.add_argument("--samples", type=int, default=10000)
    verify.add_argument("--concentration", type=float, default=1.0)
    verify.set_defaults(handler=_cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(args)
        g = _load_graph(cfg)
        ctx = RankContext.from_graph(
            g, alpha=cfg.model.alpha, u=cfg.model.dangling_distribution(g.n)
        )
        args.handler(cfg, g, ctx, args)
    except NumericalError as exc:
        diagnostic = {
            "error": type(exc).__name__,
            "message": str(exc),
            "details": exc.details,
        }
        sys.stderr.write(json.dumps(diagnostic, sort_keys=True, default=str) + "\n")
        return 2
    except (ParseError, DomainError) as exc:
        sys.stderr.write(f"rankreach: error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
