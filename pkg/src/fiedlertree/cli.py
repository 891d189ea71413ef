"""Command-line front end: analyze, game, hit, check, gen, enumerate, survey.

Exit codes: 0 success (and the selected property holds), 1 the selected
property fails, 2 usage, parse, or solver errors.  All structured output is
deterministic for a fixed seed: JSON keys are sorted and floats carry 17
significant digits.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import graph6
from .admissibility import (
    CaterpillarSpec,
    check_admissibility,
    extrema_verdict,
)
from .game import GameSpec, exact_payoff, simulate_payoff
from .generators import (
    gen_caterpillar,
    gen_drift_graph,
    gen_path,
    gen_random_tree,
    gen_rose,
    gen_rose_on_path,
    gen_spine,
    gen_spine_with_leaves,
)
from .graph import Graph, GraphError, format_edge_list, is_tree, parse_edge_list
from .hitting import hitting_times
from .jsonutil import dumps
from .spectral import (
    SolverError,
    bounds_report,
    eigenpair_k,
    eigenpair_to_dict,
    fiedler_pair,
    verify_monotonicity,
)

DEFAULT_SEED = 1729
PARALLELISM_ENV = "FIEDLERTREE_PARALLELISM"

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_ERROR = 2


def _read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_edge_list(text)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _dot_export(g: Graph, phi) -> str:
    lines = ["graph fiedler {"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{phi[v]:.6f}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    g = _read_graph(args.input)
    pair = fiedler_pair(g)
    verdict = extrema_verdict(g, pair)
    if args.format == "dot":
        _write(_dot_export(g, pair.phi), args.output)
    else:
        payload = {
            "eigenpair": eigenpair_to_dict(pair),
            "bounds": bounds_report(g, pair).to_dict(),
            "extrema": verdict.to_dict(),
        }
        if is_tree(g):
            mono = verify_monotonicity(g, pair)
            payload["monotonicity"] = {
                "status": mono.status,
                "witness": list(mono.witness) if mono.witness else None,
            }
        _write(dumps(payload) + "\n", args.output)
    if args.property == "strict" and not verdict.strict:
        return EXIT_PROPERTY_FAILED
    if args.property == "relaxed" and not verdict.relaxed:
        return EXIT_PROPERTY_FAILED
    return EXIT_OK


def cmd_game(args) -> int:
    g = _read_graph(args.input)
    pair = eigenpair_k(g, args.k)
    spec = GameSpec(g, pair, args.start, args.target)
    if args.samples > 0:
        estimate = simulate_payoff(
            spec, samples=args.samples, seed=args.seed, max_steps=args.max_steps
        )
        payload = estimate.to_dict()
    else:
        payload = {"exact": exact_payoff(spec), "samples": 0, "seed": args.seed}
    _write(dumps(payload) + "\n", args.output)
    return EXIT_OK


def cmd_hit(args) -> int:
    g = _read_graph(args.input)
    targets = [int(t) for t in args.target.split(",") if t != ""]
    profile = hitting_times(g, targets)
    _write(dumps(profile.to_dict()) + "\n", args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _read_graph(args.input)
    report = check_admissibility(g)
    pair = fiedler_pair(g)
    verdict = extrema_verdict(g, pair)
    payload = {"admissibility": report.to_dict(), "extrema": verdict.to_dict()}
    _write(dumps(payload) + "\n", args.output)
    holds = verdict.strict if args.property == "strict" else verdict.relaxed
    return EXIT_OK if holds else EXIT_PROPERTY_FAILED


def _build_family(args) -> Graph:
    family = args.family
    p = args.params
    def need(count):
        if len(p) != count:
            raise GraphError(
                f"family {family!r} expects {count} integer parameter(s), got {len(p)}"
            )
    if family == "path":
        need(1)
        return gen_path(p[0])
    if family == "rose":
        need(1)
        return gen_rose(p[0])
    if family == "rose-on-path":
        need(3)
        return gen_rose_on_path(p[0], p[1], p[2])
    if family == "spine":
        need(2)
        return gen_spine(p[0], p[1])
    if family == "spine-leaves":
        need(3)
        return gen_spine_with_leaves(p[0], p[1], p[2])
    if family == "caterpillar":
        if len(p) < 2:
            raise GraphError("caterpillar expects: spine_edges f0 f1 ... fn")
        return gen_caterpillar(CaterpillarSpec(p[0], tuple(p[1:])))
    if family == "drift":
        need(2)
        return gen_drift_graph(p[0], p[1])
    if family == "random-tree":
        need(1)
        return gen_random_tree(p[0], args.seed)
    raise GraphError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    g = _build_family(args)
    _write(format_edge_list(g), args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .enumeration import enumerate_free_trees, free_tree_sequences

    lines = []
    if args.format == "levels":
        for seq in free_tree_sequences(args.n):
            lines.append("-".join(map(str, seq)))
    elif args.format == "g6":
        for g in enumerate_free_trees(args.n):
            lines.append(graph6.encode_graph6(g))
    else:
        for i, g in enumerate(enumerate_free_trees(args.n)):
            lines.append(f"# tree {i}")
            lines.append(format_edge_list(g).rstrip("\n"))
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_survey(args) -> int:
    from .enumeration import run_survey

    agg = run_survey(
        args.n,
        parallelism=args.parallelism,
        out_dir=args.output,
        include_degenerate=args.include_degenerate,
        checkpoint_every=args.checkpoint_every,
        resume_from=args.resume,
    )
    sys.stdout.write(dumps(agg.to_dict()) + "\n")
    return EXIT_OK


def _default_parallelism() -> int:
    value = os.environ.get(PARALLELISM_ENV)
    try:
        return max(1, int(value)) if value else 1
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiedlertree",
        description="Fiedler eigenpairs, random-walk payoff games, hitting "
        "times, and free-tree censuses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", "-i", required=True, help="edge-list file, or - for stdin")
        sp.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    sp = sub.add_parser("analyze", help="eigenpair, bounds, extrema, monotonicity")
    add_io(sp)
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.add_argument("--strict", dest="property", action="store_const", const="strict")
    sp.add_argument("--relaxed", dest="property", action="store_const", const="relaxed")
    sp.set_defaults(property=None, func=cmd_analyze)

    sp = sub.add_parser("game", help="random-walk payoff game (exact and Monte-Carlo)")
    add_io(sp)
    sp.add_argument("--from", dest="start", type=int, required=True)
    sp.add_argument("--to", dest="target", type=int, required=True)
    sp.add_argument("--k", type=int, default=2, help="eigenpair rank (default 2)")
    sp.add_argument("--samples", type=int, default=10000, help="0 for exact only")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--max-steps", type=int, default=None)
    sp.set_defaults(func=cmd_game)

    sp = sub.add_parser("hit", help="expected hitting times to a target set")
    add_io(sp)
    sp.add_argument("--target", required=True, help="comma-separated vertex list")
    sp.set_defaults(func=cmd_hit)

    sp = sub.add_parser("check", help="admissibility conditions and extrema verdict")
    add_io(sp)
    sp.add_argument("--strict", dest="property", action="store_const", const="strict")
    sp.add_argument("--relaxed", dest="property", action="store_const", const="relaxed")
    sp.set_defaults(property="relaxed", func=cmd_check)

    sp = sub.add_parser("gen", help="write a parametric family as an edge list")
    sp.add_argument("family", choices=(
        "path", "rose", "rose-on-path", "spine", "spine-leaves",
        "caterpillar", "drift", "random-tree",
    ))
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    add_io(sp, needs_input=False)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("enumerate", help="all free trees on n vertices")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=("edges", "levels", "g6"), default="levels")
    add_io(sp, needs_input=False)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("survey", help="extrema-property census over all free trees")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--parallelism", type=int, default=_default_parallelism())
    sp.add_argument("--include-degenerate", action="store_true")
    sp.add_argument("--checkpoint-every", type=int, default=100_000)
    sp.add_argument("--resume", default=None, help="checkpoint file to resume from")
    sp.add_argument("--output", "-o", default=None, help="directory for CSV/JSON")
    sp.set_defaults(func=cmd_survey)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, SolverError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
