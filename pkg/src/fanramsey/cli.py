"""Command-line front end.  JSON goes to stdout, a one-line summary to stderr.

Exit codes: 0 ok, 1 a forbidden structure (or a failed claim) was found,
2 usage or parse error, 3 the budget ran out.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import constructions as cons
from .detectors import is_free
from .graph_model import (
    RED,
    BLUE,
    ColoredGraph,
    FormatError,
    StarColoredGraph,
    Target,
    TargetPair,
    read_graph,
    serialize,
)
from .search import (
    ABORTED,
    DEFAULT_SCHEME,
    INCONCLUSIVE,
    REFUTED,
    SCHEMES,
    Budget,
    CheckpointError,
    load_checkpoint,
    max_star_extension,
    save_checkpoint,
    search_free_coloring,
    search_star_free,
    uniqueness_scan,
    verify_ramsey_number,
)
from .verify import verify_all

OK, FOUND, USAGE, ABORT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _targets(args) -> TargetPair:
    try:
        return TargetPair(Target.parse(args.red), Target.parse(args.blue))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _budget(args) -> Budget:
    return Budget.from_env(max_nodes=args.budget_nodes, max_seconds=args.budget_secs)


def _symmetry(args) -> str:
    return "none" if args.no_symmetry else args.symmetry


def _read(path: str):
    try:
        return read_graph(path)
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _summary(g) -> str:
    text = f"order {g.num_vertices}: {g.num_edges(RED) if isinstance(g, ColoredGraph) else g.base.num_edges(RED)} red"
    if isinstance(g, StarColoredGraph):
        text += f" base edges, star degree {g.k} ({g.star_degree(RED)} red, {g.star_degree(BLUE)} blue)"
    else:
        text += f", {g.num_edges(BLUE)} blue edges"
    return text


# -- commands ---------------------------------------------------------------------


def cmd_construct(args) -> int:
    kind = args.kind
    try:
        if kind == "g1":
            g = cons.build_g1(_need(args, "n"))
        elif kind == "g2":
            if args.spec:
                spec = cons.G2Spec.from_json(Path(args.spec).read_text(encoding="utf-8"))
            else:
                spec = cons.random_g2_spec(_need(args, "n"), args.seed)
            g = cons.build_g2(spec)
        elif kind == "lower-bound":
            g = cons.build_lower_bound(_need(args, "n"))
        elif kind == "matching-critical":
            g = cons.build_matching_critical(_need(args, "m"), _need(args, "r"))
        else:
            g = cons.build_fan_k3_critical(_need(args, "n"))
    except (cons.ConstructionError, OSError) as exc:
        raise UsageError(str(exc)) from None
    text = serialize(g)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    _say(f"{kind}: {_summary(g)}")
    return OK


def _need(args, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for construct {args.kind}")
    return value


def cmd_check(args) -> int:
    g = _read(args.file)
    targets = _targets(args)
    free, witness = is_free(g, targets)
    if free:
        _emit({"free": True})
        _say(f"free for {targets}")
        return OK
    _emit({"free": False, "witness": witness.to_dict()})
    _say(f"not free: {witness.color.name.lower()} {witness.kind} on {list(witness.vertices)}")
    return FOUND


def cmd_search(args) -> int:
    targets = _targets(args)
    symmetry = _symmetry(args)
    resume = None
    ckpt = Path(args.checkpoint) if args.checkpoint else None
    if ckpt is not None and ckpt.exists():
        try:
            resume = load_checkpoint(ckpt, args.order, targets, symmetry)
        except CheckpointError as exc:
            raise UsageError(str(exc)) from None
        _say(f"resuming from {len(resume)} prefixes in {ckpt}")
    out = search_free_coloring(
        args.order, targets, _budget(args), symmetry=symmetry, workers=args.threads, resume=resume
    )
    _emit(out.to_dict())
    _say(f"order {args.order} {targets}: {out.status} after {out.nodes} nodes")
    if out.status == ABORTED:
        if ckpt is not None:
            save_checkpoint(ckpt, args.order, targets, symmetry, out.frontier)
            _say(f"frontier of {len(out.frontier)} prefixes saved to {ckpt}")
        return ABORT
    return OK


def cmd_extend(args) -> int:
    g = _read(args.file)
    if isinstance(g, StarColoredGraph):
        g = g.base
    targets = _targets(args)
    try:
        if args.max:
            out = max_star_extension(g, targets, _budget(args), workers=args.threads)
        else:
            out = search_star_free(g, args.k, targets, _budget(args), workers=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(out.to_dict())
    if args.max:
        _say(f"largest free star: {out.extra['max_k']} ({'optimal' if out.extra['optimal'] else 'lower bound'})")
    else:
        _say(f"star of size {args.k}: {out.status}")
    return ABORT if out.status == ABORTED else OK


def cmd_verify_ramsey(args) -> int:
    targets = _targets(args)
    try:
        report = verify_ramsey_number(
            targets, args.claimed, _budget(args), symmetry=_symmetry(args), workers=args.threads
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(report)
    _say(f"r{targets} = {args.claimed}: {report['verdict']}")
    if report["verdict"] == INCONCLUSIVE:
        return ABORT
    return FOUND if report["verdict"] == REFUTED else OK


def cmd_verify_lemmas(args) -> int:
    g = _read(args.file)
    try:
        reports = verify_all(g, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit([r.to_dict() for r in reports])
    failed = [r.lemma for r in reports if r.holds is False]
    skipped = sum(1 for r in reports if not r.applicable)
    _say(f"{len(reports)} checks, {len(failed)} failed, {skipped} not applicable")
    return FOUND if failed else OK


def cmd_uniqueness_scan(args) -> int:
    report = uniqueness_scan(args.n, _budget(args), symmetry=_symmetry(args), dump_dir=args.dump_dir)
    _emit(report)
    _say(f"n={args.n}: {report['status']}, {report['found']} colorings, classes {report['classes']}")
    if report["status"] == ABORTED:
        return ABORT
    return FOUND if report["counterexamples"] else OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--budget-nodes", type=int, default=10**8)
    common.add_argument("--budget-secs", type=float, default=None, help="default: $RAMSEY_BUDGET_SECS or 600")
    common.add_argument("--checkpoint", help="frontier file: resumed from if present, written on abort")
    common.add_argument("--symmetry", choices=SCHEMES, default=DEFAULT_SCHEME)
    common.add_argument("--no-symmetry", action="store_true", help="same as --symmetry none")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    def pair(p):
        p.add_argument("--red", required=True, help="fan:<n> or matching:<m>")
        p.add_argument("--blue", required=True, help="clique:<r>")

    parser = argparse.ArgumentParser(prog="fanramsey", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="write a known coloring")
    p.add_argument("kind", choices=["g1", "g2", "lower-bound", "matching-critical", "fan-k3-critical"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--spec", help="JSON file with n, I1, I2, I3 (g2 only)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", parents=[common], help="test a coloring for freeness")
    p.add_argument("file")
    pair(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", parents=[common], help="look for a free coloring of K_order")
    p.add_argument("--order", type=int, required=True)
    pair(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("extend", parents=[common], help="free star extensions of a coloring")
    p.add_argument("file")
    pair(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--max", action="store_true")
    mode.add_argument("--k", type=int)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("verify-ramsey", parents=[common], help="check a claimed Ramsey number")
    pair(p)
    p.add_argument("--claimed", type=int, required=True)
    p.set_defaults(func=cmd_verify_ramsey)

    p = sub.add_parser("verify-lemmas", parents=[common], help="structural checks on a coloring of K_6n")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("uniqueness-scan", parents=[common], help="enumerate free block colorings of K_6n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dump-dir")
    p.set_defaults(func=cmd_uniqueness_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        _say(f"error: {exc}")
        return USAGE
