"""Command line interface.  Exit codes: 0 ok, 1 invalid input, 2 internal invariant violation."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from .auxtrees import analyze
from .classify import classify
from .cycles import NotACycle, long_cycle_heuristic, longest_cycle_exact, orient_and_partition
from .dual import dualize
from .embedding import InvalidInstance, InvariantError, parse_triangulation
from .generators import KINDS, canonical_cycle, generate
from .pipeline import PipelineOptions, run_pipeline
from .render import render_svg
from .surgery import surgery_loop


def _read(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(args, text: str) -> None:
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(args, obj) -> None:
    _write(args, json.dumps(obj, indent=None if args.json else 2, sort_keys=False) + "\n")


def _load(args):
    T = parse_triangulation(_read(args.input))
    return T, dualize(T)


def _cycle(args, D):
    if getattr(args, "cycle", None):
        try:
            data = json.loads(_read(args.cycle))
            seq = data["cycle"] if isinstance(data, dict) else data
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InvalidInstance(f"syntax error in cycle file: {exc}") from exc
        try:
            return orient_and_partition(D, seq)
        except NotACycle as exc:
            raise InvalidInstance(str(exc)) from exc
    if getattr(args, "heuristic", False):
        return long_cycle_heuristic(D, args.seed)
    return longest_cycle_exact(D, getattr(args, "time_limit", None))


def cmd_validate(args):
    T, _ = _load(args)
    _dump(args, {"valid": True, "n": T.n, "Delta": T.max_degree(), "edges": len(T.edges)})


def cmd_dualize(args):
    _, D = _load(args)
    _dump(args, D.to_json())


def cmd_cycle(args):
    _, D = _load(args)
    C = _cycle(args, D)
    _dump(args, {**C.to_json(), "length": C.length, "optimal": C.optimal})


def cmd_classify(args):
    _, D = _load(args)
    _dump(args, classify(D, _cycle(args, D)).to_json())


def cmd_trees(args):
    _, D = _load(args)
    C = _cycle(args, D)
    _, pair = analyze(D, C, classify(D, C))
    _dump(args, pair.to_json())


def cmd_surgery(args):
    T, D = _load(args)
    C = _cycle(args, D)
    final, log = surgery_loop(T, D, C, args.max_iters)
    if args.trace:
        with open(args.trace, "w") as fh:
            for step in log.steps:
                fh.write(json.dumps(step.to_json()) + "\n")
    _dump(args, {**final.to_json(), "length": final.length, **log.to_json()})


def cmd_collinear(args):
    T, _ = _load(args)
    opts = PipelineOptions(cycle="heuristic" if args.heuristic else "exact", seed=args.seed,
                           max_iters=args.max_iters)
    cert, *_ = run_pipeline(T, opts)
    _dump(args, cert.to_json())


def cmd_report(args):
    T, _ = _load(args)
    opts = PipelineOptions(cycle="heuristic" if args.heuristic else "exact", seed=args.seed,
                           max_iters=args.max_iters)
    _, report, _, _ = run_pipeline(T, opts)
    _dump(args, report.to_json(with_times=args.times))


def cmd_gen(args):
    params = {key: getattr(args, key) for key in ("k", "n", "flips") if getattr(args, key) is not None}
    if args.with_cycle:
        if "k" not in params:
            raise InvalidInstance(f"{args.kind} with --with-cycle needs --k")
        T, seq = canonical_cycle(args.kind, params["k"])
        _dump(args, {**T.to_json(), "cycle": list(seq)})
        return
    _dump(args, generate(args.kind, params, args.seed).to_json())


def cmd_render(args):
    T, D = _load(args)
    C = _cycle(args, D)
    S = ()
    if args.collinear:
        cert, *_ = run_pipeline(T, PipelineOptions(initial_cycle=C.oriented()))
        S = cert.S
    _write(args, render_svg(T, D, C, S=S))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="instance JSON file (default: stdin)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="compact single-line JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    def cycle_flags(p):
        p.add_argument("--cycle", help='cycle JSON file {"cycle": [...]}; default: search')
        g = p.add_mutually_exclusive_group()
        g.add_argument("--exact", action="store_true", help="exact longest cycle (default)")
        g.add_argument("--heuristic", action="store_true", help="local-search long cycle")
        p.add_argument("--time-limit", type=float, default=None, help="seconds for the exact search")

    ap = argparse.ArgumentParser(prog="collinear", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check an instance").set_defaults(fn=cmd_validate)
    sub.add_parser("dualize", parents=[common], help="print the dual graph").set_defaults(fn=cmd_dualize)
    for name, fn, text in (("cycle", cmd_cycle, "find a long dual cycle"),
                           ("classify", cmd_classify, "pinched/caressed counts"),
                           ("trees", cmd_trees, "side trees and badness")):
        p = sub.add_parser(name, parents=[common], help=text)
        cycle_flags(p)
        p.set_defaults(fn=fn)
    p = sub.add_parser("surgery", parents=[common], help="run the surgery loop")
    cycle_flags(p)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--trace", help="write one JSON line per step")
    p.set_defaults(fn=cmd_surgery)
    for name, fn in (("collinear", cmd_collinear), ("report", cmd_report)):
        p = sub.add_parser(name, parents=[common], help="full pipeline" if name == "report" else "certificate")
        p.add_argument("--heuristic", action="store_true")
        p.add_argument("--max-iters", type=int, default=None)
        if name == "report":
            p.add_argument("--times", action="store_true", help="include wall times (not deterministic)")
        p.set_defaults(fn=fn)
    p = sub.add_parser("gen", parents=[common], help="generate an instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--flips", type=int)
    p.add_argument("--with-cycle", action="store_true", help="include the canonical cycle")
    p.set_defaults(fn=cmd_gen)
    p = sub.add_parser("render", parents=[common], help="SVG drawing")
    cycle_flags(p)
    p.add_argument("--collinear", action="store_true", help="mark the certificate vertices")
    p.set_defaults(fn=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args.fn(args)
    except InvalidInstance as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(json.dumps(exc.diagnostic, default=str), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
