"""Command line surface.

Exit codes: 0 for yes/success, 1 for no, 2 for errors and inconclusive
bounded searches.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import checks, formula, iso, strategies, terms
from .formula import ParseError
from .game import game_arrow, game_of_formula, game_to_json
from .hyperforest import forest_to_json, hyperforest_of_game
from .plays import play_to_lines
from .strategies import Bounds, FuelExhausted, UnboundVariable

YES, NO, ERROR = 0, 1, 2


def _bounds_from(args: argparse.Namespace) -> Bounds:
    return Bounds(
        max_play_len=args.max_play_len,
        max_token_len=args.max_token_len,
        max_leaf=args.max_leaf,
        interaction_fuel=args.fuel,
    )


def _add_bounds_flags(p: argparse.ArgumentParser) -> None:
    d = strategies.DEFAULT_BOUNDS
    p.add_argument("--max-play-len", type=int, default=d.max_play_len)
    p.add_argument("--max-token-len", type=int, default=d.max_token_len)
    p.add_argument("--max-leaf", type=int, default=d.max_leaf)
    p.add_argument("--fuel", type=int, default=d.interaction_fuel)


def _parse_type(text: str) -> formula.Formula:
    return formula.parse(text)


def _trace_json(trace: iso.Trace) -> list[dict]:
    return [
        {
            "axiom": s.axiom,
            "dir": s.direction,
            "path": list(s.path),
            "meta": [list(map(list, s.meta))] if s.meta else [],
        }
        for s in trace
    ]


# ---------------------------------------------------------------------------
# commands


def cmd_iso(args: argparse.Namespace) -> int:
    a = _parse_type(args.type_a)
    b = _parse_type(args.type_b)
    verdict = iso.decide_iso(a, b)
    if args.church:
        oracle = iso.decide_iso_church_route(a, b)
        if oracle != verdict:
            print(
                "internal error: normalization route disagrees with the direct route",
                file=sys.stderr,
            )
            return ERROR
    if args.json:
        print(json.dumps({"iso": verdict}))
    else:
        print("iso" if verdict else "not-iso")
    return YES if verdict else NO


def cmd_nf(args: argparse.Namespace) -> int:
    f = _parse_type(args.type)
    out = formula.to_str(iso.normalize(f))
    print(json.dumps({"nf": out}) if args.json else out)
    return YES


def cmd_game(args: argparse.Namespace) -> int:
    g = game_of_formula(_parse_type(args.type))
    print(json.dumps(game_to_json(g), indent=None if args.json else 2))
    return YES


def cmd_forest(args: argparse.Namespace) -> int:
    h = hyperforest_of_game(game_of_formula(_parse_type(args.type)))
    print(json.dumps(forest_to_json(h), indent=None if args.json else 2))
    return YES


def _parse_signature_file(path: str) -> list[tuple[str, formula.Formula]]:
    entries: list[tuple[str, formula.Formula]] = []
    names: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if ":" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'name : type'")
            name, _, rhs = line.partition(":")
            name = name.strip()
            if not name or name in names:
                raise ValueError(f"{path}:{lineno}: missing or duplicate name")
            names.add(name)
            try:
                entries.append((name, formula.parse(rhs)))
            except ParseError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return entries


def cmd_search(args: argparse.Namespace) -> int:
    query = _parse_type(args.query)
    entries = _parse_signature_file(args.file)
    matches = [name for name, t in entries if iso.decide_iso(query, t)]
    if args.json:
        print(json.dumps({"matches": matches}))
    else:
        for name in matches:
            print(name)
    return YES if matches else NO


def _find_witnesses(args: argparse.Namespace):
    a = _parse_type(args.type_a)
    b = _parse_type(args.type_b)
    trace = iso.find_trace(a, b, args.depth)
    if trace is None:
        return a, b, None, None, None
    fwd, bwd = iso.witness(trace)
    return a, b, trace, fwd, bwd


def cmd_witness(args: argparse.Namespace) -> int:
    _, _, trace, fwd, bwd = _find_witnesses(args)
    if trace is None:
        print(json.dumps({"result": "inconclusive"}) if args.json else "inconclusive")
        return ERROR
    if args.json:
        print(
            json.dumps(
                {
                    "trace": _trace_json(trace),
                    "forward": terms.to_str(fwd),
                    "backward": terms.to_str(bwd),
                }
            )
        )
    else:
        print(f"trace ({len(trace)} steps): {_trace_json(trace)}")
        print(f"forward:  {terms.to_str(fwd)}")
        print(f"backward: {terms.to_str(bwd)}")
    return YES


def cmd_verify(args: argparse.Namespace) -> int:
    a, b, trace, fwd, bwd = _find_witnesses(args)
    if trace is None:
        print("inconclusive: no trace found at this depth")
        return ERROR
    bounds = _bounds_from(args)
    sf = strategies.interpret([], fwd, bounds)
    sb = strategies.interpret([], bwd, bounds)
    ga, gb = game_of_formula(a), game_of_formula(b)
    checks_out: dict[str, bool] = {}
    for label, first, second, g in (
        ("forward;backward == id", sf, sb, ga),
        ("backward;forward == id", sb, sf, gb),
    ):
        composite = strategies.compose(first, second, bounds)
        probes = checks.game_probes(game_arrow(g, g), bounds)
        report = checks.identity_report(composite, bounds, probes)
        checks_out[f"{label}"] = report.equal
        checks_out[f"{label}: zig-zag plays"] = report.zigzag_ok
        checks_out[f"{label}: total on arrow"] = not report.totality_misses
    print(f"forward:  {terms.to_str(fwd)}")
    print(f"backward: {terms.to_str(bwd)}")
    ok = True
    for label, passed in checks_out.items():
        print(f"{'PASS' if passed else 'FAIL'}  {label}")
        ok = ok and passed
    return YES if ok else NO


def cmd_eval(args: argparse.Namespace) -> int:
    t = terms.parse_term(args.term_a)
    u = terms.parse_term(args.term_b)
    bounds = _bounds_from(args)
    st = strategies.interpret([], t, bounds)
    su = strategies.interpret([], u, bounds)
    result = checks.equal_bounded(st, su, bounds)
    if result.equal:
        print("equal")
        return YES
    print("not-equal")
    print("witness play:")
    for line in play_to_lines(result.play + ((result.move, result.ptr),)):
        print(f"  {line}")
    print(f"  left responds:  {result.left}")
    print(f"  right responds: {result.right}")
    return NO


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curryiso",
        description="Decide Curry-style System F type isomorphism and verify witnesses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iso", help="decide whether two types are isomorphic")
    p.add_argument("type_a")
    p.add_argument("type_b")
    p.add_argument("--church", action="store_true", help="cross-check the normalization route")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("nf", help="quantifier-elimination normal form")
    p.add_argument("type")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_nf)

    p = sub.add_parser("game", help="print the game of a type")
    p.add_argument("type")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_game)

    p = sub.add_parser("forest", help="print the hyperforest of a type")
    p.add_argument("type")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_forest)

    p = sub.add_parser("search", help="search a signature file up to isomorphism")
    p.add_argument("query")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("witness", help="find an equational trace and witness terms")
    p.add_argument("type_a")
    p.add_argument("type_b")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("verify", help="verify witness terms inside the engine")
    p.add_argument("type_a")
    p.add_argument("type_b")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--json", action="store_true")
    _add_bounds_flags(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("eval", help="compare two closed terms in the engine")
    p.add_argument("term_a")
    p.add_argument("term_b")
    p.add_argument("--json", action="store_true")
    _add_bounds_flags(p)
    p.set_defaults(fn=cmd_eval)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except (ParseError, terms.TermSyntaxError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = ERROR
    except (FuelExhausted, UnboundVariable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = ERROR
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
