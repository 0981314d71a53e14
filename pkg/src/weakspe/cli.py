"""Command-line front end.

    weakspe solve GAME [--lower BITS] [--upper BITS]
    weakspe certify GAME [--lower BITS] [--upper BITS]
    weakspe generate gen-qbf FORMULA [--variant reach|safety] --out GAME
    weakspe generate gen-random --vertices N --players K --objective CLASS --seed S
    weakspe verify PROFILE --game GAME

Payoff bitstrings list player 1 first: "01" means player 1 loses and
player 2 wins. All JSON output uses sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import WeakSPEError
from .game import parse_bits, payoff_bits, validate_game
from .fixpoint import decide_constraint, fixpoint_json
from .pipeline import certify
from .reductions import (
    OBJECTIVE_CLASSES, REACH, SAFETY, parse_qdimacs, qbf_to_game, random_game,
    reach_safety_product,
)
from .strategy import MooreProfile, verify_weak_spe

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUG = 0, 1, 2, 3

SOLVE_EMIT = ("fixpoint", "trace")
CERTIFY_EMIT = ("witness", "profile", "verification")


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _load_game(args):
    path = args.game_file or args.game
    if not path:
        raise InputError("no game file given")
    game = validate_game(_load_json(path))
    v0 = args.initial if args.initial is not None else game.initial
    if v0 is None:
        v0 = 0
    if not 0 <= v0 < game.num_vertices:
        raise InputError(f"initial vertex {v0} is not a vertex of the game")
    n = game.num_players
    x = parse_bits(args.lower, n) if args.lower else (0,) * n
    y = parse_bits(args.upper, n) if args.upper else (1,) * n
    return game, v0, x, y


def _emit_set(args, default):
    if args.emit is None:
        return set(default)
    chosen = {e.strip() for e in args.emit.split(",") if e.strip()}
    known = set(SOLVE_EMIT) | set(CERTIFY_EMIT)
    if chosen - known:
        raise InputError(f"unknown --emit value(s): {', '.join(sorted(chosen - known))}")
    return chosen


def cmd_solve(args) -> int:
    game, v0, x, y = _load_game(args)
    emit = _emit_set(args, SOLVE_EMIT)
    d = decide_constraint(game, v0, x, y, args.order, args.seed)
    out = _decision_json(d, emit)
    _write(_dump(out), args.out)
    return EXIT_OK if d.exists else EXIT_NO


def _decision_json(d, emit):
    out = {"exists": d.exists,
           "payoff": None if d.payoff is None else payoff_bits(d.payoff)}
    if d.table is not None:
        full = fixpoint_json(d.table, d.trace)
        if "fixpoint" in emit:
            out["fixpoint"] = full["fixpoint"]
        if "trace" in emit:
            out["trace"] = full["trace"]
            out["rounds"] = full["rounds"]
    if d.product is not None:
        out["product"] = d.product.metadata()
    return out


def cmd_certify(args) -> int:
    game, v0, x, y = _load_game(args)
    emit = _emit_set(args, CERTIFY_EMIT)
    cert = certify(game, v0, x, y, args.order, args.seed)
    out = _decision_json(cert.decision, emit)
    if not cert.decision.exists:
        _write(_dump(out), args.out)
        return EXIT_NO
    if "witness" in emit:
        out["witness"] = cert.witness.to_dict()
        out["goodness"] = cert.goodness.to_dict()
    if "profile" in emit:
        out["profile"] = cert.profile.to_dict()
        out["profile"]["size"] = cert.profile.size
    if "verification" in emit:
        out["verification"] = cert.report.to_dict()
    out["outcome_payoff"] = payoff_bits(cert.outcome_payoff)
    out["verified"] = cert.verified
    _write(_dump(out), args.out)
    if not cert.verified:
        print("certificate failed verification; this is a bug", file=sys.stderr)
        return EXIT_BUG
    return EXIT_OK


def cmd_verify(args) -> int:
    game_args = argparse.Namespace(game=args.game, game_file=None, initial=args.initial,
                                   lower=None, upper=None)
    game, v0, _, _ = _load_game(game_args)
    data = _load_json(args.profile)
    solved = game
    if not game.prefix_independent:
        solved = reach_safety_product(game, v0)
    try:
        profile = MooreProfile.from_dict(data, solved)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed profile: {exc}") from None
    for lasso in profile.lassoes.values():
        if not lasso.is_valid_in(solved):
            raise InputError(f"lasso {lasso} is not a play of the game")
    report = verify_weak_spe(profile, solved)
    _write(_dump(report.to_dict()), args.out)
    return EXIT_OK if report.is_weak_spe else EXIT_NO


def cmd_gen_qbf(args) -> int:
    try:
        text = Path(args.formula).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.formula}: {exc.strerror}") from None
    formula = parse_qdimacs(text)
    game, v0, x, y = qbf_to_game(formula, args.variant)
    _write(_dump(game.to_dict()), args.out)
    if args.out:
        side = Path(str(args.out) + ".constraint.json")
        side.write_text(_dump({"initial": v0, "lower": payoff_bits(x),
                               "upper": payoff_bits(y), "variant": args.variant}))
    return EXIT_OK


def cmd_gen_random(args) -> int:
    try:
        game = random_game(args.vertices, args.players, args.objective,
                           args.density, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(_dump(game.to_dict()), args.out)
    return EXIT_OK


def _add_game_flags(p):
    p.add_argument("game_file", nargs="?", metavar="GAME", help="game JSON file")
    p.add_argument("--game", help="game JSON file (alternative to the positional)")
    p.add_argument("--lower", help="lower payoff bound, player 1 first (default all zeros)")
    p.add_argument("--upper", help="upper payoff bound, player 1 first (default all ones)")
    p.add_argument("--initial", type=int, help="initial vertex (default: from the file, else 0)")
    p.add_argument("--order", choices=("min", "max", "random"), default="min",
                   help="which removable payoff to drop first")
    p.add_argument("--seed", type=int, help="seed for --order random")
    p.add_argument("--emit", help="comma-separated parts to print: "
                   "fixpoint,trace,witness,profile,verification")
    p.add_argument("--out", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakspe",
        description="Weak subgame perfect equilibria in Boolean games on graphs. "
                    "Payoff bitstrings list player 1 first.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide whether a weak SPE with payoff in [lower, upper] exists")
    _add_game_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="solve, then build and verify a finite-memory profile")
    _add_game_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a profile JSON against a game")
    p.add_argument("profile", help="profile JSON file")
    p.add_argument("--game", required=True, help="game JSON file")
    p.add_argument("--initial", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    gen = sub.add_parser("generate", help="write a game file")
    gsub = gen.add_subparsers(dest="generator", required=True)
    q = gsub.add_parser("gen-qbf", help="game from a QDIMACS-style formula")
    q.add_argument("formula")
    q.add_argument("--variant", choices=(REACH, SAFETY), default=REACH)
    q.add_argument("--out")
    q.set_defaults(func=cmd_gen_qbf)
    r = gsub.add_parser("gen-random", help="seeded random game")
    r.add_argument("--vertices", type=int, default=5)
    r.add_argument("--players", type=int, default=2)
    r.add_argument("--objective", choices=OBJECTIVE_CLASSES, default="buchi")
    r.add_argument("--density", type=float, default=0.4)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_gen_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, WeakSPEError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
