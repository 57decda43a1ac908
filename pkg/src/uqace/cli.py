"""Command-line interface.

    uqace shuffle "<expr in x, y>"        q-shuffle product of the expression
    uqace natmap  "<expr in W0, W1>"      image under W0 -> x, W1 -> y
    uqace eval    "<expr>"                straightened element of the model
    uqace check damiani|ace|genfun|rows|pbw [bounds] [--eval-q a/b] [--format json|text] [--jobs n]

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional

from .coeffs import make_field
from .parser import ParseError, parse_expr, parse_free, parse_shuffle
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("damiani", "ace", "genfun", "rows", "pbw")

# suite -> {flag destination: default}
SUITE_BOUNDS: Dict[str, Dict[str, int]] = {
    "damiani": {"max_index": 5, "max_n": 6},
    "ace": {"max_k": 4, "max_n": 5},
    "genfun": {"degree": 3},
    "rows": {"max_len": 9},
    "pbw": {"max_len": 6},
}

_MIN_BOUND = {"max_index": 1, "max_n": 1, "max_k": 1, "degree": 1, "max_len": 0}


class UsageError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    bounds: Dict[str, int] = dc_field(default_factory=dict)
    eval_q: Optional[Fraction] = None
    fmt: str = "text"
    jobs: int = 1
    relation: Optional[str] = None

    def __post_init__(self):
        if self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        allowed = SUITE_BOUNDS[self.suite]
        for k in self.bounds:
            if k not in allowed:
                raise UsageError(f"--{k.replace('_', '-')} does not apply to suite {self.suite}")
        self.bounds = {**allowed, **self.bounds}
        for k, v in self.bounds.items():
            lo = _MIN_BOUND[k]
            if self.suite == "rows" and k == "max_len":
                lo = 2
            if v < lo:
                raise UsageError(f"--{k.replace('_', '-')} must be at least {lo}")
        if self.eval_q is not None and (self.eval_q == 0 or abs(self.eval_q) == 1):
            raise UsageError("--eval-q must be a rational other than 0, 1, -1")
        if self.fmt not in ("json", "text"):
            raise UsageError("--format must be json or text")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.relation is not None and self.suite != "genfun":
            raise UsageError("--relation only applies to suite genfun")

    @property
    def field(self):
        return make_field(self.eval_q)


def run_suite(cfg: SuiteConfig) -> Report:
    f, b, jobs = cfg.field, cfg.bounds, cfg.jobs
    if cfg.suite == "damiani":
        from .damiani import check_damiani
        return check_damiani(b["max_index"], b["max_n"], f, jobs)
    if cfg.suite == "ace":
        from .ace import check_ace
        return check_ace(b["max_k"], b["max_n"], f, jobs)
    if cfg.suite == "genfun":
        from .genfun import check_genfun
        try:
            return check_genfun(b["degree"], f, jobs, cfg.relation)
        except KeyError as e:
            raise UsageError(e.args[0]) from e
    if cfg.suite == "rows":
        from .shuffle import check_rows
        return check_rows(b["max_len"], f, jobs)
    from .damiani import pbw_independence
    return pbw_independence(b["max_len"], f, jobs)


def exit_code(rep: Report) -> int:
    return EXIT_PASS if rep.passed else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--eval-q", type=_rational, default=None, metavar="A/B",
                   help="specialise q to this rational instead of exact arithmetic")
    p.add_argument("--format", choices=("json", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uqace", description="Exact verification in U_q^+ and its central extension.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_ in (("shuffle", "expand an expression in the q-shuffle algebra on x, y"),
                        ("natmap", "map an expression in W0, W1 into the q-shuffle algebra"),
                        ("eval", "straighten an expression in the model of the central extension")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("expr")
        _common(sp)
        if name == "eval":
            sp.add_argument("--canonical", action="store_true",
                            help="print the q-shuffle image of each gt-monomial bucket")

    cp = sub.add_parser("check", help="run a verification suite")
    cp.add_argument("suite", help="one of " + ", ".join(SUITES))
    for flag in ("max-index", "max-k", "max-n", "degree", "max-len"):
        cp.add_argument(f"--{flag}", type=int, default=None)
    cp.add_argument("--jobs", type=int, default=1)
    cp.add_argument("--relation", default=None, help="genfun only: restrict to one canonical relation")
    _common(cp)
    return p


def _emit_element(args, text: str, value) -> str:
    if args.format == "json":
        return json.dumps({"command": args.command, "input": args.expr, "mode": "exact" if args.eval_q is None
                           else f"eval:{args.eval_q}", "result": text})
    return text


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        if args.eval_q is not None and (args.eval_q == 0 or abs(args.eval_q) == 1):
            raise UsageError("--eval-q must be a rational other than 0, 1, -1")
        field = make_field(args.eval_q)
        if args.command == "shuffle":
            print(_emit_element(args, str(parse_shuffle(args.expr, field)), None))
            return EXIT_PASS
        if args.command == "natmap":
            from .shuffle import natmap
            print(_emit_element(args, str(natmap(parse_free(args.expr, field))), None))
            return EXIT_PASS
        if args.command == "eval":
            from .ace import canonicalize
            e = parse_expr(args.expr, field)
            print(_emit_element(args, str(canonicalize(e) if args.canonical else e), None))
            return EXIT_PASS
        bounds = {k: v for k in ("max_index", "max_k", "max_n", "degree", "max_len")
                  if (v := getattr(args, k)) is not None}
        cfg = SuiteConfig(args.suite, bounds, args.eval_q, args.format, args.jobs, args.relation)
        rep = run_suite(cfg)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(rep.to_json() if cfg.fmt == "json" else rep.to_text())
    return exit_code(rep)


if __name__ == "__main__":
    sys.exit(main())
