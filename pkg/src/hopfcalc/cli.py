"""Command line: build, check, repro and eval.

Exit codes: 0 everything passed, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .catalog import AxiomError, SchemaError, catalog_entry, dump_json, load_json
from .cross import drinfeld_double
from .expr import Environment, ExprEvalError, ExprSyntaxError, dump, evaluate
from .hopf import HopfData, HopfError, Report, dual_hopf, verify_hopf
from .qt import QTElement, check_qt, check_weak_r, is_triangular
from .scalars import QQ, FieldError, parse_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def resolve(name: str, field) -> tuple[HopfData, QTElement | None]:
    """sweedler4, c2, dual:<name> or double:<name>; doubles come with [b]."""
    if name.startswith("dual:"):
        inner, _ = resolve(name[5:], field)
        return dual_hopf(inner), None
    if name.startswith("double:"):
        inner, _ = resolve(name[7:], field)
        D, b = drinfeld_double(inner, verify=False)
        return D, QTElement(b, (D, D), "[b]")
    try:
        return catalog_entry(name, field).hopf, None
    except KeyError:
        raise UsageError(f"unknown algebra {name!r}; expected sweedler4, c2, dual:<name> "
                         "or double:<name>") from None


def _load(args, field):
    if getattr(args, "json", None):
        return load_json(args.json), None
    if not args.name:
        raise UsageError("give an algebra name or --json PATH")
    return resolve(args.name, field)


def _emit_report(rep: Report, t0: float, field) -> int:
    ms = round((time.perf_counter() - t0) * 1000)
    fmt = getattr(field, "fmt", str)
    print(json.dumps(rep.to_json(fmt=fmt, timing_ms=ms), ensure_ascii=False, indent=2))
    print(rep.summary(), file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_build(args, field) -> int:
    h, _ = _load(args, field)
    text = json.dumps(dump_json(h), ensure_ascii=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_check(args, field) -> int:
    t0 = time.perf_counter()
    h, r = _load(args, field)
    rep = Report()
    if args.kind == "hopf":
        rep.extend(verify_hopf(h))
    else:
        if r is None:
            raise UsageError(f"check {args.kind} needs a double:<name> target")
        if args.kind == "qt":
            rep.extend(check_qt(h, r))
        elif args.kind == "triangular":
            rep.add("triangular", is_triangular(h, r))
        elif args.kind == "weak-r":
            from .repro import canonical_pairing
            p = canonical_pairing(h)
            rep.extend(check_weak_r(p.algs[0], p.algs[1], p))
    return _emit_report(rep, t0, field)


def cmd_repro(args, field) -> int:
    from .repro import TARGETS, run
    if field is not QQ:
        raise UsageError("repro works over the rationals only")
    if args.target not in TARGETS:
        raise UsageError(f"unknown target {args.target!r}; expected one of {', '.join(TARGETS)}")
    t0 = time.perf_counter()
    return _emit_report(run(args.target, field), t0, field)


def cmd_eval(args, field) -> int:
    h, r = resolve(args.algebra, field)
    env = Environment.for_algebra(h, r=r)
    f = evaluate(args.expr, env)
    print(dump(f))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfcalc", description=__doc__.splitlines()[0])
    p.add_argument("--field", default="Q", help="Q (default) or p:<odd prime>")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="dump structure constants as JSON")
    b.add_argument("name", nargs="?")
    b.add_argument("--json", help="read a structure-constant file instead")
    b.add_argument("--out", help="write to a file instead of stdout")
    b.set_defaults(run=cmd_build)

    c = sub.add_parser("check", help="run a verification suite")
    c.add_argument("kind", choices=["hopf", "qt", "triangular", "weak-r"])
    c.add_argument("name", nargs="?")
    c.add_argument("--json", help="read a structure-constant file instead")
    c.set_defaults(run=cmd_check)

    r = sub.add_parser("repro", help="recompute the worked numbers")
    r.add_argument("target")
    r.set_defaults(run=cmd_repro)

    e = sub.add_parser("eval", help="evaluate a map expression")
    e.add_argument("expr")
    e.add_argument("--algebra", default="sweedler4")
    e.set_defaults(run=cmd_eval)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = parse_field(args.field)
        return args.run(args, field)
    except (UsageError, FieldError, SchemaError, ExprSyntaxError, ExprEvalError,
            OSError, HopfError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AxiomError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
