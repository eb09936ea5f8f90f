"""Command-line interface.

Subcommands: canon, rationalize, solve, verify, export-lp.  Exit codes:
0 success, 1 usage, 2 parse/model error, 3 resource cap exceeded,
4 verification failure or counterexample.  Diagnostics go to stderr; output
is deterministic for identical inputs and flags.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .config import Limits, limits_from_env
from .errors import (
    DomainError,
    ExportError,
    ModelError,
    ParseError,
    RadratError,
    ResourceLimitError,
)
from .model import Model
from .oracle import Box, check_equivalence, feasible_points
from .parse import parse_coefficient, parse_model
from .rationalize import rationalize_model
from .simplex import Optimal, Unbounded, solve_lpr, verify_outcome
from .write import coefficient_text, export_lp, write_model

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class CliConfig:
    limits: Limits
    seed: int


def _build_parser():
    p = _Parser(prog="radrat", description=__doc__)
    p.add_argument("--dim-cap", type=int, help="field dimension cap (env RR_DIM_CAP)")
    p.add_argument("--prec-cap", type=int,
                   help="sign-precision cap in bits (env RR_PREC_CAP)")
    p.add_argument("--enum-cap", type=int,
                   help="enumeration volume cap (env RR_ENUM_CAP)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized tooling (kept for reproducibility)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("canon", help="print the canonical form of an expression")
    c.add_argument("expr")

    r = sub.add_parser("rationalize", help="emit the equivalent rational model")
    r.add_argument("model")
    r.add_argument("-o", "--output", help="write the model here instead of stdout")
    r.add_argument("--report", help="write a JSON transformation report here")

    s = sub.add_parser("solve", help="solve the LP relaxation exactly")
    s.add_argument("model")
    s.add_argument("--relaxation", action="store_true",
                   help="acknowledge integrality is dropped (required when "
                        "the model declares integer variables)")
    s.add_argument("--field", choices=("auto", "rational", "radical"),
                   default="auto")
    s.add_argument("--report", help="write the outcome as JSON here")

    v = sub.add_parser("verify", help="enumerate integer points / check equivalence")
    v.add_argument("model")
    v.add_argument("--box", required=True, help="lo:hi bounds for every variable")
    v.add_argument("--against", help="rationalized model to compare against")
    v.add_argument("--report", help="write points/equivalence as JSON here")

    e = sub.add_parser("export-lp", help="export to LP format")
    e.add_argument("model")
    e.add_argument("--precision", type=int, default=10,
                   help="significant digits for inexact coefficients")
    return p


def _limits(args) -> Limits:
    base = limits_from_env()
    return Limits(
        dim_cap=args.dim_cap if args.dim_cap is not None else base.dim_cap,
        enum_cap=args.enum_cap if args.enum_cap is not None else base.enum_cap,
        sign_bits_start=base.sign_bits_start,
        sign_bits_cap=args.prec_cap if args.prec_cap is not None else base.sign_bits_cap,
        factor_trial_bound=base.factor_trial_bound,
        factor_rho_budget=base.factor_rho_budget,
    )


def _read_model(path: str, limits: Limits) -> Model:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_model(text, limits)


def _parse_box(spec: str):
    lo, sep, hi = spec.partition(":")
    if not sep:
        raise _UsageError(f"--box expects lo:hi, got {spec!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise _UsageError(f"--box expects integers, got {spec!r}")


def cmd_canon(args, cfg, out):
    coeff = parse_coefficient(args.expr, cfg.limits)
    print(coefficient_text(coeff), file=out)
    return EXIT_OK


def cmd_rationalize(args, cfg, out):
    m = _read_model(args.model, cfg.limits)
    rationalized, report = rationalize_model(m, cfg.limits)
    text = write_model(rationalized.model)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        out.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(report.to_json() + "\n")
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if report.infeasible_rows:
        print(
            "warning: contradictory rows prove integer infeasibility: "
            + ", ".join(report.infeasible_rows),
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_solve(args, cfg, out):
    m = _read_model(args.model, cfg.limits)
    if any(v.is_integer for v in m.variables) and not args.relaxation:
        raise _UsageError(
            "the model declares integer variables; pass --relaxation to "
            "solve the LP relaxation (integer optimization is out of scope)"
        )
    outcome, ops = solve_lpr(m, args.field, cfg.limits)
    if not verify_outcome(m, outcome, ops, cfg.limits):
        print("error: internal certificate verification failed", file=sys.stderr)
        return EXIT_VERIFY
    if args.report:
        from .simplex import outcome_to_dict

        doc = {"field": ops.name}
        doc.update(outcome_to_dict(outcome, ops))
        with open(args.report, "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=2, sort_keys=True)
            f.write("\n")
    print(f"field: {ops.name}", file=out)
    if isinstance(outcome, Optimal):
        print("outcome: optimal", file=out)
        print(f"value: {ops.text(outcome.value)}", file=out)
        for v in m.variables:
            print(f"  {v.name} = {ops.text(outcome.point[v.name])}", file=out)
        print("basis: " + ", ".join(outcome.basis), file=out)
    elif isinstance(outcome, Unbounded):
        print("outcome: unbounded", file=out)
        for v in m.variables:
            print(f"  point {v.name} = {ops.text(outcome.point[v.name])}", file=out)
        for v in m.variables:
            print(f"  ray {v.name} = {ops.text(outcome.ray[v.name])}", file=out)
    else:
        print("outcome: infeasible", file=out)
        print(f"phase1: {ops.text(outcome.certificate)}", file=out)
    return EXIT_OK


def cmd_verify(args, cfg, out):
    m = _read_model(args.model, cfg.limits)
    lo, hi = _parse_box(args.box)
    box = Box.uniform(m, lo, hi)
    points = feasible_points(m, box, cfg.limits)
    print(f"feasible points in box {lo}:{hi}: {len(points)}", file=out)
    print(json.dumps([list(p) for p in points]), file=out)
    doc = {"box": [lo, hi], "points": [list(p) for p in points]}
    code = EXIT_OK
    if args.against:
        other = _read_model(args.against, cfg.limits)
        counterexample = check_equivalence(m, other, box, cfg.limits)
        if counterexample is not None:
            print(f"counterexample: {list(counterexample)}", file=out)
            doc["equivalent"] = False
            doc["counterexample"] = list(counterexample)
            code = EXIT_VERIFY
        else:
            print("equivalent: true", file=out)
            doc["equivalent"] = True
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=2, sort_keys=True)
            f.write("\n")
    return code


def cmd_export_lp(args, cfg, out):
    m = _read_model(args.model, cfg.limits)
    out.write(export_lp(m, args.precision))
    return EXIT_OK


_COMMANDS = {
    "canon": cmd_canon,
    "rationalize": cmd_rationalize,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "export-lp": cmd_export_lp,
}


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = CliConfig(limits=_limits(args), seed=args.seed)
        return _COMMANDS[args.command](args, cfg, out)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ModelError, DomainError, ExportError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RadratError as e:  # pragma: no cover - safety net
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
