"""Batch command-line frontend: parse, compute, report.

Subcommands: hall, dynkin, certify, simulate, kalman, extend, quotient.
Reports are JSON by default (exact rationals as "p/q" strings; only fitted
slopes are floats), with text and CSV renderings where they make sense.
Exit codes: 0 success, 1 NOT_GOOD certification, 2 usage error,
3 computation error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import TruncSeries
from .appsys import PolyMap, Subspace, kalman_subspaces, scalar_extension, step3_extension
from .certify import NOT_GOOD, certify_good_bracket, iterate_ideal
from .errors import GoodBracketError, ParseError
from .expr import eval_expr, parse_expr
from .flows import PiecewiseControl, fast_osc_experiment, flow_endpoint
from .liecore import HallBasis, dynkin_project, format_tree, is_lie_element

SCHEMA_PREFIX = "goodbrackets"
SCHEMA_VERSION = "v1"


def _schema(name):
    return "%s/%s/%s" % (SCHEMA_PREFIX, name, SCHEMA_VERSION)


def _parse_control(text, width):
    """Pieces 'dur:v1,v2;dur:v1,v2' with rationals as p/q."""
    pieces = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise GoodBracketError(
                "control piece %r needs the form duration:v1,v2,..." % chunk)
        dur_s, _, vals_s = chunk.partition(":")
        dur = Fraction(dur_s.strip())
        if dur <= 0:
            raise GoodBracketError("piece duration %s is not positive" % dur)
        vals = tuple(Fraction(v.strip()) for v in vals_s.split(",") if v.strip())
        if len(vals) != width:
            raise GoodBracketError(
                "control width %d does not match --letters %d"
                % (len(vals), width))
        pieces.append((dur, vals))
    if not pieces:
        raise GoodBracketError("control has no pieces")
    return PiecewiseControl(pieces, k=width)


def _parse_vectors(text):
    """Rows 'x,y,z;x,y,z' of rationals."""
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            rows.append([Fraction(v.strip()) for v in chunk.split(",")])
    return rows


def _emit(args, payload, text_renderer=None, csv_renderer=None):
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        body = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    elif fmt == "csv":
        if csv_renderer is None:
            raise GoodBracketError("this report has no CSV form")
        body = csv_renderer()
    else:
        body = text_renderer() if text_renderer else (
            json.dumps(payload, indent=2) + "\n")
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _series_args(sub, degree_help="truncation degree n"):
    sub.add_argument("--letters", "-k", type=int, required=True,
                     help="controlled letters a1..ak (a0 is always present)")
    sub.add_argument("--degree", "-n", type=int, required=True, help=degree_help)


def _common_out(sub):
    sub.add_argument("--format", choices=("json", "text", "csv"), default="json")
    sub.add_argument("--out", help="write the report to a file")


def _cmd_hall(args):
    basis = HallBasis(args.letters, args.degree)
    payload = dict(basis.report())
    payload["schema"] = _schema("hall")

    def text():
        lines = ["hall basis: k=%d n=%d (%d elements)"
                 % (args.letters, args.degree, len(basis.elements))]
        for el in basis.elements:
            lines.append("%3d  deg %d  %s"
                         % (el.index, el.degree, format_tree(el.tree)))
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return 0


def _cmd_dynkin(args):
    x = eval_expr(parse_expr(args.expr), args.letters, args.degree)
    proj = dynkin_project(x)
    payload = {
        "schema": _schema("dynkin"),
        "letters": args.letters,
        "truncation": args.degree,
        "input": str(x),
        "projection": str(proj),
        "input_is_lie": is_lie_element(x),
    }
    _emit(args, payload, lambda: "%s\n" % proj)
    return 0


def _cmd_certify(args):
    x = eval_expr(parse_expr(args.expr), args.letters, args.degree)
    verdict = certify_good_bracket(x, cone=args.cone)
    payload = verdict.json()
    payload["schema"] = _schema("verdict")
    payload["input"] = args.expr

    def text():
        lines = ["%s (n=%d, k=%d)" % (verdict.status, verdict.scope, verdict.k)]
        if verdict.reason:
            lines.append("reason: %s" % verdict.reason)
        if verdict.sufficiency:
            lines.append("case: %s" % verdict.sufficiency)
        if verdict.matrix is not None:
            lines.append("moment matrix:")
            for row in verdict.matrix.entries:
                lines.append("  [%s]" % ", ".join(str(v) for v in row))
        if verdict.witness_vec is not None:
            lines.append("witness: (%s)" %
                         ", ".join(str(v) for v in verdict.witness_vec))
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return 1 if verdict.status == NOT_GOOD else 0


def _cmd_simulate(args):
    if args.mode == "flow":
        if not args.control:
            raise GoodBracketError("simulate flow needs --control")
        u = _parse_control(args.control, width=args.letters)
        res = flow_endpoint(u, args.letters, args.degree)
        payload = {
            "schema": _schema("flow"),
            "letters": args.letters,
            "truncation": args.degree,
            "control": str(u),
            "endpoint": str(res.endpoint),
            "logchart": str(res.logchart),
        }
        _emit(args, payload,
              lambda: "endpoint: %s\nlog: %s\n" % (res.endpoint, res.logchart))
        return 0
    if not args.profile:
        raise GoodBracketError("simulate osc needs --profile")
    if not args.eps:
        raise GoodBracketError("simulate osc needs --eps")
    v = _parse_control(args.profile, width=args.letters)
    eps_list = [Fraction(e.strip()) for e in args.eps.split(",") if e.strip()]
    report = fast_osc_experiment(v, Fraction(args.time), eps_list,
                                 args.letters, args.degree)
    payload = report.json()
    payload["schema"] = _schema("experiment")

    def text():
        lines = ["target: %s" % report.target,
                 "slope_single: %s  slope_global: %s"
                 % (report.slope_single, report.slope_global)]
        for eps, step, glob, _ in report.rows:
            lines.append("eps=%s  step_err=%s  global_err=%s" % (eps, step, glob))
        return "\n".join(lines) + "\n"

    _emit(args, payload, text, report.csv)
    return 0


def _cmd_kalman(args):
    if os.path.exists(args.map):
        with open(args.map) as fh:
            doc = json.load(fh)
    else:
        try:
            doc = json.loads(args.map)
        except json.JSONDecodeError as exc:
            raise GoodBracketError(
                "--map is neither a file nor inline JSON: %s" % exc)
    f = PolyMap.from_json(doc)
    rows = _parse_vectors(args.u)
    u = Subspace(f.dim, rows)
    chain = kalman_subspaces(f, u)
    payload = {
        "schema": _schema("kalman"),
        "map": f.json(),
        "start_dimension": u.dim,
        "chain": [s.json() for s in chain],
        "final_dimension": chain[-1].dim,
        "reaches_full_space": chain[-1].dim == f.dim,
    }

    def text():
        dims = " -> ".join(str(s.dim) for s in chain)
        return "chain dimensions: %s (ambient %d)\n" % (dims, f.dim)

    _emit(args, payload, text)
    return 0


def _cmd_extend(args):
    if args.kind == "step3":
        if args.k is None:
            raise GoodBracketError("extend step3 needs --k")
        spec = step3_extension(args.k)
    else:
        if args.m is None:
            raise GoodBracketError("extend scalar needs --m")
        spec = scalar_extension(args.m)
    payload = spec.json()
    payload["schema"] = _schema("extension")

    def text():
        lines = ["%s extension, parameter %d, %d controls"
                 % (spec.kind, spec.parameter, spec.control_count)]
        for f in spec.fields:
            coeff = f.get("coefficient")
            lines.append("  %s%s %s" % (
                f["control"], " * %s" % coeff if coeff else "", f["field"]))
        lines.append("constraint matrix:")
        for row in spec.constraint["matrix"]:
            lines.append("  [%s]" % ", ".join(row))
        if spec.free:
            lines.append("free: %s" % ", ".join(spec.free))
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return 0


def _cmd_quotient(args):
    v = eval_expr(parse_expr(args.v), args.letters, args.degree)
    z_list = None
    if args.z:
        z_list = [eval_expr(parse_expr(zsrc), args.letters, args.degree)
                  for zsrc in args.z]
    report = iterate_ideal(v, args.m, args.degree, z_list)
    payload = report.json()
    payload["schema"] = _schema("quotient")

    def text():
        lines = ["ideal dimension %d, identity %s"
                 % (report.context.dim(),
                    "verified" if report.identity_checked else "FAILED"),
                 "direction: %s" % report.direction]
        for d in report.reduced:
            lines.append("reduced: %s" % d)
        lines.append("span dimension: %d" % report.span_dim)
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="goodbrackets",
        description="good-bracket certification and truncated-flow tools")
    subs = p.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("hall", help="Hall basis report")
    _series_args(sp)
    _common_out(sp)
    sp.set_defaults(func=_cmd_hall)

    sp = subs.add_parser("dynkin", help="Dynkin projection of an expression")
    _series_args(sp)
    sp.add_argument("expr")
    _common_out(sp)
    sp.set_defaults(func=_cmd_dynkin)

    sp = subs.add_parser("certify", help="good-bracket verdict")
    _series_args(sp)
    sp.add_argument("--cone", action="store_true",
                    help="accept any positive a0 coefficient, rescaling")
    sp.add_argument("expr")
    _common_out(sp)
    sp.set_defaults(func=_cmd_certify)

    sp = subs.add_parser("simulate", help="flow endpoint or oscillation table")
    sp.add_argument("mode", choices=("flow", "osc"))
    _series_args(sp)
    sp.add_argument("--control", help="flow: pieces dur:v1,v2;...")
    sp.add_argument("--profile", help="osc: profile on [0,1], pieces dur:v1,...")
    sp.add_argument("--time", default="1", help="osc: horizon t")
    sp.add_argument("--eps", help="osc: comma-separated eps values")
    _common_out(sp)
    sp.set_defaults(func=_cmd_simulate)

    sp = subs.add_parser("kalman", help="generalized controllability chain")
    sp.add_argument("--map", required=True,
                    help="PolyMap JSON file or inline JSON")
    sp.add_argument("--u", required=True, help="start subspace rows v1;v2;...")
    _common_out(sp)
    sp.set_defaults(func=_cmd_kalman)

    sp = subs.add_parser("extend", help="extended-system templates")
    sp.add_argument("kind", choices=("step3", "scalar"))
    sp.add_argument("--k", type=int, help="step3: controlled field count")
    sp.add_argument("--m", type=int, help="scalar: polynomial degree")
    _common_out(sp)
    sp.set_defaults(func=_cmd_extend)

    sp = subs.add_parser("quotient", help="ideal-quotient direction report")
    _series_args(sp)
    sp.add_argument("--m", type=int, required=True, help="half the ideal power")
    sp.add_argument("--z", action="append",
                    help="group element (repeatable), default identity")
    sp.add_argument("v", help="the Lie element driving the iteration")
    _common_out(sp)
    sp.set_defaults(func=_cmd_quotient)

    return p


def run_command(argv):
    """Dispatch argv; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage or help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 3
    except GoodBracketError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 3


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
