"""binform command line.

    binform analyze 1 0 0 1
    binform count 1 0 0 1 --z 2000 --box 300 --csv
    binform ladder 1 0 0 0 1 --zs 1e4,1e5,1e6

Reports go to stdout as JSON (CSV with --csv); diagnostics go to stderr.
Exit status: 0 success, 1 failed internal check, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .area import DEFAULT_TOL, a_f_quadrature
from .asymptotics import ladder, predict, weight_input
from .autgroup import DEFAULT_DENOMINATOR_BOUND, DEFAULT_PRECISION, compute_aut
from .counting import box_for, count, enumerate_reps, thue_audit
from .errors import (BudgetError, InternalCheckError, InvalidFormError, PrecisionError,
                     QuadratureError)
from .forms import BinaryForm, discriminant, require_analyzable
from .lattices import check_lcm_relations, check_order3_identity, fixed_lattice, hooley_m

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print("binform: error: %s" % message, file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _z_value(text: str) -> int:
    # accept 1e6 as well as 1000000
    try:
        v = float(text) if any(c in text for c in "eE.") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not a number: %r" % text) from None
    if v != int(v) or v < 0:
        raise argparse.ArgumentTypeError("Z must be a nonnegative integer: %r" % text)
    return int(v)


def _z_list(text: str) -> list:
    return [_z_value(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("coeffs", nargs="+", help="integer coefficients, x^d first")
    common.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION)
    common.add_argument("--denominator-bound", type=int, default=DEFAULT_DENOMINATOR_BOUND)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--digits", type=int, default=20, help="digits for decimal output")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="binform", description="Values of integer binary forms.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common], help="automorphisms, weight, area and C_F")
    sub.add_parser("aut", parents=[common], help="automorphism group certificate")
    sub.add_parser("area", parents=[common], help="area of |F| <= 1")
    c = sub.add_parser("count", parents=[common], help="N_F, R_F and the essential split")
    c.add_argument("--z", type=_z_value, required=True)
    c.add_argument("--box", type=int, default=None)
    c.add_argument("--csv", action="store_true", help="per-h rows instead of the summary")
    l = sub.add_parser("ladder", parents=[common], help="R_F(Z) against C_F Z^(2/d)")
    l.add_argument("--zs", type=_z_list, required=True)
    l.add_argument("--box", type=int, default=None)
    l.add_argument("--csv", action="store_true")
    v = sub.add_parser("verify", parents=[common], help="run the internal consistency checks")
    v.add_argument("--z", type=_z_value, default=1000)
    v.add_argument("--box", type=int, default=None)
    return p


def _group(F, args):
    return compute_aut(F, precision=args.precision_bits, denominator_bound=args.denominator_bound)


def _verify(F, args) -> dict:
    checks = {}
    G = _group(F, args)
    _, m = fixed_lattice(G)
    checks["group_axioms"] = True
    inp = None
    try:
        inp = weight_input(G)
        checks["weight_inputs"] = True
    except (InternalCheckError, InvalidFormError):
        checks["weight_inputs"] = False
    if G.label in ("D3", "D4", "D6"):
        checks["lcm_relations"] = check_lcm_relations(G)
    order3 = [A for A in G.elements if A.order(3) == 3]
    if order3:
        checks["order3_identity"] = all(check_order3_identity(A) for A in order3)
    if F.degree == 3 and G.label == "C3":
        checks["hooley_m"] = hooley_m(F) == m
    box = box_for(F, args.z, args.box)
    idx = enumerate_reps(F, args.z, box)
    idx.check(F, args.z)
    checks["thue_audit"] = thue_audit(idx, F.degree)
    return {"form": list(F.coeffs), "label": G.label, "m": m,
            "m_i": list(inp.ms) if inp else None, "checks": checks,
            "ok": all(checks.values())}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="binform: %(message)s")
    try:
        F = BinaryForm.parse(args.coeffs)
        require_analyzable(F)
        text = None
        status = EXIT_OK
        if args.command == "analyze":
            report = predict(F, tol=args.tol, precision=args.precision_bits,
                             denominator_bound=args.denominator_bound).to_json(args.digits)
            report["discriminant"] = str(discriminant(F))
        elif args.command == "aut":
            report = _group(F, args).to_json()
        elif args.command == "area":
            report = a_f_quadrature(F, tol=args.tol).to_json(args.digits)
        elif args.command == "count":
            rep = count(F, args.z, _group(F, args), box_for(F, args.z, args.box))
            report = rep.to_json()
            if args.csv:
                text = rep.to_csv()
        elif args.command == "ladder":
            pred = predict(F, tol=args.tol, precision=args.precision_bits,
                           denominator_bound=args.denominator_bound)
            rep = ladder(F, args.zs, prediction=pred, box=args.box)
            report = rep.to_json()
            if args.csv:
                text = rep.to_csv()
        else:
            report = _verify(F, args)
            if not report["ok"]:
                status = EXIT_CHECK
    except (InvalidFormError, BudgetError, ValueError) as exc:
        print("binform: invalid input: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (InternalCheckError, PrecisionError, QuadratureError) as exc:
        print("binform: check failed: %s" % exc, file=sys.stderr)
        return EXIT_CHECK
    if text is None:
        text = json.dumps(report, indent=2) + "\n"
    out.write(text)
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
