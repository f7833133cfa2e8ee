"""Command-line front end (``tmp``).

Exit codes: 0 success, 2 parse or validation error, 3 precision exhausted,
1 anything unexpected.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import newton as nw
from . import smith
from .errors import FieldError, NilpotencyViolation, ParseError, PrecisionExhausted, TModError
from .fields import fq
from .tmodule import (PRESETS, asp_check, d2_structure_report, format_structure_report,
                      from_json, preset)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3

PRESET_NOTES = {
    "carlitz": "Carlitz module theta + tau",
    "maurischat": "Maurischat's two-dimensional module M (weight 2/3 in characteristic 2)",
    "d2": "pure, not almost strictly pure module D2 (constant term theta*I)",
    "d2-constant-I": "D2 with constant term I and theta = 1",
    "d2m": "D2 plus m Carlitz blocks",
}


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _field_from_args(args):
    if args.k == 1 and args.modulus is None:
        return None
    modulus = None
    if args.modulus:
        modulus = tuple(int(c) for c in args.modulus.split(","))
    q = args.q
    p = round(q ** (1 / args.k))
    while p**args.k < q:
        p += 1
    if p**args.k != q:
        raise FieldError(f"q = {q} is not a {args.k}-th power of a prime")
    return fq(p, args.k, modulus)


def load_module(args):
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            E = from_json(fh.read())
        header = {"source": args.file}
    else:
        name = args.preset or "carlitz"
        E = preset(name, args.q, args.m, _field_from_args(args))
        header = {"preset": name, "about": PRESET_NOTES.get(name, "")}
    E.validate()
    header.update({"q": E.F.q, "d": E.d, "tau_degree": E.r})
    return E, header


def _diag_report(res):
    return {
        "diagonal": [str(e) for e in res.diagonal],
        "degrees": res.degrees(),
        "steps": res.steps(),
        "precision": res.prec_used,
        "escalations": res.escalations,
    }


def _plot(args, polygon, title):
    if args.plot == "ascii":
        return nw.plot_ascii(polygon)
    if args.plot == "svg":
        return nw.plot_svg(polygon, title)
    return None


def cmd_classify(args):
    E, header = load_module(args)
    c, res = nw.classify_tmodule(E, prec=args.precision, pivot_seed=args.pivot_seed)
    report = dict(header, **c.to_dict(), precision=res.prec_used)
    return report, _plot(args, c.polygon, header.get("preset", header.get("source", "")))


def cmd_asp(args):
    E, header = load_module(args)
    return dict(header, **asp_check(E, args.s_max).to_dict()), None


def cmd_invariants(args):
    E, header = load_module(args)
    res = smith.diagonalize(smith.char_matrix(E), prec=args.precision,
                            pivot_seed=args.pivot_seed)
    return dict(header, **_diag_report(res)), None


def cmd_newton(args):
    E, header = load_module(args)
    c, res = nw.classify_tmodule(E, prec=args.precision, pivot_seed=args.pivot_seed)
    report = dict(header, polygon=c.polygon.to_dict(), precision=res.prec_used)
    plot = _plot(args, c.polygon, header.get("preset", header.get("source", "")))
    return report, plot


def cmd_power(args):
    E, header = load_module(args)
    if args.n < 1:
        raise ValueError("-n must be >= 1")
    mats = E.power(args.n)
    coeffs = [[[str(e) for e in row] for row in A] for A in mats]
    return dict(header, n=args.n, coeffs=coeffs), None


def cmd_validate(args):
    E, header = load_module(args)
    return dict(header, valid=True), None


def cmd_report_d2(args):
    reports = [d2_structure_report(n, args.q, args.variant) for n in range(2, args.n + 1)]
    text = "\n\n".join(format_structure_report(r) for r in reports)
    return {"reports": reports, "shape_ok": all(r["shape_ok"] for r in reports)}, text


COMMANDS = {
    "classify": (cmd_classify, "abelian/pure verdict, weight and rank"),
    "asp": (cmd_asp, "search for a power with invertible leading coefficient"),
    "invariants": (cmd_invariants, "diagonalize t*I - D and list the steps"),
    "newton": (cmd_newton, "Newton polygon of the last invariant factor"),
    "power": (cmd_power, "coefficient matrices of D^n"),
    "validate": (cmd_validate, "check shapes and nilpotency of A_0 - theta*I"),
    "report-d2": (cmd_report_d2, "structure of D2^n: shapes and degree table"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="tmp", description="Purity of t-modules.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--preset", choices=sorted(PRESETS))
        src.add_argument("--file", help="t-module JSON file")
        p.add_argument("--q", type=int, default=2, help="field size for presets")
        p.add_argument("--k", type=int, default=1, help="extension degree of F_q over F_p")
        p.add_argument("--modulus", help="comma-separated modulus coefficients, low first")
        p.add_argument("--m", type=int, default=1, help="Carlitz blocks for d2m")
        p.add_argument("--s-max", type=int, default=8)
        p.add_argument("--precision", type=int, default=None)
        p.add_argument("--pivot-seed", type=int, default=None)
        p.add_argument("--plot", choices=["none", "ascii", "svg"], default="none")
        p.add_argument("--plot-file", help="write the plot here instead of stdout")
        p.add_argument("--output", choices=["json", "text"], default="json")
        default_n = 6 if name == "report-d2" else 2
        p.add_argument("-n", type=int, default=default_n, help="power (report-d2: max n)")
        if name == "report-d2":
            p.add_argument("--variant", default="theta-constant",
                           choices=["theta-constant", "constant-I"])
        p.set_defaults(func=COMMANDS[name][0])
    return parser


def _text(report, indent=0):
    lines = []
    pad = " " * indent
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_text(val, indent + 2))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(_text(item, indent + 2))
                lines.append("")
        else:
            lines.append(f"{pad}{key}: {_fmt(val)}")
    return "\n".join(lines)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.precision is not None and args.precision < 4:
        print("error: --precision must be >= 4", file=sys.stderr)
        return EXIT_INPUT
    if args.s_max < 1:
        print("error: --s-max must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        report, extra = args.func(args)
    except PrecisionExhausted as err:
        print(f"precision exhausted: {err}", file=sys.stderr)
        return EXIT_PRECISION
    except (NilpotencyViolation, ParseError, FieldError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except TModError as err:
        print(f"internal error: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.command == "report-d2":
        if args.output == "text":
            print(extra)
        else:
            print(json.dumps(report, indent=2))
        return EXIT_OK
    if extra is not None and args.plot_file:
        with open(args.plot_file, "w", encoding="utf-8") as fh:
            fh.write(extra if extra.endswith("\n") else extra + "\n")
        report["plot_file"] = args.plot_file
        extra = None
    if args.command == "newton" and extra is not None:
        sys.stdout.write(extra if extra.endswith("\n") else extra + "\n")
    elif args.output == "text":
        print(_text(report))
        if extra:
            print(extra)
    else:
        if extra is not None:
            report["plot"] = extra
        print(json.dumps(report, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
