"""Command-line frontend: radius, bombieri, verify and sweep subcommands.

Exit codes form a total function of the outcome class:

====  =====================================================
code  meaning
====  =====================================================
0     success (for ``verify``: every check holds)
1     malformed arguments or an invalid sweep grid
2     request outside a proven validity region
3     no root / bracket exhausted
4     a verification check failed
5     output file could not be written
====  =====================================================

JSON output uses a canonical form -- insertion-ordered keys and 10
significant digits for floats -- so parsing a result and re-serializing it
is byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bohr, verify
from .exceptions import BohrError, NoRootError, ValidityError
from .kernels import derivative_pair, id0_pair, integral_pair, lacunary_pair
from .series import ORDER_ENV
from .specfun import HypergeometricParams, dilog

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDITY = 2
EXIT_NO_ROOT = 3
EXIT_CHECK_FAILED = 4
EXIT_OUTPUT = 5

_SUITES = ("thm1-oracle", "lemma", "goluzin", "thm8", "thm9", "sharpness",
           "all")


class _UsageError(Exception):
    """Raised for malformed arguments; mapped to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


# ----------------------------------------------------------------------
# canonical JSON
# ----------------------------------------------------------------------


def canonical_json(obj) -> str:
    """Serialize with insertion-ordered keys and %.10g float formatting.

    The formatting is idempotent: parsing the output and serializing again
    yields the same bytes (floats that print as integers re-enter as ints
    and print identically).  Non-finite floats become strings.
    """
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return json.dumps(str(value))
        return "%.10g" % value
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(canonical_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = ", ".join(
            json.dumps(str(k)) + ": " + canonical_json(v)
            for k, v in obj.items())
        return "{" + items + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n",
                              encoding="utf-8")


# ----------------------------------------------------------------------
# subcommand implementations
# ----------------------------------------------------------------------


def _require_m(args, minimum: int) -> int:
    m = 1 if args.m is None else args.m
    if m < minimum:
        raise _UsageError(f"--m must be at least {minimum}, got {m}")
    return m


def cmd_radius(args) -> int:
    """Compute a Bohr radius and print it as a RadiusResult JSON object."""
    tol = 1e-13 if args.tol is None else args.tol
    if args.pair == "id0":
        a = 1.0 if args.a is None else args.a
        value = bohr.radius_id0(a)
        residual = abs(bohr.bombieri_id0_with_a(value, a) - 1.0)
        result = bohr.RadiusResult(
            value=value, method="closed_form", residual=residual,
            bracket=None, hypotheses=(("1/2 < a <= 1", True),))
    elif args.pair == "derivative":
        m = _require_m(args, 0)
        if args.a is None:
            value = bohr.radius_derivative_pair(m)
            residual = abs(bohr.bombieri_derivative_with_a(m, value, 1.0)
                           - 1.0)
            result = bohr.RadiusResult(
                value=value, method="closed_form", residual=residual,
                bracket=None,
                hypotheses=(("full radius (a = 1 endpoint)", True),))
        else:
            result = bohr.radius_derivative_pair_with_a(m, args.a)
    elif args.pair == "lacunary":
        m = _require_m(args, 1)
        a = 1.0 if args.a is None else args.a
        result = bohr.radius_lacunary_with_a(m, a)
    elif args.pair == "integral":
        if args.bound == "lower":
            value = bohr.radius_integral_lower()
            residual = abs(dilog(value * value) - 1.0)
            result = bohr.RadiusResult(
                value=value, method="bisection", residual=residual,
                bracket=(0.1, 0.999),
                hypotheses=(("dilogarithm increasing on [0, 1]", True),))
        elif args.bound == "upper":
            r_min, a_min = bohr.radius_integral_upper()
            residual = abs(bohr.bombieri_integral_with_a(r_min, a_min) - 1.0)
            result = bohr.RadiusResult(
                value=r_min, method="minimization", residual=residual,
                bracket=None,
                hypotheses=((f"minimizer a = {a_min:.10g}", True),
                            ("r(a) < a at the minimizer", r_min < a_min)))
        elif args.a is None:
            raise ValidityError(
                "the antiderivative radius needs --a above the certified "
                "threshold, or --bound {lower,upper} for the two-sided "
                "bounds")
        else:
            result = bohr.radius_integral_with_a(args.a)
    else:  # hypergeometric
        if args.params is None:
            raise _UsageError(
                "--params A B C is required for the hypergeometric radius")
        try:
            params = HypergeometricParams(*args.params)
        except ValueError as exc:
            raise ValidityError(str(exc)) from exc
        result = bohr.radius_hypergeometric(params, tol=tol)
    _emit(canonical_json(result.to_dict()), args.json)
    return EXIT_OK


_BOMBIERI_DISPATCH = {
    "id0": lambda r, a, m: bohr.bombieri_id0_with_a(r, a),
    "derivative": lambda r, a, m: bohr.bombieri_derivative_with_a(m, r, a),
    "integral": lambda r, a, m: bohr.bombieri_integral_with_a(r, a),
    "lacunary": lambda r, a, m: bohr.bombieri_lacunary_with_a(m, r, a),
}

_PAIR_BUILDERS = {
    "id0": lambda m: id0_pair(),
    "derivative": lambda m: derivative_pair(m),
    "integral": lambda m: integral_pair(),
    "lacunary": lambda m: lacunary_pair(m),
}


def cmd_bombieri(args) -> int:
    """Evaluate a Bohr-Bombieri value m(r[, a]) or the Cesaro bound."""
    if args.r is None:
        raise _UsageError("--r is required")
    r = args.r
    if args.pair == "cesaro":
        value = bohr.cesaro_bombieri_bound(r)
        hypotheses = (("0 <= r <= 0.5335 (bound range)", True),)
    elif args.a is None:
        if args.pair != "id0":
            raise ValidityError(
                "the unconstrained Bohr-Bombieri function has a closed form "
                "for the identity pair only; pass --a for other pairs")
        value = bohr.bombieri_id0(r)
        hypotheses = (("r <= 1/sqrt(2)", True),
                      ("unit regime r <= 1/3", r <= 1.0 / 3.0 + 1e-15))
    else:
        m = _require_m(args, 1 if args.pair == "lacunary" else 0)
        value = _BOMBIERI_DISPATCH[args.pair](r, args.a, m)
        pair = _PAIR_BUILDERS[args.pair](m)
        if pair.gap >= 2:
            hypotheses = (
                ("0 <= r < 1", 0.0 <= r < 1.0),
                ("0 < a <= 1", 0.0 < args.a <= 1.0),
                (f"a > r^{pair.gap} (condensed identity-pair regime)",
                 args.a > r ** pair.gap),
            )
        else:
            hypotheses = bohr.bombieri_hypotheses(pair.h1, pair.h2, pair.l,
                                                  args.a, r)
    result = {
        "value": value,
        "method": "closed_form",
        "residual": 0.0,
        "bracket": None,
        "hypotheses": [{"name": name, "ok": ok} for name, ok in hypotheses],
    }
    _emit(canonical_json(result), args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Run a verification suite; exit 0 iff every check holds."""
    samples = 1000 if args.samples is None else args.samples
    if samples < 1:
        raise _UsageError("--samples must be positive")
    kwargs = {} if args.seed is None else {"seed": args.seed}
    if args.suite == "all":
        reports = verify.run_all_suites(samples, **kwargs)
        payload = [report.to_dict() for report in reports]
    else:
        if args.suite == "thm1-oracle":
            report = verify.run_oracle_suite(samples, **kwargs)
        elif args.suite == "lemma":
            report = verify.run_lemma_suite(samples, **kwargs)
        elif args.suite == "goluzin":
            report = verify.run_goluzin_suite(samples, **kwargs)
        elif args.suite == "thm8":
            report = verify.run_subordination_suite(samples, **kwargs)
        elif args.suite == "thm9":
            report = verify.run_majorization_suite(samples, **kwargs)
        else:  # sharpness
            pair = "id0" if args.pair is None else args.pair
            report = verify.run_sharpness_suite(pair, samples=samples,
                                                **kwargs)
        reports = [report]
        payload = report.to_dict()
    _emit(canonical_json(payload), args.json)
    return EXIT_OK if all(r.holds for r in reports) else EXIT_CHECK_FAILED


def _sweep_row(quantity: str, m: int, a: float) -> dict:
    """One sweep row {a, r, valid, condition[, diag]} at grid point a."""
    row = {"a": float(a), "r": None, "valid": False, "condition": ""}
    if quantity == "integral_with_a":
        row["diag"] = float(a)
        threshold = bohr.integral_threshold()
        try:
            row["r"] = bohr.integral_r_of_a(a)
        except ValidityError as exc:
            row["condition"] = str(exc)
            return row
        if a > threshold:
            row["valid"] = True
        else:
            row["condition"] = (
                f"a <= threshold {threshold:.6f}: crossing of r(a) with "
                f"r = a; the radius is uncertified here")
        return row
    try:
        if quantity == "id0":
            row["r"] = bohr.radius_id0(a)
        elif quantity == "derivative_with_a":
            row["r"] = bohr.radius_derivative_pair_with_a(m, a).value
        else:  # lacunary
            row["r"] = bohr.radius_lacunary_with_a(m, a).value
        row["valid"] = True
    except ValidityError as exc:
        row["condition"] = str(exc)
    return row


def _sweep_csv(rows: list[dict], with_diag: bool) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["a", "r", "valid", "condition"]
    if with_diag:
        header.append("diag")
    writer.writerow(header)
    for row in rows:
        record = ["%.10g" % row["a"],
                  "" if row["r"] is None else "%.10g" % row["r"],
                  "true" if row["valid"] else "false",
                  row["condition"]]
        if with_diag:
            record.append("%.10g" % row["diag"])
        writer.writerow(record)
    return buffer.getvalue()


def cmd_sweep(args) -> int:
    """Sweep a fixed-coefficient radius over an a-grid; emit CSV or JSON."""
    if args.count is None or args.start is None or args.stop is None:
        raise _UsageError("--start, --stop and --count are required")
    if args.count < 2:
        raise _UsageError(f"--count must be at least 2, got {args.count}")
    if not args.start < args.stop:
        raise _UsageError(
            f"--start must be below --stop, got [{args.start}, {args.stop}]")
    if args.json is not None and args.csv is not None:
        raise _UsageError("--json and --csv are mutually exclusive")
    m = _require_m(args, 1 if args.quantity == "lacunary" else 0)
    grid = np.linspace(args.start, args.stop, args.count)
    rows = [_sweep_row(args.quantity, m, float(a)) for a in grid]
    with_diag = args.quantity == "integral_with_a"
    if args.json is not None:
        _emit(canonical_json(rows), args.json)
        out_path = args.json
    else:
        _emit(_sweep_csv(rows, with_diag), args.csv)
        out_path = args.csv
    if out_path is not None and not args.no_plot:
        from . import plotting

        figure = Path(out_path).with_suffix(".png")
        plotting.render_sweep(rows, args.quantity, figure)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser assembly and entry point
# ----------------------------------------------------------------------


def _add_common(parser: _Parser, *, csv_flag: bool = False) -> None:
    parser.add_argument("--order", type=int, default=None,
                        help="series truncation order (default 256, or the "
                             f"{ORDER_ENV} environment variable)")
    parser.add_argument("--tol", type=float, default=None,
                        help="root-finding tolerance for bisection paths")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for stochastic verification")
    parser.add_argument("--samples", type=int, default=None,
                        help="sample count for stochastic verification")
    parser.add_argument("--json", metavar="PATH", default=None,
                        help="write JSON output to PATH instead of stdout")
    if csv_flag:
        parser.add_argument("--csv", metavar="PATH", default=None,
                            help="write CSV output to PATH instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="bohrconv",
        description="Bohr radii and Bohr-Bombieri functions of "
                    "Hadamard-convolution operators, with empirical "
                    "verification suites and radius sweeps.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    radius = sub.add_parser(
        "radius", help="compute a Bohr radius",
        description="Compute a Bohr radius; prints a RadiusResult JSON "
                    "object {value, method, residual, bracket, hypotheses}.")
    radius.add_argument("--pair", required=True,
                        choices=["id0", "derivative", "integral", "lacunary",
                                 "hypergeometric"])
    radius.add_argument("--a", type=float, default=None,
                        help="fixed coefficient modulus a in (0, 1]")
    radius.add_argument("--m", type=int, default=None,
                        help="derivative order / lacunary gap")
    radius.add_argument("--bound", choices=["lower", "upper"], default=None,
                        help="two-sided bounds for the antiderivative radius")
    radius.add_argument("--params", type=float, nargs=3, default=None,
                        metavar=("A", "B", "C"),
                        help="Gauss series parameters for --pair "
                             "hypergeometric")
    _add_common(radius)
    radius.set_defaults(func=cmd_radius)

    bombieri = sub.add_parser(
        "bombieri", help="evaluate a Bohr-Bombieri value",
        description="Evaluate m(r[, a]) for a built-in pair, or the Cesaro "
                    "logarithmic bound.")
    bombieri.add_argument("--pair", required=True,
                          choices=["id0", "derivative", "integral",
                                   "lacunary", "cesaro"])
    bombieri.add_argument("--r", type=float, default=None, help="radius r")
    bombieri.add_argument("--a", type=float, default=None,
                          help="fixed coefficient modulus; omit for the "
                               "unconstrained identity-pair value")
    bombieri.add_argument("--m", type=int, default=None,
                          help="derivative order / lacunary gap")
    _add_common(bombieri)
    bombieri.set_defaults(func=cmd_bombieri)

    verify_cmd = sub.add_parser(
        "verify", help="run an empirical verification suite",
        description="Run a verification suite and print its report; exits "
                    "4 when a check fails.")
    verify_cmd.add_argument("--suite", required=True, choices=list(_SUITES))
    verify_cmd.add_argument("--pair", choices=["id0", "lacunary"],
                            default=None,
                            help="sharpness configuration (suite sharpness)")
    _add_common(verify_cmd)
    verify_cmd.set_defaults(func=cmd_verify)

    sweep = sub.add_parser(
        "sweep", help="sweep a fixed-coefficient radius over an a-grid",
        description="Emit r(a) over a grid as CSV (header "
                    "a,r,valid,condition) or JSON; a PNG figure is rendered "
                    "next to file output unless --no-plot.")
    sweep.add_argument("--quantity", required=True,
                       choices=["id0", "derivative_with_a", "lacunary",
                                "integral_with_a"])
    sweep.add_argument("--m", type=int, default=None,
                       help="derivative order / lacunary gap")
    sweep.add_argument("--start", type=float, default=None,
                       help="first grid value of a")
    sweep.add_argument("--stop", type=float, default=None,
                       help="last grid value of a")
    sweep.add_argument("--count", type=int, default=None,
                       help="number of grid points (>= 2)")
    sweep.add_argument("--no-plot", action="store_true",
                       help="skip rendering the PNG figure")
    _add_common(sweep, csv_flag=True)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def entry(argv=None) -> int:
    """Console entry point; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    previous = os.environ.get(ORDER_ENV)
    if args.order is not None:
        if args.order < 8:
            sys.stderr.write("error: --order must be at least 8\n")
            return EXIT_USAGE
        os.environ[ORDER_ENV] = str(args.order)
    try:
        return args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NoRootError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NO_ROOT
    except ValidityError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDITY
    except BohrError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDITY
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_OUTPUT
    finally:
        if args.order is not None:
            if previous is None:
                os.environ.pop(ORDER_ENV, None)
            else:
                os.environ[ORDER_ENV] = previous


main = entry

if __name__ == "__main__":
    sys.exit(entry())
