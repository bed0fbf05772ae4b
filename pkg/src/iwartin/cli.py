"""Command-line front end.

Exit codes: 0 = pass/success, 1 = negative verdict (audit fail, funceq
Fail, search exhausted), 2 = bad input (schema or parse), 3 = internal
error or precision exhaustion where the spec assigns it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .artin import ArtinInstance, full_audit
from .errors import (
    IwartinError,
    ParseError,
    PrecisionExhausted,
    SchemaViolation,
    SearchExhausted,
)
from .iwasawa import (
    CoefficientRing,
    ElementaryModule,
    TwistCharacter,
    find_regular_twist,
    funceq_check,
    involute,
    twist,
    wprep,
)
from .modpfactor import PolyModP
from .perms import PermGroup
from .suite import DEFAULT_COUNT, DEFAULT_SEED, format_summary, run_suite

DEFAULT_PRECISION = (8, 24)


def _parse_precision(text: str) -> tuple:
    try:
        n, m = (int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"precision must be N,M: {text!r}")
    if n < 1 or m < 1:
        raise ParseError(f"precision out of range: {text!r}")
    return n, m


def _precision(args) -> tuple:
    if getattr(args, "precision", None):
        return _parse_precision(args.precision)
    env = os.environ.get("IWARTIN_PRECISION")
    if env:
        return _parse_precision(env)
    return DEFAULT_PRECISION


def _parse_series(ring: CoefficientRing, text: str):
    """Comma-separated ascending coefficients; colon-separated coordinates
    for unramified extensions (f > 1)."""
    coeffs = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ":" in part:
                coeffs.append([int(x) for x in part.split(":")])
            else:
                coeffs.append(int(part))
        except ValueError:
            raise ParseError(f"bad series coefficient: {part!r}")
    return ring.series(coeffs)


def _ring_from(args) -> CoefficientRing:
    n, m = _precision(args)
    return CoefficientRing(p=args.p, f=getattr(args, "f", 1) or 1, N=n, M=m)


def _instance_path(name: str) -> str:
    if os.path.exists(name):
        return name
    if name.endswith(".json"):
        base = name
    else:
        base = name + ".json"
    ref = resources.files("iwartin").joinpath("instances", base)
    if ref.is_file():
        return str(ref)
    raise SchemaViolation(f"no such instance file or bundled name: {name}")


def _o_repr(ring: CoefficientRing, c: tuple):
    return c[0] if ring.f == 1 else list(c)


def cmd_audit(args) -> int:
    try:
        inst = ArtinInstance.from_file(_instance_path(args.instance))
    except (SchemaViolation, ParseError, OSError, json.JSONDecodeError) as e:
        print(f"schema error: {e}", file=sys.stderr)
        return 2
    try:
        report = full_audit(inst)
    except IwartinError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    print(report.summary())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json(), fh, indent=2)
            fh.write("\n")
    return 0 if report.overall else 1


def cmd_chartab(args) -> int:
    with open(args.group) as fh:
        data = json.load(fh)
    gens = data["generators"]
    from .chartab import dixon_table
    table = dixon_table(PermGroup.from_generators(len(gens[0]), gens))
    print(f"order {table.group.order}, {len(table.irreducibles)} classes")
    print("degrees:", table.degrees())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(table.to_json(), fh, indent=2)
            fh.write("\n")
    return 0


def cmd_factor(args) -> int:
    coeffs = [int(x) for x in args.poly.split(",")]
    poly = PolyModP.from_integers(coeffs, args.p)
    pairs = poly.factor_degrees()
    sqfree = poly.is_squarefree()
    print(f"mod {args.p}: squarefree={sqfree} factor (degree, multiplicity): "
          f"{pairs}")
    return 0


def cmd_wprep(args) -> int:
    R = _ring_from(args)
    w = wprep(_parse_series(R, args.series))
    print(f"mu = {w.mu}")
    print(f"lambda = {w.lam}")
    print(f"P = {w.P.to_list()}")
    print(f"unit = {w.unit.to_list()}")
    print(f"certified precision: p-digits {w.precision[0]}, "
          f"X-degree {w.precision[1]}")
    return 0


def cmd_twist(args) -> int:
    R = _ring_from(args)
    t = TwistCharacter.from_value(R, args.u)
    print(twist(_parse_series(R, args.series), t).to_list())
    return 0


def cmd_involute(args) -> int:
    R = _ring_from(args)
    print(involute(_parse_series(R, args.series)).to_list())
    return 0


def cmd_funceq(args) -> int:
    R = _ring_from(args)
    F_V = _parse_series(R, args.fv)
    F_U = _parse_series(R, args.fu)
    kappa = TwistCharacter.from_value(
        R, args.kappa if args.kappa is not None else 1 + R.p)
    for label, F in (("involuted first series", involute(F_V)),
                     ("twisted second series", twist(F_U, kappa))):
        w = wprep(F)
        print(f"{label}: mu = {w.mu}, P = {w.P.to_list()}")
    verdict = funceq_check(F_V, F_U, kappa)
    print(verdict)
    return 0 if verdict == "Pass" else 1


def cmd_regtwist(args) -> int:
    with open(args.module) as fh:
        data = json.load(fh)
    n, m = _precision(args)
    R = CoefficientRing(p=int(data["p"]), f=int(data.get("f", 1)), N=n, M=m)
    factors = tuple(
        (R.series(item["coeffs"]), int(item.get("multiplicity", 1)))
        for item in data.get("poly_factors", []))
    E = ElementaryModule(R, tuple(data.get("p_power_factors", [])), factors)
    t = find_regular_twist(E, args.nmax)
    print(f"regular twist: u = {_o_repr(R, t.u)}")
    return 0


def cmd_suite(args) -> int:
    precision = _precision(args)
    results = run_suite(seed=args.seed, precision=precision, count=args.count)
    print(format_summary(results, args.seed, precision))
    return 0 if all(r.failed == 0 for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="iwartin",
        description="Hypothesis audits for dual representation triples and "
                    "exact operator calculus on truncated power series.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_precision(sp):
        sp.add_argument("--precision", metavar="N,M",
                        help="working precision (default from "
                             "IWARTIN_PRECISION or 8,24)")

    sp = sub.add_parser("audit", help="audit an instance file or bundled name")
    sp.add_argument("instance")
    sp.add_argument("--json", metavar="PATH", help="write the report as JSON")
    sp.set_defaults(fn=cmd_audit)

    sp = sub.add_parser("chartab", help="character table of a permutation group")
    sp.add_argument("--group", required=True,
                    help="JSON file with 1-based generator image arrays")
    sp.add_argument("--json", metavar="PATH")
    sp.set_defaults(fn=cmd_chartab)

    sp = sub.add_parser("factor", help="factor degrees of a polynomial mod p")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--poly", required=True, metavar="c0,c1,...")
    sp.set_defaults(fn=cmd_factor)

    for name, fn in (("wprep", cmd_wprep), ("twist", cmd_twist),
                     ("involute", cmd_involute)):
        sp = sub.add_parser(name, help=f"{name} of a truncated series")
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--f", type=int, default=1,
                        help="unramified residue degree (default 1)")
        sp.add_argument("--series", required=True, metavar="c0,c1,...")
        if name == "twist":
            sp.add_argument("--u", type=int, required=True,
                            help="twist value, must be 1 mod p")
        add_precision(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("funceq", help="functional-equation decision")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", type=int, default=1)
    sp.add_argument("--fv", required=True, metavar="c0,c1,...")
    sp.add_argument("--fu", required=True, metavar="c0,c1,...")
    sp.add_argument("--kappa", type=int, default=None,
                    help="value of the cyclotomic twist (default 1+p)")
    add_precision(sp)
    sp.set_defaults(fn=cmd_funceq)

    sp = sub.add_parser("regtwist", help="search for a regular twist")
    sp.add_argument("--module", required=True,
                    help="JSON elementary-module description")
    sp.add_argument("--nmax", type=int, required=True)
    add_precision(sp)
    sp.set_defaults(fn=cmd_regtwist)

    sp = sub.add_parser("suite", help="run the randomized property batteries")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--count", type=int, default=DEFAULT_COUNT)
    add_precision(sp)
    sp.set_defaults(fn=cmd_suite)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except SchemaViolation as e:
        print(f"schema error: {e}", file=sys.stderr)
        return 2
    except PrecisionExhausted as e:
        print(f"precision exhausted: {e}", file=sys.stderr)
        return 3
    except SearchExhausted as e:
        print(f"search exhausted: {e}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except IwartinError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
