"""Command-line entry point: ``twyangian {relations,current,oracle,euler}``.

Log verbosity is read from ``TWYANGIAN_LOG`` (a logging level name such as
DEBUG or INFO; default WARNING).  Exit status is 0 iff every selected check
passed, 1 if any failed and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .current import check_current_relations, cross_check_hbar_zero
from .flags import euler_class, tangent_weights, validate_dimvec
from .localization import fixed_points, oracle_compare
from .relations import YANGIAN_CATALOG, Report, run_suite
from .weyl import SignedPerm, parabolic_group

log = logging.getLogger("twyangian")


def _setup_logging():
    level = os.environ.get("TWYANGIAN_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _relation_ids(text: str):
    if text == "all":
        return "all"
    ids = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [t for t in ids if t not in YANGIAN_CATALOG]
    if unknown:
        raise ValueError(f"unknown relation ids {unknown}; known: {', '.join(YANGIAN_CATALOG)}")
    return ids


def _finish(report: Report, out) -> int:
    print(report.text())
    if out:
        report.dump(out)
    return 0 if report.ok else 1


def cmd_relations(args) -> int:
    report = run_suite(args.lie_type, args.n, args.d, args.r_max, args.s_max,
                       h_mode=args.h_mode, relations=_relation_ids(args.relations))
    res = report.extra.get("h_mode_resolution")
    if res:
        print(f"h mode resolved to {res['mode']} (passing modes: {res['passed'] or 'none'})")
    return _finish(report, args.out)


def cmd_current(args) -> int:
    report = check_current_relations(args.n, args.r_max, args.s_max)
    if args.d is not None:
        for lt in args.lie_types.split(","):
            report.checks += cross_check_hbar_zero(lt, args.n, args.d, args.r_max, args.s_max).checks
    return _finish(report, args.out)


def cmd_oracle(args) -> int:
    entry = oracle_compare(args.lie_type, args.n, args.d, args.gen, args.i, args.r, args.degree)
    report = Report(checks=[entry])
    print(f"{entry['compared']} comparisons")
    if entry["witness"]:
        print(json.dumps(entry["witness"], indent=2))
    return _finish(report, args.out)


def cmd_euler(args) -> int:
    nu_raw = [int(v) for v in args.dimvec.split(",")]
    if len(nu_raw) % 2 == 0:
        raise ValueError("dimension vector needs an odd number 2n+1 of entries")
    n = (len(nu_raw) - 1) // 2
    d = (sum(nu_raw) - (1 if args.lie_type == "B" else 0)) // 2
    nu = validate_dimvec(args.lie_type, n, d, nu_raw)
    ident = SignedPerm.identity(d)
    weights = tangent_weights(nu)
    info = {
        "lie_type": nu.lie_type,
        "n": n,
        "d": d,
        "dimvec": list(nu.nu),
        "dim": len(weights),
        "tangent_weights": [list(w) for w in weights],
        "euler_base": str(euler_class(nu, ident)),
        "euler_cotangent": str(euler_class(nu, ident, with_cotangent=True)),
        "fixed_points": len(fixed_points(nu)),
        "parabolic_order": len(parabolic_group(nu)),
    }
    for k, v in info.items():
        print(f"{k}: {v}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(info, fh, indent=2)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twyangian", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("relations", help="verify the defining relations on flag operators")
    r.add_argument("--lie-type", choices=("B", "C"), required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--r-max", type=int, default=1)
    r.add_argument("--s-max", type=int, default=1)
    r.add_argument("--h-mode", choices=("series", "monomial", "auto"), default="auto")
    r.add_argument("--relations", default="all", help="comma-separated ids, or 'all'")
    r.add_argument("--out")
    r.set_defaults(func=cmd_relations)

    c = sub.add_parser("current", help="verify the twisted current algebra presentation")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r-max", type=int, default=3)
    c.add_argument("--s-max", type=int)
    c.add_argument("--d", type=int, help="also cross-check the h = 0 flag operators at this d")
    c.add_argument("--lie-types", default="B,C")
    c.add_argument("--out")
    c.set_defaults(func=cmd_current)

    o = sub.add_parser("oracle", help="compare localization with the closed formulas")
    o.add_argument("--lie-type", choices=("B", "C"), required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--d", type=int, required=True)
    o.add_argument("--gen", choices=("E", "F"), required=True)
    o.add_argument("--i", type=int, required=True)
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--degree", type=int, default=2)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("euler", help="tangent weights and Euler classes of one component")
    e.add_argument("--lie-type", choices=("B", "C"), required=True)
    e.add_argument("--dimvec", required=True, help="comma-separated nu_1,...,nu_{2n+1}")
    e.add_argument("--out")
    e.set_defaults(func=cmd_euler)
    return p


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
