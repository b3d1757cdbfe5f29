"""Command-line front end: ``quadinc <subcommand> ...``.

Exit status is 0 on success, 1 when an audit fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .bounds import eval_bound_general, eval_bound_quadric, eval_bound_weak, eval_ngek_bound
from .crossratio import rich_transformations
from .decomposition import (
    Decomposition,
    audit_decomposition,
    bound_report,
    build_L,
    decompose,
)
from .exact import parse_rational
from .harness import InstanceSpec, run_experiment
from .incidence import incidence_graph


class InputError(Exception):
    pass


def _read_json(path):
    try:
        return ser.load(path)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _list_or_key(obj, key):
    return obj[key] if isinstance(obj, dict) else obj


def _load_instance(args, need_quadric=False):
    P, H, V = [], [], None
    if getattr(args, "instance", None):
        P, H, V = ser.instance_from_json(_read_json(args.instance))
    if getattr(args, "points", None):
        P = [ser.point_from_json(p) for p in _list_or_key(_read_json(args.points), "points")]
    if getattr(args, "planes", None):
        H = [ser.plane_from_json(h) for h in _list_or_key(_read_json(args.planes), "planes")]
    if getattr(args, "quadric", None):
        V = ser.quadric_from_json(_read_json(args.quadric))
    if need_quadric and V is None:
        raise InputError("--quadric is required (or an --instance carrying one)")
    return P, H, V


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_classify(args) -> int:
    V = ser.quadric_from_json(_read_json(args.quadric))
    cls = V.classification
    line = cls.kind.value
    if cls.apex is not None:
        line += " apex=" + json.dumps(ser.point_to_json(cls.apex), sort_keys=True)
    print(line)
    return 0


def cmd_incidence(args) -> int:
    P, H, _ = _load_instance(args)
    G = incidence_graph(P, H, method=args.method, workers=args.workers)
    _write(args.out, G.to_csv())
    return 0


def _decomposition_from_file(obj, P, H, V) -> Decomposition:
    G = incidence_graph(P, H)
    apex = V.classification.apex
    return Decomposition(
        residual=tuple(tuple(e) for e in obj["residual"]),
        factors=ser.factors_from_json(obj),
        apex_incidences=tuple(tuple(e) for e in obj["apex_incidences"]),
        lines=tuple(build_L(P, V)),
        graph=G,
        apex_index=next((i for i, p in enumerate(P) if p == apex), None),
        irrational_ruling_count=obj.get("irrational_ruling_count", 0),
    )


def cmd_decompose(args) -> int:
    P, H, V = _load_instance(args, need_quadric=True)
    if args.verify:
        D = _decomposition_from_file(_read_json(args.verify), P, H, V)
    else:
        D = decompose(P, H, V, graph=incidence_graph(P, H, workers=args.workers))
        if args.out:
            ser.save(args.out, ser.decomposition_to_json(D))
    checks = audit_decomposition(P, H, V, D, pseudo_circles=not args.skip_pseudo_circles)
    if P and H:
        rep = bound_report(D, args.kappa)
        print(rep.CSV_HEADER)
        print(rep.csv_row())
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        print("audit failed: " + ", ".join(failed), file=sys.stderr)
        return 1
    return 0


def cmd_crossratio(args) -> int:
    A = [parse_rational(str(a)) for a in _list_or_key(_read_json(args.set), "A")]
    if len(A) > args.max_size:
        raise InputError(f"--set has {len(A)} elements, above --max-size {args.max_size}")
    report = rich_transformations(A, args.kmin, include_affine=args.include_affine)
    n = len(A)
    lines = ["k,N_geq_k,bound_ngek,ratio"]
    for k, count in report.n_geq.items():
        bound = eval_ngek_bound(n, k)
        lines.append(f"{k},{count},{bound},{Decimal(count) / bound:.12f}")
    _write(args.out, "\n".join(lines) + "\n")
    summary = {
        "A": ser.rationals_to_json(report.A),
        "k_min": args.kmin,
        "include_affine": args.include_affine,
        "N_geq": {str(k): v for k, v in report.n_geq.items()},
        "Q": report.q if n >= 5 else None,
        "distinct_cross_ratios": report.distinct_cross_ratios if n >= 4 else None,
    }
    if args.json:
        ser.save(args.json, summary)
    print(f"Q={summary['Q']} distinct_cross_ratios={summary['distinct_cross_ratios']}")
    return 0


def cmd_experiment(args) -> int:
    raw = _read_json(args.config)
    try:
        specs = [InstanceSpec(**s) for s in _list_or_key(raw, "specs")]
    except TypeError as exc:
        raise InputError(f"bad instance spec: {exc}") from exc
    if args.seed:
        specs = [replace(s, seed=s.seed + args.seed) for s in specs]
    report = run_experiment(
        specs, failure_dir=args.failures, pseudo_circles=not args.skip_pseudo_circles, kappa=args.kappa
    )
    _write(args.out, report.to_csv())
    if report.max_ratio is not None:
        print(f"max G0/bound_quadric = {report.max_ratio:.12f}", file=sys.stderr)
    return 0 if report.all_passed else 1


def cmd_bounds(args) -> int:
    if args.ngek:
        n, k = args.ngek
        print(f"ngek({n},{k}) = {eval_ngek_bound(n, k)}")
        return 0
    if args.m is None or args.n is None:
        raise InputError("bounds needs --m and --n (or --ngek N K)")
    print(f"quadric = {eval_bound_quadric(args.m, args.n)}")
    print(f"general(beta={args.beta}) = {eval_bound_general(args.m, args.n, args.beta)}")
    print(f"weak(kappa={args.kappa}) = {eval_bound_weak(args.m, args.n, args.kappa)}")
    return 0


def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadinc", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed offset (only experiment draws randomness)")
    common.add_argument("--workers", type=int, default=1, help="processes for the incidence sweep")
    common.add_argument("--kappa", type=_fraction_arg, default=Fraction(1), help="log exponent of the weak bound")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a quadric")
    p.add_argument("--quadric", required=True)
    p.set_defaults(func=cmd_classify)

    for name, func in (("incidence", cmd_incidence), ("decompose", cmd_decompose)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--instance", help="JSON with points, planes and optionally quadric")
        p.add_argument("--points")
        p.add_argument("--planes")
        p.add_argument("--out")
        p.set_defaults(func=func)
    sub.choices["incidence"].add_argument("--method", choices=("vectorized", "sweep"), default="vectorized")
    dec = sub.choices["decompose"]
    dec.add_argument("--quadric")
    dec.add_argument("--verify", metavar="DECOMPOSITION_JSON", help="re-audit a saved decomposition")
    dec.add_argument("--skip-pseudo-circles", action="store_true")

    p = sub.add_parser("crossratio", parents=[common], help="rich Möbius maps of a finite set")
    p.add_argument("--set", required=True, help="JSON list of rational strings")
    p.add_argument("--kmin", type=int, default=3)
    p.add_argument("--out")
    p.add_argument("--json", help="write the JSON summary here")
    p.add_argument("--include-affine", action="store_true")
    p.add_argument("--max-size", type=int, default=30)
    p.set_defaults(func=cmd_crossratio)

    p = sub.add_parser("experiment", parents=[common], help="run an instance sweep")
    p.add_argument("--config", required=True, help="JSON list of instance specs")
    p.add_argument("--out")
    p.add_argument("--failures", help="directory for failed instance dumps")
    p.add_argument("--skip-pseudo-circles", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bounds", parents=[common], help="evaluate bound formulas")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--beta", type=_fraction_arg, default=Fraction(2, 11))
    p.add_argument("--ngek", type=int, nargs=2, metavar=("N", "K"))
    p.set_defaults(func=cmd_bounds)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "crossratio" and args.kmin < 3:
        parser.error("--kmin must be at least 3")
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
