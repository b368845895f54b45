"""Command-line front end: ``simplex-metrics {volume,factors,compare,verify}``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import DimensionMismatch, SimplexMetricsError
from .exact_linalg import RationalMatrix, format_rational, parse_rational
from .riemannian import metric_from_document
from .simplex_volume import (
    Simplex,
    SquareDistanceData,
    cm_factor,
    square_distances_of,
    verify_comparison,
    vol2_cm,
    vol2_gram,
)
from . import sdg_verify

EXIT_OK, EXIT_INPUT, EXIT_DIMENSION, EXIT_FAILURE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("SIMPLEX_METRICS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SIMPLEX_METRICS_SEED must be an integer, got {raw!r}") from None


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _rational_cell(raw) -> Fraction:
    if isinstance(raw, str):
        return parse_rational(raw)
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Fraction(raw)
    raise InputError(f"rationals must be strings like \"p/q\", got {raw!r}")


def _table(doc, key: str) -> List[List[Fraction]]:
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"expected a JSON object with {key!r}")
    rows = doc[key]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{key!r} must be a list of lists")
    return [[_rational_cell(c) for c in r] for r in rows]


def load_simplex(path: str) -> Simplex:
    return Simplex(tuple(tuple(p) for p in _table(_load_json(path), "points")))


def load_distances(path: str) -> SquareDistanceData:
    return SquareDistanceData(tuple(tuple(r) for r in _table(_load_json(path), "g")))


def load_metric(path: str) -> RationalMatrix:
    field_ = metric_from_document(_load_json(path))
    if not field_.is_constant():
        raise InputError("volume needs a constant metric")
    return field_.as_rational_matrix()


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_volume(args) -> int:
    if (args.simplex is None) == (args.distances is None):
        raise InputError("give exactly one of --simplex or --distances")
    if args.distances is not None:
        if args.metric is not None:
            raise InputError("--metric applies to --simplex input only")
        if args.method == "gram":
            raise InputError("the gram method needs coordinates (--simplex)")
        d = load_distances(args.distances)
        _emit({"k": d.dim_k, "method": "cm", "vol2": format_rational(vol2_cm(d))})
        return EXIT_OK

    s = load_simplex(args.simplex)
    metric = load_metric(args.metric) if args.metric is not None else None
    if metric is not None and metric.rows != s.n:
        raise DimensionMismatch(f"metric is {metric.rows}x{metric.cols}, points have length {s.n}")
    out = {"k": s.dim_k}
    values = {}
    if args.method in ("cm", "both"):
        values["cm"] = vol2_cm(square_distances_of(s, metric))
    if args.method in ("gram", "both"):
        values["gram"] = vol2_gram(s, metric)
    if args.method == "both":
        agree = values["cm"] == values["gram"]
        out.update(method="both", agree=agree,
                   vol2_cm=format_rational(values["cm"]), vol2_gram=format_rational(values["gram"]))
        if agree:
            out["vol2"] = format_rational(values["cm"])
        _emit(out)
        return EXIT_OK if agree else EXIT_FAILURE
    out.update(method=args.method, vol2=format_rational(values[args.method]))
    _emit(out)
    return EXIT_OK


def cmd_factors(args) -> int:
    if args.max_k < 0:
        raise InputError("--max-k must be non-negative")
    for k in range(args.max_k + 1):
        print(f"{k}\t{format_rational(cm_factor(k))}")
    return EXIT_OK


def _random_simplex(rng: random.Random, max_k: int, max_n: int) -> Simplex:
    n = rng.randint(1, max_n)
    k = rng.randint(1, min(max_k, n))
    return Simplex(tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(k + 1)))


def cmd_compare(args) -> int:
    if args.trials < 0 or args.max_k < 1 or args.max_n < 1:
        raise InputError("--trials >= 0, --max-k >= 1 and --max-n >= 1 are required")
    seed = args.seed if args.seed is not None else _default_seed()
    rng = random.Random(seed)
    fixed = load_simplex(args.simplex) if args.simplex else None
    passed = 0
    failures = []
    for t in range(args.trials):
        s = fixed if fixed is not None else _random_simplex(rng, args.max_k, args.max_n)
        report = verify_comparison(s)
        if report.agree and report.vol2_cm == report.vol2_gram:
            passed += 1
        else:
            failures.append({"trial": t, "points": [[format_rational(c) for c in p] for p in s.points],
                             **report.to_json()})
    _emit({"trials": args.trials, "passed": passed, "failed": len(failures), "seed": seed,
           "failures": failures})
    return EXIT_OK if not failures else EXIT_FAILURE


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.only is not None and args.only not in sdg_verify.CHECKS:
        raise InputError(f"unknown check {args.only!r}; known: {', '.join(sorted(sdg_verify.CHECKS))}")
    reports = sdg_verify.run_all(args.max_n, args.max_k, seed, only=args.only)
    for r in reports:
        print(r.to_json_line())
    return EXIT_FAILURE if any(r.status == sdg_verify.FAIL for r in reports) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplex-metrics",
                                     description="Exact simplex volumes and metric verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="square volume of a simplex")
    p.add_argument("--simplex", metavar="FILE", help='JSON {"points": [["p/q", ...], ...]}')
    p.add_argument("--distances", metavar="FILE", help='JSON {"g": [[...], ...]} square distances')
    p.add_argument("--metric", metavar="FILE", help='JSON {"n": n, "entries": [[...]]}, constant')
    p.add_argument("--method", choices=("cm", "gram", "both"), default="both")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("factors", help="Cayley-Menger normalizing factors")
    p.add_argument("--max-k", type=int, default=3)
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("compare", help="check det(CM) against det(Y^T Y) on random simplices")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--simplex", metavar="FILE", help="use this simplex for every trial")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the symbolic verification suite")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--only", metavar="CHECK")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (InputError, SimplexMetricsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
