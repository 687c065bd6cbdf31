"""Command line: ``tightspan {dim,cells,generic,span,oracle,gen,verify}``.

Metric files are JSON ``{"n": 4, "d": {"1,2": "3/2", ...}}`` (1-based
labels, rationals as ``"p"`` or ``"p/q"``) or a whitespace-separated lower
triangular matrix. Exit codes: 2 parse error, 3 non-generic, 4 scale limit,
5 generator failure, 6 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .core import Metric, all_edges, format_edge, validate_metric
from .errors import (
    ConstructionFailed,
    DimOutOfRange,
    MetricError,
    NonGenericDetected,
    ScaleLimit,
)
from .generators import gen_matchex, gen_random, gen_titrated, gen_triangex
from .oracle import brute_force_cells
from .polar import bounded_face_complex, crosscheck_dimension
from .subdivision import (
    check_genericity,
    dimension_bounds,
    enumerate_maximal_cells,
    tight_span_dimension,
)

EXIT_PARSE = 2
EXIT_NONGENERIC = 3
EXIT_SCALE = 4
EXIT_GEN = 5
EXIT_VERIFY = 6

TITRATION_NOTE = ("triples-and-pairs mixture; an interpretation for n not divisible by 3, "
                  "its dimension verified on this instance")


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# metric files


def metric_to_json(d: Metric) -> dict:
    return {"n": d.n, "d": {f"{i + 1},{j + 1}": str(d[(i, j)]) for i, j in all_edges(d.n)}}


def metric_from_json(obj: dict) -> Metric:
    try:
        n = int(obj["n"])
        raw = {}
        for key, val in obj["d"].items():
            a, b = (int(t) for t in key.replace("-", ",").split(","))
            raw[(a - 1, b - 1)] = Fraction(str(val))
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        raise ParseError(f"bad metric JSON: {exc}") from exc
    return validate_metric(raw, n)


def metric_from_text(text: str) -> Metric:
    """Lower-triangular rows; a leading ``0`` row, diagonal zeros or a full square matrix also parse."""
    try:
        rows = [[Fraction(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as exc:
        raise ParseError(f"bad matrix entry: {exc}") from exc
    if not rows:
        raise ParseError("empty matrix")
    lengths = [len(r) for r in rows]
    if len(set(lengths)) == 1 and lengths[0] == len(rows) and len(rows) > 1:
        n = len(rows)
        get = lambda i, j: rows[i][j]  # noqa: E731
    elif lengths == list(range(1, len(rows) + 1)) and rows[0] == [0]:
        n = len(rows)
        get = lambda i, j: rows[i][j]  # noqa: E731
    elif lengths == list(range(1, len(rows) + 1)):
        n = len(rows) + 1
        get = lambda i, j: rows[i - 1][j]  # noqa: E731
    else:
        raise ParseError(f"row lengths {lengths} are not a lower-triangular matrix")
    return validate_metric({(j, i): get(i, j) for i in range(n) for j in range(i)}, n)


def read_metric(path: str | Path) -> Metric:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
        return metric_from_json(obj)
    return metric_from_text(text)


def write_metric(d: Metric, path: str | Path) -> None:
    Path(path).write_text(json.dumps(metric_to_json(d), indent=1) + "\n", encoding="utf-8")


def metric_hash(d: Metric) -> str:
    blob = json.dumps(metric_to_json(d), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


# ---------------------------------------------------------------------------
# commands


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))


def _header(d: Metric) -> dict:
    return {"version": __version__, "input_hash": metric_hash(d), "n": d.n}


def cmd_dim(args) -> int:
    d = read_metric(args.metric)
    r = tight_span_dimension(d)
    ok = r.within_bounds
    report = _header(d) | {
        "dimension": r.dimension,
        "min_interior_edges": r.min_interior_edges,
        "witness": str(r.witness),
        "interior_f_vector": {str(k): v for k, v in r.interior_f_vector.items()},
        "bounds": [r.lower_bound, r.upper_bound],
        "within_bounds": ok,
        "note": r.note,
    }
    lines = [
        f"dimension: {r.dimension}",
        f"min_interior_edges: {r.min_interior_edges}",
        f"witness: {r.witness}",
        f"bounds: [{r.lower_bound}, {r.upper_bound}] "
        + ("ok" if ok else "see note" if r.note else "VIOLATED"),
        "interior faces by codimension: "
        + " ".join(f"{k}:{v}" for k, v in r.interior_f_vector.items()),
    ]
    if r.note:
        lines.append(f"note: {r.note}")
    _emit(args, report, lines)
    return 0


def cmd_cells(args) -> int:
    d = read_metric(args.metric)
    s = enumerate_maximal_cells(d)
    cells = [str(G) for G in s.sorted_cells()]
    report = _header(d) | {"maximal_cells": cells, "count": len(cells),
                           "total_volume": s.total_volume()}
    _emit(args, report, [f"{len(cells)} maximal cells"] + cells)
    return 0


def cmd_generic(args) -> int:
    d = read_metric(args.metric)
    ok, cert = check_genericity(d)
    report = _header(d) | {"generic": ok, "certificate": cert.to_dict() if cert else None}
    lines = ["generic" if ok else "non-generic"]
    if cert:
        lines.append(f"certificate: {cert}")
    _emit(args, report, lines)
    return 0 if ok else EXIT_NONGENERIC


def cmd_span(args) -> int:
    d = read_metric(args.metric)
    cx = bounded_face_complex(d)
    report = _header(d) | {
        "vertices": len(cx.vertices),
        "max_dim": cx.max_dim,
        "f_vector": {str(k): v for k, v in cx.f_vector().items()},
        "metric_only_f_vector": {str(k): v for k, v in cx.f_vector(True, d.n).items()},
    }
    lines = [
        f"vertices: {len(cx.vertices)}",
        f"bounded faces by dimension: " + " ".join(f"{k}:{v}" for k, v in cx.f_vector().items()),
        f"metric-row-only faces: "
        + " ".join(f"{k}:{v}" for k, v in cx.f_vector(True, d.n).items()),
        f"max dimension: {cx.max_dim}",
    ]
    if d.n >= 4:
        cc = crosscheck_dimension(d)
        report["crosscheck"] = {"polar_dim": cc.polar_dim, "subdivision_dim": cc.subdivision_dim,
                                "agree": cc.agree, "star_faces": cc.star_faces}
        lines.append(f"crosscheck: polar {cc.polar_dim} vs subdivision {cc.subdivision_dim} "
                     f"{'agree' if cc.agree else 'DISAGREE'}")
    _emit(args, report, lines)
    return 0


def cmd_oracle(args) -> int:
    d = read_metric(args.metric)
    brute = {G for G in brute_force_cells(d) if len(G) == d.n}
    walked = set(enumerate_maximal_cells(d).maximal_cells)
    match = brute == walked
    report = _header(d) | {"match": match, "oracle_count": len(brute), "walk_count": len(walked)}
    line = (f"MATCH ({len(walked)} maximal cells)" if match
            else f"MISMATCH (oracle {len(brute)}, traversal {len(walked)})")
    _emit(args, report, [line])
    return 0 if match else 1


def _generate(kind: str, n: int, dim: int | None, seed: int) -> Metric:
    if kind == "matchex":
        return gen_matchex(n, seed)
    if kind == "triangex":
        if n % 3:
            raise DimOutOfRange(f"triangex needs n divisible by 3, got {n}")
        return gen_triangex(n // 3, seed)
    if kind == "titrated":
        if dim is None:
            raise DimOutOfRange("titrated needs --dim")
        return gen_titrated(n, dim, seed)
    if kind == "random":
        return gen_random(n, seed)
    raise ParseError(f"unknown kind {kind!r}")


def cmd_gen(args) -> int:
    kind = args.kind or args.kind_opt
    if kind is None:
        raise ParseError("give a kind: matchex, triangex, titrated or random")
    d = _generate(kind, args.n, args.dim, args.seed)
    out = args.out or f"{kind}_n{args.n}_seed{args.seed}.json"
    write_metric(d, out)
    r = tight_span_dimension(d)
    report = _header(d) | {"kind": kind, "file": str(out), "dimension": r.dimension}
    lines = [f"wrote {out}", f"dimension: {r.dimension}"]
    if kind == "titrated":
        report["construction"] = TITRATION_NOTE
        lines.append(f"construction: {TITRATION_NOTE}")
    _emit(args, report, lines)
    return 0


def _sample(job: tuple[int, int]) -> tuple[int, int, int]:
    n, seed = job
    d = gen_random(n, seed)
    if n == 3:
        # the interior-cell count is 0 at n=3; use the bounded-face complex instead
        return seed, bounded_face_complex(d).max_dim, 0
    return seed, tight_span_dimension(d).dimension, 0


def cmd_verify(args) -> int:
    n = args.n
    if not 3 <= n <= 8:
        raise ParseError("verify supports 3 <= n <= 8")
    lo, hi = dimension_bounds(n)
    jobs = [(n, args.seed + k) for k in range(args.samples)]
    if args.threads > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            results = list(pool.map(_sample, jobs))
    else:
        results = [_sample(j) for j in jobs]
    dist: dict[int, int] = {}
    failures = []
    for seed, dim, _ in results:
        dist[dim] = dist.get(dim, 0) + 1
        if not lo <= dim <= hi:
            failures.append((f"random seed {seed}", gen_random(n, seed), dim))
    tight = {}
    if n >= 4:
        dm = tight_span_dimension(gen_matchex(n, args.seed)).dimension
        tight["matchex"] = dm
        if dm != hi:
            failures.append(("matchex", gen_matchex(n, args.seed), dm))
        try:
            dt = tight_span_dimension(gen_titrated(n, lo, args.seed)).dimension
        except ConstructionFailed:
            dt = None
        tight["titrated"] = dt
        if dt != lo:
            failures.append(("titrated", None, dt))
    report = {"version": __version__, "n": n, "samples": args.samples, "seed": args.seed,
              "bounds": [lo, hi], "distribution": {str(k): v for k, v in sorted(dist.items())},
              "tightness": tight, "ok": not failures}
    lines = [f"n={n} bounds [{lo}, {hi}]",
             "dimension distribution: " + " ".join(f"{k}:{v}" for k, v in sorted(dist.items())),
             f"upper bound via matchex: {tight.get('matchex')}",
             f"lower bound via titrated: {tight.get('titrated')}",
             "OK" if not failures else "FAILED"]
    _emit(args, report, lines)
    for label, d, dim in failures:
        if d is not None:
            path = Path(args.out or ".") / f"verify_failure_n{n}_{label.replace(' ', '_')}.json"
            write_metric(d, path)
            print(f"{label}: dimension {dim}; metric written to {path}", file=sys.stderr)
        else:
            print(f"{label}: got {dim}", file=sys.stderr)
    return 0 if not failures else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tightspan", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--threads", type=int, default=1)

    for name, fn, help_ in (
        ("dim", cmd_dim, "combinatorial dimension of the tight span"),
        ("cells", cmd_cells, "maximal cells of the regular subdivision"),
        ("generic", cmd_generic, "genericity verdict with certificate"),
        ("span", cmd_span, "bounded faces of P_d"),
        ("oracle", cmd_oracle, "compare traversal with brute force"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("metric", help="metric file (JSON or lower-triangular text)")
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("gen", help="generate a metric file")
    p.add_argument("kind", nargs="?", choices=["matchex", "triangex", "titrated", "random"])
    p.add_argument("--kind", dest="kind_opt", choices=["matchex", "triangex", "titrated", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="sample random metrics and check the dimension bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for failure dumps")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, MetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonGenericDetected as exc:
        if getattr(args, "json", False):
            print(json.dumps({"generic": False, "certificate": exc.certificate.to_dict()}, indent=2))
        else:
            print("non-generic")
        print(f"certificate: {exc.certificate}", file=sys.stderr)
        return EXIT_NONGENERIC
    except ScaleLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (DimOutOfRange, ConstructionFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEN


if __name__ == "__main__":
    sys.exit(main())
