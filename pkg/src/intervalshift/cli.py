"""Command-line front end: instance I/O, solver dispatch, generation, benchmarks.

Instance files are JSON:

    {"kind": "intervals", "items": [{"center": 0.0, "length": 1.0, "weight": 1.0}, ...]}
    {"kind": "squares",   "items": [{"x": 0.0, "y": 0.0, "weight": 1.0}, ...]}

`length` and `weight` default to 1; optional top-level `name` and `seed`
carry metadata.  Results are JSON documents; floats use Python's shortest
round-trip representation, so parse(emit(x)) reproduces every 64-bit value
bit for bit.

The `gen` subcommand is deterministic and documented so runs can be
reproduced: with numpy's default_rng(seed), centers are
rng.integers(-steps, steps+1, n) * grid where steps = floor(span/grid);
weights are rng.integers(1, 6, n) unless --uniform-weight; squares draw
x, then y, then weights, in that order.  INTERVAL_SHIFT_SEED overrides the
default seed of 0.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 invalid or
infeasible instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from .core import Collection, Interval, total_moving_distance
from .gather import find_optimal_gathering_point, uniform_slope_gathering_point
from .kclique import solve_kclique
from .lp import PropertySpec, solve_property, _build_for
from .oracle import (
    FULL_ORACLE_CAP,
    check_property,
    grid_search_lp,
    oracle_gathering,
    oracle_kclique_full,
    oracle_kclique_windows,
    oracle_squares,
    verify_shifted_property,
)
from .squares import UnitSquare, find_optimal_gathering_point_l1

__all__ = ["main", "parse_instance", "emit_instance", "generate"]

VERIFY_GATHER_CAP = 2000
VERIFY_SQUARES_CAP = 120
VERIFY_KCLIQUE_CAP = 3000

LP_PROPERTIES = ("edgeless", "acyclic", "no-kclique", "kconnected")
CHECK_PROPERTIES = ("complete", "edgeless", "acyclic", "kclique", "no-kclique", "kconnected")


class InstanceError(ValueError):
    """Malformed instance file; the message names the offending field."""


# ---------------------------------------------------------------- instance IO


def _num(obj: dict, where: str, field: str, default: float | None = None) -> float:
    if field not in obj:
        if default is None:
            raise InstanceError(f"{where}.{field} is required")
        return default
    v = obj[field]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InstanceError(f"{where}.{field} must be a number")
    return float(v)


def parse_instance(path: str):
    """Read a JSON instance file.

    Returns (kind, payload, meta) where payload is a Collection for
    kind="intervals" and a list of UnitSquare for kind="squares".
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InstanceError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from None
    return parse_instance_data(data)


def parse_instance_data(data):
    if not isinstance(data, dict):
        raise InstanceError("instance root must be a JSON object")
    for key in data:
        if key not in ("kind", "items", "name", "seed"):
            raise InstanceError(f"unknown top-level field {key!r}")
    kind = data.get("kind", "intervals")
    if kind not in ("intervals", "squares"):
        raise InstanceError("kind must be 'intervals' or 'squares'")
    items = data.get("items")
    if not isinstance(items, list):
        raise InstanceError("items must be a list")
    meta = {k: data[k] for k in ("name", "seed") if k in data}

    allowed = ("center", "length", "weight") if kind == "intervals" else ("x", "y", "weight")
    parsed = []
    for i, item in enumerate(items):
        where = f"items[{i}]"
        if not isinstance(item, dict):
            raise InstanceError(f"{where} must be an object")
        for key in item:
            if key not in allowed:
                raise InstanceError(f"{where} has unknown field {key!r}")
        try:
            if kind == "intervals":
                parsed.append(
                    Interval(
                        _num(item, where, "center"),
                        _num(item, where, "length", 1.0),
                        _num(item, where, "weight", 1.0),
                    )
                )
            else:
                parsed.append(
                    UnitSquare(
                        _num(item, where, "x"),
                        _num(item, where, "y"),
                        _num(item, where, "weight", 1.0),
                    )
                )
        except InstanceError:
            raise
        except ValueError as exc:
            raise InstanceError(f"{where}: {exc}") from None
    if kind == "intervals":
        return kind, Collection(parsed), meta
    return kind, parsed, meta


def emit_instance(kind: str, payload, meta: dict | None = None) -> str:
    """Serialize an instance back to its JSON file form."""
    doc: dict = {"kind": kind}
    doc.update(meta or {})
    if kind == "intervals":
        doc["items"] = [
            {"center": iv.center, "length": iv.length, "weight": iv.weight}
            for iv in payload
        ]
    else:
        doc["items"] = [{"x": s.x, "y": s.y, "weight": s.weight} for s in payload]
    return json.dumps(doc, indent=2) + "\n"


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_doc(doc: dict, args) -> None:
    _write(json.dumps(doc, indent=2) + "\n", args.output)


# ------------------------------------------------------------------- solvers


def _cmd_gather(args) -> int:
    kind, payload, _ = parse_instance(args.instance)
    if kind == "squares":
        return _run_squares(payload, args)

    collection: Collection = payload
    t0 = time.perf_counter()
    if collection.uniform_weight() is not None and len(collection):
        result = uniform_slope_gathering_point(collection)
        mode = "uniform-shortcut"
    else:
        result = find_optimal_gathering_point(collection)
        mode = "general"
    elapsed = (time.perf_counter() - t0) * 1000.0

    doc = {
        "command": "gather",
        "property": "complete",
        "mode": mode,
        "n": len(collection),
        "cost": result.cost,
        "point": result.point_lo,
        "optimum_range": [result.point_lo, result.point_hi],
        "shifts": list(result.shifts.displacements),
        "wall_time_ms": elapsed,
        "verified": None,
    }
    if args.verbose:
        doc["cost_at_range_ends"] = [
            total_moving_distance(collection, result.point_lo),
            total_moving_distance(collection, result.point_hi),
        ]
    code = 0
    if args.verify:
        if len(collection) <= VERIFY_GATHER_CAP:
            _, want = oracle_gathering(collection)
            doc["verified"] = abs(want - result.cost) <= 1e-9
            if not doc["verified"]:
                doc["verify_note"] = f"oracle cost {want!r} differs"
                code = 1
        else:
            doc["verify_note"] = f"skipped: n > {VERIFY_GATHER_CAP}"
    _emit_doc(doc, args)
    return code


def _run_squares(squares: list[UnitSquare], args) -> int:
    t0 = time.perf_counter()
    result = find_optimal_gathering_point_l1(squares)
    elapsed = (time.perf_counter() - t0) * 1000.0
    doc = {
        "command": "squares",
        "property": "complete",
        "n": len(squares),
        "cost": result.cost,
        "point": list(result.point),
        "shifts": [list(p) for p in result.shifts],
        "wall_time_ms": elapsed,
        "verified": None,
    }
    if args.verbose:
        doc["x_range"] = list(result.x_range)
        doc["y_range"] = list(result.y_range)
    code = 0
    if args.verify:
        if len(squares) <= VERIFY_SQUARES_CAP:
            _, want = oracle_squares(squares)
            doc["verified"] = abs(want - result.cost) <= 1e-9
            if not doc["verified"]:
                doc["verify_note"] = f"oracle cost {want!r} differs"
                code = 1
        else:
            doc["verify_note"] = f"skipped: n > {VERIFY_SQUARES_CAP}"
    _emit_doc(doc, args)
    return code


def _cmd_squares(args) -> int:
    kind, payload, _ = parse_instance(args.instance)
    if kind != "squares":
        raise InstanceError("the squares command needs a kind=squares instance")
    return _run_squares(payload, args)


def _require_intervals(args) -> Collection:
    kind, payload, _ = parse_instance(args.instance)
    if kind != "intervals":
        raise InstanceError("this command needs a kind=intervals instance")
    return payload


def _cmd_kclique(args) -> int:
    collection = _require_intervals(args)
    t0 = time.perf_counter()
    result = solve_kclique(collection, args.k, validate=args.validate)
    elapsed = (time.perf_counter() - t0) * 1000.0
    doc = {
        "command": "kclique",
        "property": "kclique",
        "k": args.k,
        "n": len(collection),
        "cost": result.cost,
        "point": result.point,
        "window_start": result.window_start,
        "shifts": list(result.shifts.displacements),
        "wall_time_ms": elapsed,
        "verified": None,
    }
    if args.verbose:
        doc["window_indices"] = list(
            range(result.window_start, result.window_start + args.k)
        )
    code = 0
    if args.verify:
        if len(collection) <= VERIFY_KCLIQUE_CAP:
            want, _, _ = oracle_kclique_windows(collection, args.k)
            doc["verified"] = abs(want - result.cost) <= 1e-9
            if not doc["verified"]:
                doc["verify_note"] = f"oracle cost {want!r} differs"
                code = 1
        else:
            doc["verify_note"] = f"skipped: n > {VERIFY_KCLIQUE_CAP}"
    _emit_doc(doc, args)
    return code


def _cmd_lp(args) -> int:
    collection = _require_intervals(args)
    name = args.property.replace("-", "_")
    if name in ("no_kclique", "kconnected") and args.k is None:
        # argparse cannot express conditional requirements
        print(f"error: lp {args.property} requires -k", file=sys.stderr)
        return 2
    spec = PropertySpec(name, args.k, args.eps)
    offset_mode = "literal" if args.paper_literal else "validated"
    t0 = time.perf_counter()
    solution = solve_property(collection, spec, offset_mode=offset_mode)
    elapsed = (time.perf_counter() - t0) * 1000.0
    doc = {
        "command": "lp",
        "property": name,
        "k": args.k,
        "epsilon": None if name == "kconnected" else args.eps,
        "paper_literal": args.paper_literal,
        "n": len(collection),
        "cost": solution.total_cost,
        "shifts": list(solution.displacements),
        "wall_time_ms": elapsed,
        "verified": None,
    }
    if args.verbose:
        doc["constraints"] = _constraint_report(collection, spec, offset_mode, solution)
    code = 0
    if args.verify:
        report = verify_shifted_property(collection, spec, solution.displacements)
        doc["verified"] = report.holds
        if not report.holds:
            doc["verify_note"] = f"property check failed, witness {report.witness!r}"
            code = 1
    _emit_doc(doc, args)
    return code


def _constraint_report(collection, spec, offset_mode, solution) -> dict:
    centers = np.array([iv.center for iv in collection])
    order = np.argsort(centers, kind="stable")
    inner = Collection(collection.items[int(i)] for i in order)
    program = _build_for(inner, spec, offset_mode)
    x = np.array([solution.displacements[int(i)] for i in order])
    tight = []
    for idx, (coeffs, rel, rhs) in enumerate(program.constraints):
        lhs = float(np.dot(coeffs, x))
        slack = lhs - rhs if rel == ">=" else rhs - lhs
        if abs(slack) <= 1e-7:
            tight.append(idx)
    return {
        "total": len(program.constraints),
        "tight": len(tight),
        "tight_rows": tight[:50],
    }


# ------------------------------------------------------------------- oracles


def _cmd_oracle_gather(args) -> int:
    kind, payload, _ = parse_instance(args.instance)
    t0 = time.perf_counter()
    if kind == "intervals":
        point, cost = oracle_gathering(payload)
        doc = {"command": "oracle gather", "n": len(payload), "cost": cost, "point": point}
    else:
        point2, cost = oracle_squares(payload)
        doc = {
            "command": "oracle gather",
            "n": len(payload),
            "cost": cost,
            "point": list(point2),
        }
    doc["wall_time_ms"] = (time.perf_counter() - t0) * 1000.0
    _emit_doc(doc, args)
    return 0


def _cmd_oracle_kclique(args) -> int:
    collection = _require_intervals(args)
    t0 = time.perf_counter()
    cost, start, point = oracle_kclique_windows(collection, args.k)
    doc = {
        "command": "oracle kclique",
        "k": args.k,
        "n": len(collection),
        "cost": cost,
        "window_start": start,
        "point": point,
        "full": None,
    }
    if len(collection) <= FULL_ORACLE_CAP:
        fcost, subset, fpoint = oracle_kclique_full(collection, args.k)
        doc["full"] = {"cost": fcost, "subset": list(subset), "point": fpoint}
        doc["windows_match_full"] = abs(fcost - cost) <= 1e-9
    doc["wall_time_ms"] = (time.perf_counter() - t0) * 1000.0
    _emit_doc(doc, args)
    return 0


def _cmd_oracle_grid(args) -> int:
    collection = _require_intervals(args)
    name = args.property.replace("-", "_")
    if name in ("no_kclique", "kconnected") and args.k is None:
        print(f"error: oracle grid {args.property} requires -k", file=sys.stderr)
        return 2
    spec = PropertySpec(name, args.k)
    t0 = time.perf_counter()
    cost = grid_search_lp(collection, spec, bounds=args.bounds, step=args.step)
    doc = {
        "command": "oracle grid",
        "property": name,
        "k": args.k,
        "n": len(collection),
        "cost": cost,
        "bounds": args.bounds,
        "step": args.step,
        "wall_time_ms": (time.perf_counter() - t0) * 1000.0,
    }
    _emit_doc(doc, args)
    return 0


def _cmd_oracle_check(args) -> int:
    collection = _require_intervals(args)
    name = args.property.replace("-", "_")
    if name in ("kclique", "no_kclique", "kconnected") and args.k is None:
        print(f"error: oracle check {args.property} requires -k", file=sys.stderr)
        return 2
    report = check_property(collection, name, args.k, tol=args.tol)
    doc = {
        "command": "oracle check",
        "property": name,
        "k": args.k,
        "tol": args.tol,
        "n": len(collection),
        "holds": report.holds,
        "witness": list(report.witness) if report.witness is not None else None,
    }
    _emit_doc(doc, args)
    return 0


# ---------------------------------------------------------------- generation


def generate(
    n: int,
    seed: int,
    span: float = 10.0,
    grid: float = 0.5,
    kind: str = "intervals",
    uniform_weight: bool = False,
):
    """Deterministic random instance on a grid; see the module docstring."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if grid <= 0 or span <= 0:
        raise ValueError("span and grid must be positive")
    rng = np.random.default_rng(seed)
    steps = int(span / grid)

    def draw() -> np.ndarray:
        return rng.integers(-steps, steps + 1, size=n).astype(float) * grid

    if kind == "intervals":
        centers = draw()
        weights = np.ones(n) if uniform_weight else rng.integers(1, 6, size=n).astype(float)
        payload = [Interval(float(c), 1.0, float(w)) for c, w in zip(centers, weights)]
        return kind, Collection(payload)
    xs, ys = draw(), draw()
    weights = np.ones(n) if uniform_weight else rng.integers(1, 6, size=n).astype(float)
    squares = [UnitSquare(float(x), float(y), float(w)) for x, y, w in zip(xs, ys, weights)]
    return kind, squares


def _default_seed() -> int:
    env = os.environ.get("INTERVAL_SHIFT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InstanceError("INTERVAL_SHIFT_SEED must be an integer") from None
    return 0


def _cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    kind, payload = generate(
        args.n, seed, span=args.span, grid=args.grid, kind=args.kind,
        uniform_weight=args.uniform_weight,
    )
    meta = {"name": f"gen-{kind}-n{args.n}-seed{seed}", "seed": seed}
    _write(emit_instance(kind, payload, meta), args.output)
    return 0


# ------------------------------------------------------------------ benching


def _bench_rows(suite: str):
    if suite in ("smoke", "all"):
        for seed in (0, 1):
            _, coll = generate(2000, seed, span=2000.0)
            t0 = time.perf_counter()
            res = find_optimal_gathering_point(coll)
            yield ("gather", 2000, "", seed, (time.perf_counter() - t0) * 1e3, res.cost)
        _, coll = generate(2000, 0, span=2000.0, uniform_weight=True)
        t0 = time.perf_counter()
        kres = solve_kclique(coll, 200)
        yield ("kclique", 2000, 200, 0, (time.perf_counter() - t0) * 1e3, kres.cost)
    if suite in ("gather", "all"):
        for n in (250_000, 500_000, 1_000_000):
            for seed in (0, 1, 2):
                _, coll = generate(n, seed, span=float(n))
                t0 = time.perf_counter()
                res = find_optimal_gathering_point(coll)
                yield ("gather", n, "", seed, (time.perf_counter() - t0) * 1e3, res.cost)
    if suite in ("kclique", "all"):
        for n in (25_000, 50_000, 100_000):
            for seed in (0, 1, 2):
                _, coll = generate(n, seed, span=float(n), uniform_weight=True)
                k = n // 10
                t0 = time.perf_counter()
                kres = solve_kclique(coll, k)
                yield ("kclique", n, k, seed, (time.perf_counter() - t0) * 1e3, kres.cost)


def _cmd_bench(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["algorithm", "n", "k", "seed", "wall_time_ms", "cost"])
    for row in _bench_rows(args.suite):
        writer.writerow(row)
    _write(buf.getvalue(), args.output)
    return 0


# -------------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalshift",
        description="Minimum-displacement interval and square shifting.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")
    common.add_argument("--verbose", action="store_true", help="include extra detail in the result")
    solver = argparse.ArgumentParser(add_help=False, parents=[common])
    solver.add_argument(
        "--verify", action="store_true",
        help="re-check the result against the matching brute-force oracle (size-capped)",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gather", parents=[solver], help="optimal gathering point (intervals or squares)")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_gather)

    p = sub.add_parser("squares", parents=[solver], help="optimal L1 gathering point for unit squares")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_squares)

    p = sub.add_parser("kclique", parents=[solver], help="cheapest shifts creating a k-clique")
    p.add_argument("-k", type=int, required=True, help="clique size")
    p.add_argument("--validate", action="store_true",
                   help="assert every incremental update against scratch recomputation")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_kclique)

    p = sub.add_parser("lp", parents=[solver], help="LP-based shifts for a target property")
    p.add_argument("property", choices=LP_PROPERTIES)
    p.add_argument("-k", type=int, help="clique size or connectivity")
    p.add_argument("--eps", type=float, default=1e-6, help="slack for strict inequalities")
    p.add_argument("--paper-literal", action="store_true",
                   help="use the k+1 index offset for kconnected constraints")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_lp)

    oracle = sub.add_parser("oracle", help="brute-force reference computations")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)

    p = osub.add_parser("gather", parents=[common], help="endpoint/grid scan gathering oracle")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_oracle_gather)

    p = osub.add_parser("kclique", parents=[common], help="window enumeration oracle")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("instance")
    p.set_defaults(func=_cmd_oracle_kclique)

    p = osub.add_parser("grid", parents=[common], help="exhaustive shift-grid property search")
    p.add_argument("property", choices=LP_PROPERTIES)
    p.add_argument("-k", type=int)
    p.add_argument("--bounds", type=float, default=5.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("instance")
    p.set_defaults(func=_cmd_oracle_grid)

    p = osub.add_parser("check", parents=[common], help="check a property of the instance as-is")
    p.add_argument("property", choices=CHECK_PROPERTIES)
    p.add_argument("-k", type=int)
    p.add_argument("--tol", type=float, default=0.0,
                   help="pairs with gap <= tol count as intersecting")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_oracle_check)

    def positive_int(text: str) -> int:
        value = int(text)
        if value < 1:
            raise argparse.ArgumentTypeError("must be at least 1")
        return value

    p = sub.add_parser("gen", parents=[common], help="write a reproducible random instance")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="default: INTERVAL_SHIFT_SEED env var, else 0")
    p.add_argument("--span", type=float, default=10.0)
    p.add_argument("--grid", type=float, default=0.5)
    p.add_argument("--kind", choices=("intervals", "squares"), default="intervals")
    p.add_argument("--uniform-weight", action="store_true", help="all weights 1")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="timing table as CSV")
    p.add_argument("--suite", choices=("smoke", "gather", "kclique", "all"), required=True)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
