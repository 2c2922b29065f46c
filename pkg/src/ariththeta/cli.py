"""Command-line front end: reproducible tables and verification suites."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .binforms import hurwitz_class_number
from .config import RunConfig, load_config
from .errors import ArithThetaError
from .greens import UHPoint, big_xi
from .identities import classify, degree_series
from .lattice import BUNDLED_ORDERS, trace_zero_lattice
from .starprod import PairConfig, lambda_star
from . import checks


def _emit(args, op: str, rows) -> None:
    """rows: list of (input_dict, value_str, err_str_or_None)."""
    if args.out == "json":
        for inp, value, err in rows:
            print(json.dumps({"op": op, "input": inp, "value": value, "err": err}))
    else:
        for inp, value, err in rows:
            left = " ".join(f"{k}={v}" for k, v in inp.items())
            tail = f"  (err <= {err})" if err is not None else ""
            print(f"{left:24s} {value}{tail}")


def _lattice_from(args, cfg: RunConfig):
    name = args.order or cfg.order
    if name not in BUNDLED_ORDERS and not Path(name).exists():
        print(f"error: order file not found: {name}", file=sys.stderr)
        raise SystemExit(2)
    cfg2 = RunConfig(order=name)
    return trace_zero_lattice(cfg2.load_order())


def cmd_theta_deg(args, cfg: RunConfig) -> int:
    lat = _lattice_from(args, cfg)
    table = cfg.degree_tables.get(lat.discriminant)
    n = max(args.max_t, 1)
    series = degree_series(
        lat, v=args.v, n=n, hodge_degree=cfg.hodge_degree, degree_table=table
    )
    rows = []
    for t in range(0, args.max_t + 1):
        rows.append(({"t": t}, str(series.coefficient(t)), None))
    _emit(args, "theta_deg", rows)
    return 0


def cmd_green(args, cfg: RunConfig) -> int:
    lat = _lattice_from(args, cfg)
    parts = [float(p) for p in args.z.split(",")]
    sheet = int(parts[2]) if len(parts) > 2 else 1
    z = UHPoint(parts[0], parts[1], sheet)
    res = big_xi(lat, args.t, args.v, z, cfg.quadrature)
    _emit(
        args,
        "green",
        [
            (
                {"t": args.t, "v": args.v, "z": args.z},
                f"{res.value:.12g}",
                f"{res.tail_bound:.3g}",
            )
        ],
    )
    return 0


def cmd_lambda(args, cfg: RunConfig) -> int:
    from .lattice import model_coordinates_float
    import numpy as np

    lat = _lattice_from(args, cfg)
    coords = model_coordinates_float(lat)
    n1 = [int(c) for c in args.x1.split(",")]
    n2 = [int(c) for c in args.x2.split(",")]
    x1 = coords @ np.array(n1, dtype=float)
    x2 = coords @ np.array(n2, dtype=float)
    if args.v:
        v11, v12, v22 = (float(c) for c in args.v.split(","))
        from .starprod import _square_root

        a = _square_root(np.array([[v11, v12], [v12, v22]]), "symmetric")
        y1 = a[0, 0] * x1 + a[1, 0] * x2
        y2 = a[0, 1] * x1 + a[1, 1] * x2
        x1, x2 = y1, y2
    res = lambda_star(PairConfig.from_vectors(tuple(x1), tuple(x2)), cfg.quadrature)
    _emit(
        args,
        "lambda",
        [
            (
                {"x1": args.x1, "x2": args.x2, "v": args.v or "1,0,1"},
                f"{res.value:.12g}",
                f"{res.err:.3g}",
            )
        ],
    )
    return 0


def cmd_classify(args, cfg: RunConfig) -> int:
    t1, m, t2 = (int(c) for c in args.T.split(","))
    res = classify(((t1, m), (m, t2)), args.D, scan_limit=cfg.scan_limit)
    value = {
        "fundamental_prime": res.fundamental_prime,
        "regular": res.regular,
        "supersingular_support": res.supersingular_support,
    }
    if args.out == "json":
        print(
            json.dumps(
                {"op": "classify", "input": {"T": args.T, "D": args.D}, "value": value, "err": None}
            )
        )
    else:
        print(
            f"T=({t1},{m},{t2}) D={args.D}  fundamental_prime={res.fundamental_prime} "
            f"regular={res.regular} supersingular_support={res.supersingular_support}"
        )
    return 0


def cmd_hurwitz(args, cfg: RunConfig) -> int:
    h = hurwitz_class_number(args.n)
    _emit(args, "hurwitz", [({"n": args.n}, str(h), None)])
    return 0


def cmd_check(args, cfg: RunConfig) -> int:
    lat = _lattice_from(args, cfg)
    seed = args.seed if args.seed is not None else cfg.seed
    rows = checks.run_suite(args.suite, lat, seed, cfg.quadrature, cfg.hodge_degree)
    failures = 0
    for name, ok, detail in rows:
        status = "PASS" if ok else "FAIL"
        if not ok:
            failures += 1
        print(f"{status} {name}  {detail}")
    print(f"{'OK' if failures == 0 else 'FAILED'}: {len(rows) - failures}/{len(rows)} checks passed (seed {seed})")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ariththeta",
        description="Degree series, Green functions and star-product heights at desk scale",
    )
    ap.add_argument("--config", help="config file (overrides $ARITHTHETA_CONFIG)")
    ap.add_argument("--out", choices=("table", "json"), default="table")
    ap.add_argument("--order", help="bundled order name (d1, d6, d10) or JSON path")
    ap.add_argument("--threads", type=int, default=1, help="1 guarantees determinism")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theta-deg", help="degree series coefficients")
    p.add_argument("--v", type=float, default=1.0)
    p.add_argument("--max-t", type=int, required=True)
    p.set_defaults(func=cmd_theta_deg)

    p = sub.add_parser("green", help="truncated Green-function sum")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--v", type=float, default=1.0)
    p.add_argument("--z", required=True, help='point "u,v" or "u,v,sheet"')
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("lambda", help="star-product height of a lattice pair")
    p.add_argument("--x1", required=True, help='integer lattice coordinates "a,b,c"')
    p.add_argument("--x2", required=True)
    p.add_argument("--v", help='symmetric positive matrix "v11,v12,v22"')
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("classify", help="fundamental prime and regularity of T")
    p.add_argument("--T", required=True, help='matrix "t1,m,t2"')
    p.add_argument("--D", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hurwitz", help="Hurwitz class number H(n)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("check", help="run a named verification suite")
    p.add_argument("suite", choices=checks.SUITES + ("full",))
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, cfg)
    except ArithThetaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
