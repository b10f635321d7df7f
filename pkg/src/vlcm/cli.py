"""Command line entry point: ``vlcm run | bench | verify``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import driver
from .errors import BudgetExceeded, EmptyInput, InfeasibleDelay, InvalidDigit, InvalidIdentifier, InvalidP, \
    VerificationError, ZeroConstant
from .fixtures import CURVES, curve_hex
from .mcm import SOLVERS

EXIT_PARSE, EXIT_INFEASIBLE, EXIT_VERIFY = 1, 2, 3


def _ints(text):
    return [int(v) for v in text.split(",") if v]


def _words(text):
    return [v for v in text.split(",") if v]


def _constants(args):
    if args.fixture:
        return [curve_hex(args.fixture)], args.name or driver.instance_name(args.fixture)
    if not args.constants:
        raise EmptyInput("give --constants or --fixture")
    path = Path(args.constants)
    if path.is_file():
        return driver.read_constants(path), args.name or driver.instance_name(path)
    return _words(args.constants), args.name or "vlcm"


def _run(args):
    constants, name = _constants(args)
    cfg = driver.RunConfig(
        constants, name=name, p=args.p, strategy=args.strategy, mode=args.mode, solver=args.solver,
        input_width=args.input_width, emit=tuple(_words(args.emit)), seed=args.seed,
        out=args.out, vectors=args.vectors, timing=not args.no_timing,
    )
    driver.run(cfg)
    return 0


def _bench(args):
    spec = driver.BenchSpec(args.n, tuple(_ints(args.widths)), args.instances, args.seed)
    res = driver.bench(spec, _ints(args.p), _words(args.modes), args.strategy, args.solver,
                       args.csv, args.workers, timing=not args.no_timing)
    print(",".join(driver.CSV_COLUMNS))
    for row in res.rows:
        print(",".join(str(v) for v in row))
    for p, (oper, step) in sorted(res.ratios.items()):
        print(f"p={p}: oper delay/area {oper:.3f}, step area/delay {step:.3f}")
    return 0


def _verify(args):
    failed = 0
    for name, ok, msg in driver.verify(args.out, args.trials):
        print(f"{'PASS' if ok else 'FAIL'} {name}: {msg}")
        failed += not ok
    return EXIT_VERIFY if failed else 0


def build_parser():
    ap = argparse.ArgumentParser(prog="vlcm", description="Shift-adds designs for large constant multiplication")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="build, verify and emit one design")
    r.add_argument("--constants", help="file with one hex constant per line, or a comma separated hex list")
    r.add_argument("--fixture", choices=sorted(CURVES), help="use a named-curve prime")
    r.add_argument("--name", help="module and instance name")
    r.add_argument("--p", type=int, default=16)
    r.add_argument("--strategy", choices=["strict", "common-digit"], default="strict")
    r.add_argument("--mode", choices=["area", "delay"], default="area")
    r.add_argument("--solver", choices=SOLVERS, default="heuristic")
    r.add_argument("--input-width", type=int, default=16)
    r.add_argument("--emit", default="stats", help="comma list of " + ",".join(driver.EMITS))
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", type=Path)
    r.add_argument("--vectors", type=int, default=10000, help="testbench vectors")
    r.add_argument("--no-timing", action="store_true", help="report 0 s for reproducible output")
    r.set_defaults(func=_run)

    b = sub.add_parser("bench", help="random-instance benchmark")
    b.add_argument("--n", type=int, default=5)
    b.add_argument("--widths", default="400,500,600,700,800,900,1000")
    b.add_argument("--instances", type=int, default=30)
    b.add_argument("--p", default="8,16,24")
    b.add_argument("--modes", default="area,delay")
    b.add_argument("--strategy", choices=["strict", "common-digit"], default="strict")
    b.add_argument("--solver", choices=SOLVERS, default="heuristic")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", type=Path)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--no-timing", action="store_true")
    b.set_defaults(func=_bench)

    v = sub.add_parser("verify", help="re-check saved designs and testbenches")
    v.add_argument("--out", type=Path, required=True)
    v.add_argument("--trials", type=int, default=10000)
    v.set_defaults(func=_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EmptyInput, InvalidDigit, ZeroConstant, InvalidIdentifier, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidP, InfeasibleDelay, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except VerificationError as exc:
        print(f"internal error, verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
