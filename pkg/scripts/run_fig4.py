"""Random-instance study: average oper/step per width, p and mode.

    python3 scripts/run_fig4.py --instances 10 --csv fig4.csv --workers 4

Defaults follow the reduced desk-scale setting (n=5, widths 400..1000).
Use --instances 30 for the full run.
"""
import argparse

from vlcm.driver import BenchSpec, bench


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--instances", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", default="fig4.csv")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    spec = BenchSpec(args.n, tuple(range(400, 1001, 100)), args.instances, args.seed)
    res = bench(spec, p_list=(8, 16, 24), modes=("area", "delay"), csv_path=args.csv, workers=args.workers)
    for row in res.rows:
        print(",".join(str(v) for v in row))
    for p, (oper, step) in sorted(res.ratios.items()):
        print(f"p={p}: delay mode costs {oper:.2f}x the operations and cuts steps {step:.2f}x")


if __name__ == "__main__":
    main()
