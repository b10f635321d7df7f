"""Operation and adder-step counts for the named-curve primes.

    python3 scripts/run_table1.py [--mode area|delay] [--strategy strict|common-digit]

Prints our counts next to the published ones for p in {8, 16, 24}.
"""
import argparse

from vlcm.fixtures import CURVES, TABLE_I
from vlcm.partition import PartitionConfig, Strategy
from vlcm.pipeline import build_design


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mode", choices=["area", "delay"], default="area")
    ap.add_argument("--strategy", choices=[s.value for s in Strategy], default="strict")
    args = ap.parse_args()

    print(f"{'instance':<14}{'p':>3}  {'oper':>10}  {'step':>10}  {'time(s)':>8}")
    for name, value in CURVES.items():
        for p in (8, 16, 24):
            d = build_design([value], PartitionConfig(p, Strategy(args.strategy)), mode=args.mode)
            ref_oper, ref_step, _ = TABLE_I[name][1][p]
            print(f"{name:<14}{p:>3}  {d.stats.oper:>4} ({ref_oper:>3})  {d.stats.step:>4} ({ref_step:>3})"
                  f"  {d.stats.seconds:>8.2f}")


if __name__ == "__main__":
    main()
