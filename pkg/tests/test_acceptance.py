"""Acceptance checks, one per criterion.

Run ``python tests/test_acceptance.py`` for a PASS/FAIL line per criterion,
or collect it with pytest.  Criteria 5 to 7 take several minutes each.
"""
import filecmp
import random
import sys
import tempfile
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracle import min_adders  # noqa: E402
from vlcm import cli  # noqa: E402
from vlcm.cse import Mode  # noqa: E402
from vlcm.driver import BenchSpec, bench, random_instance  # noqa: E402
from vlcm.errors import BudgetExceeded  # noqa: E402
from vlcm.fixtures import CURVES, TABLE_I  # noqa: E402
from vlcm.graph import verify_design  # noqa: E402
from vlcm.mcm import McmProblem, dbr, gb_delay_constrained, gb_exact_small, gb_heuristic, normalize  # noqa: E402
from vlcm.partition import PartitionConfig, Strategy  # noqa: E402
from vlcm.pipeline import build_design  # noqa: E402

FIG2 = [0xFF13A6174C, 0x2EFFFF4CA617]
TABLE_TOL = 0.30
BENCH_WIDTHS = tuple(range(400, 1001, 100))


def _depth(g):
    return max(n.depth for n in g.nodes)


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def criterion_1():
    p = McmProblem.of([43, 59])
    notes, ok = [], True
    for label, fn, want in (
        ("dbr-binary", lambda: dbr(p, "binary"), (7, 4)),
        ("exact", lambda: gb_exact_small(p), (3, None)),
        ("delay D=2", lambda: gb_delay_constrained(p, 2), (4, 2)),
    ):
        g, sec = _timed(fn)
        got = (g.oper, _depth(g))
        hit = got[0] == want[0] and (want[1] is None or got[1] == want[1]) and sec < 1.0
        ok &= hit
        notes.append(f"{label} {got[0]}/{got[1]} in {sec:.2f}s")
    return ok, "; ".join(notes)


def criterion_2():
    ok, notes = True, []
    for mode, oper, step in ((Mode.AREA, 13, 7), (Mode.DELAY, 14, 5)):
        d = build_design(FIG2, PartitionConfig(8), mode=mode)
        hit = abs(d.stats.oper - oper) <= 1 and d.stats.step == step
        ok &= hit
        notes.append(f"{mode.value} {d.stats.oper}/{d.stats.step} (want {oper}+-1/{step})")
    return ok, "; ".join(notes)


def criterion_3():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    failures = []
    for i in range(50):
        n = rng.choice([1, 5])
        w = rng.randint(220, 768)
        cs = [rng.getrandbits(w) | 1 | (1 << (w - 1)) for _ in range(n)]
        cfg = PartitionConfig(rng.choice([8, 16, 24]), rng.choice(list(Strategy)))
        mode = rng.choice(list(Mode))
        d = build_design(cs, cfg, "heuristic", mode)
        good, msg = verify_design(d, trials=1000, seed=i)
        if not good:
            failures.append(f"instance {i}: {msg}")
    sec = time.perf_counter() - t0
    ok = not failures and sec < 300
    return ok, f"50 instances, {len(failures)} failures, {sec:.0f}s" + (f"; {failures[0]}" if failures else "")


def table_rows():
    rows = []
    for name, value in CURVES.items():
        for p in (8, 16, 24):
            d = build_design([value], PartitionConfig(p))
            ref_oper, ref_step, _ = TABLE_I[name][1][p]
            rows.append((name, p, d.stats.oper, ref_oper, d.stats.step, ref_step, d.stats.seconds))
    return rows


def criterion_4():
    bad = []
    lines = []
    for name, p, oper, r_oper, step, r_step, sec in table_rows():
        e_oper = (oper - r_oper) / r_oper
        e_step = (step - r_step) / r_step
        hit = abs(e_oper) <= TABLE_TOL and abs(e_step) <= TABLE_TOL and sec <= 60
        lines.append(f"    {name:<13} p={p:<2} oper {oper:>3} vs {r_oper:>3} ({e_oper:+.0%})  "
                     f"step {step:>3} vs {r_step:>3} ({e_step:+.0%})  {sec:.2f}s  {'ok' if hit else 'OUT'}")
        if not hit:
            bad.append(f"{name}@{p}")
    detail = f"{21 - len(bad)}/21 rows within +-30%" + (f"; outside: {', '.join(bad)}" if bad else "")
    return not bad, detail + "\n" + "\n".join(lines)


def criterion_5():
    spec = BenchSpec(n_constants=5, widths=BENCH_WIDTHS, instances_per_width=10, seed=0)
    res, sec = _timed(lambda: bench(spec, p_list=(8, 16, 24), modes=("area", "delay")))
    avg = {}
    for w, _, p, _, mode, oper, step, _ in res.records:
        avg.setdefault((w, p, mode), []).append(oper)
    trend = all(
        sum(avg[(w, 24, "area")]) <= sum(avg[(w, 8, "area")]) and sum(avg[(w, 24, "delay")]) <= sum(avg[(w, 8, "delay")])
        for w in BENCH_WIDTHS
    )
    by_inst = {}
    for w, i, p, _, mode, oper, step, _ in res.records:
        by_inst.setdefault((w, i, p), {})[mode] = (oper, step)
    step_ok = all(v["delay"][1] <= v["area"][1] for v in by_inst.values())
    area = [v["area"] for v in by_inst.values()]
    delay = [v["delay"] for v in by_inst.values()]
    oper_ratio = sum(o for o, _ in delay) / sum(o for o, _ in area)
    step_ratio = sum(s for _, s in area) / sum(s for _, s in delay)
    ok = trend and step_ok and oper_ratio <= 1.3 and step_ratio >= 2 and sec < 900
    per_p = ", ".join(f"p={p}: {o:.2f}x oper, {s:.2f}x step" for p, (o, s) in sorted(res.ratios.items()))
    return ok, (f"trend {'ok' if trend else 'broken'}; delay step <= area step on every instance: {step_ok}; "
                f"oper ratio {oper_ratio:.2f}, step reduction {step_ratio:.2f}x ({per_p}); {sec:.0f}s")


def criterion_6():
    t0 = time.perf_counter()
    cost = {1: 0}
    mismatches = []
    for t in range(2, 1 << 12):
        problem, _ = normalize([t])
        if not problem.targets:
            got = 0
        else:
            f = problem.targets[0]
            if f not in cost:
                cost[f] = gb_exact_small(problem).oper
            got = cost[f]
        if got != min_adders(t):
            mismatches.append(t)
    sec = time.perf_counter() - t0
    return not mismatches and sec < 120, f"{len(mismatches)} mismatches over 2..4095, {sec:.0f}s"


def criterion_7():
    rng = random.Random(7)
    violations, skipped = [], 0
    t0 = time.perf_counter()
    for _ in range(200):
        k = rng.randint(1, 3)
        b = rng.randint(4, 12)
        problem = McmProblem.of({rng.getrandbits(b) | 1 | (1 << (b - 1)) for _ in range(k)})
        try:
            e = gb_exact_small(problem).oper
        except BudgetExceeded:
            skipped += 1
            continue
        ops = (e, gb_heuristic(problem).oper, dbr(problem, "csd").oper, dbr(problem, "binary").oper)
        if list(ops) != sorted(ops):
            violations.append((problem.targets, ops))
    sec = time.perf_counter() - t0
    return not violations, f"{len(violations)} violations, {skipped} over budget, {sec:.0f}s"


def criterion_8():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        src = tmp / "lc.txt"
        src.write_text("\n".join(format(c, "x") for c in random_instance(500, 3, 5, 0)) + "\n")
        runs = []
        for k in (1, 2):
            out = tmp / f"run{k}"
            rc = cli.main(["run", "--constants", str(src), "--p", "16", "--mode", "delay", "--seed", "3",
                           "--emit", "stats,hdl,multiplier,testbench", "--out", str(out), "--vectors", "300",
                           "--no-timing"])
            csv_path = tmp / f"bench{k}.csv"
            rc |= cli.main(["bench", "--n", "2", "--widths", "200,300", "--instances", "2", "--p", "8,16",
                            "--seed", "4", "--csv", str(csv_path), "--no-timing"])
            runs.append((rc, out, csv_path))
        (rc1, out1, csv1), (rc2, out2, csv2) = runs
        names = sorted(p.name for p in out1.iterdir())
        same_files = names == sorted(p.name for p in out2.iterdir()) and all(
            filecmp.cmp(out1 / n, out2 / n, shallow=False) for n in names)
        same_csv = csv1.read_bytes() == csv2.read_bytes()
        ok = rc1 == rc2 == 0 and same_files and same_csv
        return ok, f"{len(names)} emitted files identical: {same_files}; bench CSV identical: {same_csv}"


CRITERIA = [
    (1, "golden two-constant suite", criterion_1),
    (2, "worked example reconstruction", criterion_2),
    (3, "bit-true correctness on random instances", criterion_3),
    (4, "named-curve magnitudes within 30%", criterion_4),
    (5, "benchmark trends", criterion_5),
    (6, "exact solver vs exhaustive oracle", criterion_6),
    (7, "solver ordering", criterion_7),
    (8, "determinism", criterion_8),
]


def _line(num, title, ok, detail):
    head, _, rest = detail.partition("\n")
    text = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} -- {head}"
    return text + ("\n" + rest if rest else "")


@pytest.mark.slow
@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn):
    ok, detail = fn()
    print(_line(num, title, ok, detail))
    assert ok, detail


def main():
    failed = 0
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        print(_line(num, title, ok, detail), flush=True)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
