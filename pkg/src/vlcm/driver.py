"""Runs, benchmarks and verification of saved designs."""
from __future__ import annotations

import csv
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .codegen import HdlConfig, check_identifier, emit_multiplier_hdl, emit_shift_adds_hdl, emit_testbench
from .cse import Mode
from .errors import EmptyInput, VerificationError
from .graph import AdderGraph, Design, DesignStats, Node, Op, Ref, output_width, verify_design
from .mcm import SOLVERS
from .numeric import LargeConstant, parse_hex
from .partition import PartitionConfig, Strategy, check_p
from .pipeline import build_design

EMITS = ("stats", "hdl", "multiplier", "testbench")


@dataclass
class RunConfig:
    constants: list  # hex strings
    name: str = "vlcm"
    p: int = 16
    strategy: Strategy = Strategy.STRICT
    mode: Mode = Mode.AREA
    solver: str = "heuristic"
    input_width: int = 16
    emit: tuple = ("stats",)
    seed: int = 0
    out: Path | None = None
    vectors: int = 10000
    trials: int = 1000
    timing: bool = True

    def __post_init__(self):
        if not self.constants:
            raise EmptyInput("at least one constant is required")
        check_p(self.p)
        check_identifier(self.name)
        self.strategy = Strategy(self.strategy)
        self.mode = Mode(self.mode)
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}")
        bad = set(self.emit) - set(EMITS)
        if bad:
            raise ValueError(f"unknown emit targets {sorted(bad)}")
        if self.input_width < 1:
            raise ValueError("input width must be positive")


@dataclass
class RunReport:
    name: str
    width: int
    oper: int
    step: int
    seconds: float
    stages: dict
    files: list = field(default_factory=list)

    def row(self) -> str:
        return f"{self.name:<16} {self.width:>5} {self.oper:>6} {self.step:>5} {self.seconds:>8.2f}"


REPORT_HEADER = f"{'instance':<16} {'width':>5} {'oper':>6} {'step':>5} {'time(s)':>8}"


def instance_name(path) -> str:
    stem = re.sub(r"[^A-Za-z0-9_]", "_", Path(path).stem) or "vlcm"
    return stem if re.match(r"[A-Za-z_]", stem) else f"c_{stem}"


def read_constants(path) -> list:
    """Hex constants from a file, one per line; ``#`` starts a comment."""
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    if not out:
        raise EmptyInput(f"{path} holds no constants")
    return out


# --- design text ------------------------------------------------------------


def save_design(design: Design) -> str:
    lines = ["# vlcm design", f"input_width {design.input_width}"]
    for name, value in design.targets.items():
        lines.append(f"target {name} {value:x}")
    for name, ref in design.outputs.items():
        lines.append(f"output {name} n{ref.node} {ref.shift}")
    if design.stats is not None:
        lines.append(f"stats {design.stats.oper} {design.stats.step}")
    return "\n".join(lines) + "\n" + design.graph.dump(design.input_width)


def _ref(text):
    node, shift = text.split("<<")
    return Ref(int(node[1:]), int(shift))


def load_design(text: str) -> Design:
    """Inverse of :func:`save_design`; nodes are taken verbatim, not rebuilt."""
    g = AdderGraph()
    g.nodes, g._by_odd = [], {}
    width, targets, outputs, st = 16, {}, {}, None
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        head = parts[0]
        if head == "input_width":
            width = int(parts[1])
        elif head == "target":
            targets[parts[1]] = int(parts[2], 16)
        elif head == "output":
            outputs[parts[1]] = Ref(int(parts[2][1:]), int(parts[3]))
        elif head == "stats":
            st = DesignStats(int(parts[1]), int(parts[2]))
        elif head.startswith("n"):
            nid, op = int(head[1:]), Op(parts[1])
            label = None if parts[7] == "-" else parts[7]
            if op is Op.INPUT:
                node = Node(nid, op, None, None, int(parts[4]), 0, label)
            else:
                node = Node(nid, op, _ref(parts[2]), _ref(parts[3]), int(parts[4]), int(parts[5]), label)
            g.nodes.append(node)
            v = node.value
            g._by_odd.setdefault(v >> ((v & -v).bit_length() - 1), nid)
        else:
            raise ValueError(f"unrecognized line {line!r}")
    return Design(g, outputs, targets, width, st)


# --- run ----------------------------------------------------------------------


def run(cfg: RunConfig, echo=print) -> RunReport:
    consts = [parse_hex(c) if isinstance(c, str) else LargeConstant.from_int(int(c)) for c in cfg.constants]
    names = [f"lc_{i}" for i in range(len(consts))]
    design = build_design(consts, PartitionConfig(cfg.p, cfg.strategy), cfg.solver, cfg.mode,
                          cfg.input_width, names)
    ok, msg = verify_design(design, cfg.trials, cfg.seed)
    if not ok:
        raise VerificationError(msg)
    seconds = design.stats.seconds if cfg.timing else 0.0
    report = RunReport(cfg.name, max(c.bit_width for c in consts), design.stats.oper,
                       design.stats.step, seconds, dict(design.stages))
    if cfg.out is not None:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        hdl = HdlConfig(cfg.name, cfg.input_width, cfg.vectors, cfg.seed)
        files = {f"{cfg.name}.graph": save_design(design)}
        if "hdl" in cfg.emit:
            files[f"{cfg.name}.v"] = emit_shift_adds_hdl(design, hdl)
        if "multiplier" in cfg.emit:
            files[f"{cfg.name}_mul.v"] = emit_multiplier_hdl(design.targets, hdl)
        if "testbench" in cfg.emit:
            files[f"{cfg.name}_tb.v"] = emit_testbench(design, hdl)
        if "stats" in cfg.emit:
            stage_text = " ".join(f"{k}={v}" for k, v in design.stages.items())
            files[f"{cfg.name}_stats.txt"] = f"{REPORT_HEADER}\n{report.row()}\nstages {stage_text}\n"
        for fname, text in files.items():
            (out / fname).write_text(text)
        report.files = sorted(files)
    if echo is not None:
        echo(REPORT_HEADER)
        echo(report.row())
    return report


# --- verification of emitted files ---------------------------------------------

_CHK = re.compile(r"chk\((\d+)'h([0-9a-f]+), (\d+)'h([0-9a-f]+)\);")


def check_testbench(text: str, design: Design) -> tuple:
    """Recompute every expected literal of a testbench from the constants."""
    w = design.input_width
    widths = [output_width(v, w) for v in design.targets.values()]
    count = 0
    for m in _CHK.finditer(text):
        x, want = int(m.group(2), 16), int(m.group(4), 16)
        packed, off = 0, 0
        for value, pw in zip(design.targets.values(), widths):
            packed |= (value * x) << off
            off += pw
        if packed != want:
            return False, f"testbench literal for x={x:#x} disagrees with the constants"
        count += 1
    if not count:
        return False, "testbench holds no vectors"
    return True, f"{count} testbench literals match"


def verify(out_dir, trials=10000, seed=1) -> list:
    """Check every saved design under ``out_dir``; returns ``[(name, ok, message)]``."""
    results = []
    paths = sorted(Path(out_dir).glob("*.graph"))
    if not paths:
        raise FileNotFoundError(f"no designs under {out_dir}")
    for path in paths:
        name = path.stem
        design = load_design(path.read_text())
        ok, msg = verify_design(design, trials, seed)
        tb = path.with_name(f"{name}_tb.v")
        if ok and tb.exists():
            ok, tb_msg = check_testbench(tb.read_text(), design)
            msg = f"{msg}; {tb_msg}"
        results.append((name, ok, msg))
    return results


# --- benchmark ------------------------------------------------------------------


@dataclass
class BenchSpec:
    n_constants: int = 5
    widths: tuple = tuple(range(400, 1001, 100))
    instances_per_width: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.n_constants < 1 or self.instances_per_width < 1:
            raise ValueError("need at least one constant and one instance")
        if not self.widths or any(w < 1 for w in self.widths):
            raise ValueError("widths must be positive")


def random_instance(width: int, n: int, seed: int, index: int) -> list:
    """Seeded uniform odd constants of exactly ``width`` bits."""
    rng = random.Random(f"{seed}-{width}-{index}")
    return [rng.getrandbits(width) | 1 | (1 << (width - 1)) for _ in range(n)]


@dataclass
class BenchResult:
    records: list  # (width, index, p, strategy, mode, oper, step, seconds)
    rows: list  # CSV rows
    ratios: dict  # p -> (delay/area oper, area/delay step)


def _bench_one(job):
    width, index, constants, p_list, modes, strategy, solver = job
    out = []
    for p in p_list:
        for mode in modes:
            d = build_design(constants, PartitionConfig(p, strategy), solver, mode)
            out.append((width, index, p, strategy.value, Mode(mode).value,
                        d.stats.oper, d.stats.step, d.stats.seconds))
    return out


CSV_COLUMNS = ("width", "p", "strategy", "mode", "avg_oper", "avg_step", "avg_seconds")


def bench(spec: BenchSpec, p_list=(8, 16, 24), modes=("area", "delay"), strategy=Strategy.STRICT,
          solver="heuristic", csv_path=None, workers=1, timing=True) -> BenchResult:
    strategy = Strategy(strategy)
    for p in p_list:
        check_p(p)
    jobs = [
        (w, i, random_instance(w, spec.n_constants, spec.seed, i), tuple(p_list), tuple(modes), strategy, solver)
        for w in spec.widths for i in range(spec.instances_per_width)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_bench_one, jobs))
    else:
        chunks = [_bench_one(j) for j in jobs]
    records = sorted(r for chunk in chunks for r in chunk)
    if not timing:
        records = [r[:7] + (0.0,) for r in records]

    groups = {}
    for w, _, p, strat, mode, oper, step, sec in records:
        groups.setdefault((w, p, strat, mode), []).append((oper, step, sec))
    rows = []
    for key in sorted(groups):
        vals = groups[key]
        k = len(vals)
        rows.append(key + (
            f"{sum(v[0] for v in vals) / k:.2f}",
            f"{sum(v[1] for v in vals) / k:.2f}",
            f"{sum(v[2] for v in vals) / k:.4f}",
        ))

    ratios = {}
    for p in p_list:
        area = [r for r in records if r[2] == p and r[4] == "area"]
        delay = [r for r in records if r[2] == p and r[4] == "delay"]
        if area and delay:
            ratios[p] = (sum(r[5] for r in delay) / sum(r[5] for r in area),
                         sum(r[6] for r in area) / sum(r[6] for r in delay))

    if csv_path is not None:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            writer.writerows(rows)
    return BenchResult(records, rows, ratios)
