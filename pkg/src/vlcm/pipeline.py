"""End-to-end construction: partition, coefficient MCM, CSE, assembly."""
from __future__ import annotations

import time

from .cse import Mode, assemble_final_equations, eliminate_common_subexpressions, realize_table, term_ref
from .errors import VerificationError
from .graph import AdderGraph, Design, Op, evaluate
from .mcm import normalize, solve
from .numeric import LargeConstant, min_adder_steps_set
from .partition import PartitionConfig, partition


def _as_constants(constants):
    out = []
    for c in constants:
        out.append(c if isinstance(c, LargeConstant) else LargeConstant.from_int(int(c)))
    return out


def build_design(constants, cfg: PartitionConfig = None, solver="heuristic", mode=Mode.AREA,
                 input_width=16, names=None) -> Design:
    """Build and check a multiplierless design for ``constants`` times ``x``."""
    cfg = cfg or PartitionConfig()
    mode = Mode(mode)
    consts = _as_constants(constants)
    names = list(names) if names else [f"lc_{i}" for i in range(len(consts))]
    t0 = time.perf_counter()

    part = partition(consts, cfg)
    g = AdderGraph()
    stages = {}

    before = g.oper
    for r in part.sequences:
        g.add_node(Op.SUB, g.input(r), g.input(0), f"seqf_{r}")
    stages["sequences"] = g.oper - before

    before = g.oper
    problem, _ = normalize(part.coefficients)
    if mode is Mode.DELAY and problem.targets:
        mcm = solve(problem, solver, delay_bound=min_adder_steps_set(problem.targets))
    else:
        mcm = solve(problem, solver)
    mapping = g.import_graph(mcm)
    for node in mcm.nodes[1:]:
        if node.value in problem.targets:
            g.relabel(mapping[node.id], f"c{node.value}")
    stages["coefficients"] = g.oper - before

    def depth_of(term):
        return g.depth(term_ref(g, term))

    before = g.oper
    table, eqs = eliminate_common_subexpressions(part.equations, mode, depth_of)
    realize_table(g, table)
    stages["cse"] = g.oper - before

    before = g.oper
    outputs, _ = assemble_final_equations(g, eqs, mode, names, start=len(table))
    stages["final"] = g.oper - before
    seconds = time.perf_counter() - t0

    design = Design(g, outputs, {n: c.value for n, c in zip(names, consts)}, input_width)
    design.stages = stages
    design.partition = part
    design.table = table
    design.equations = eqs
    got = evaluate(design, 1)
    for n in names:
        if got[n] != design.targets[n]:
            raise VerificationError(f"{n}: built {got[n]:#x}, expected {design.targets[n]:#x}")
    design.compute_stats(seconds)
    return design
