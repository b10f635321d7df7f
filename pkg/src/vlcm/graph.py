"""Shift-add DAG over a single input variable."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import NonPositiveResult, UnknownOperand
from .numeric import min_adder_steps_set


class Op(str, Enum):
    INPUT = "input"
    ADD = "add"
    SUB = "sub"


def _v2(n):
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class Ref:
    """A node scaled by ``2**shift``; a negative shift drops known-zero bits."""

    node: int
    shift: int = 0

    def shifted(self, k: int) -> "Ref":
        return Ref(self.node, self.shift + k)


def scale(value: int, shift: int) -> int:
    return value << shift if shift >= 0 else value >> -shift


@dataclass
class Node:
    id: int
    op: Op
    lhs: Ref | None
    rhs: Ref | None
    value: int
    depth: int
    label: str | None = None


def output_width(value: int, input_width: int) -> int:
    if value == 0:
        return 1
    return (value * ((1 << input_width) - 1)).bit_length()


class AdderGraph:
    """Nodes are deduplicated by odd fundamental, so every value is built once.

    ``dedup=False`` keeps repeated values as separate nodes; digit recoding
    uses it so that each constant owns its chain.
    """

    def __init__(self, dedup: bool = True):
        self.nodes = [Node(0, Op.INPUT, None, None, 1, 0, "x")]
        self._by_odd = {1: 0}
        self.dedup = dedup

    input_id = 0

    def __len__(self):
        return len(self.nodes)

    @property
    def oper(self) -> int:
        return len(self.nodes) - 1

    def node(self, nid: int) -> Node:
        try:
            return self.nodes[nid]
        except (IndexError, TypeError):
            raise UnknownOperand(nid) from None

    def value(self, ref: Ref) -> int:
        return scale(self.node(ref.node).value, ref.shift)

    def depth(self, ref: Ref) -> int:
        return self.node(ref.node).depth

    def find(self, value: int) -> Ref | None:
        """Ref realizing ``value`` if its odd part is already present."""
        if value <= 0:
            return None
        e = _v2(value)
        nid = self._by_odd.get(value >> e)
        if nid is None:
            return None
        return Ref(nid, e - _v2(self.nodes[nid].value))

    def input(self, shift: int = 0) -> Ref:
        return Ref(0, shift)

    def add_node(self, op, lhs: Ref, rhs: Ref, label: str | None = None) -> Ref:
        """Insert ``(lhs) op (rhs)`` and return a ref equal to that value.

        If the value (up to a power of two) already exists, the existing
        node is returned and nothing is added.
        """
        op = Op(op)
        if op is Op.INPUT:
            raise ValueError("only one input node is allowed")
        ln, rn = self.node(lhs.node), self.node(rhs.node)
        m = min(lhs.shift, rhs.shift)
        if m < 0 and _v2(ln.value) >= -lhs.shift and _v2(rn.value) >= -rhs.shift:
            # drop known-zero low bits inside the node rather than widening it
            m = 0
        sl, sr = lhs.shift - m, rhs.shift - m
        a, b = scale(ln.value, sl), scale(rn.value, sr)
        raw = a + b if op is Op.ADD else a - b
        if raw <= 0:
            raise NonPositiveResult(f"{op.value} yields {raw}")
        e = _v2(raw)
        existing = self._by_odd.get(raw >> e)
        if existing is not None and (self.dedup or raw >> e == 1):
            return Ref(existing, m + e - _v2(self.nodes[existing].value))
        nid = len(self.nodes)
        node = Node(nid, op, Ref(ln.id, sl), Ref(rn.id, sr), raw, 1 + max(ln.depth, rn.depth), label)
        self.nodes.append(node)
        self._by_odd.setdefault(raw >> e, nid)
        return Ref(nid, m)

    def relabel(self, ref: Ref, label: str):
        node = self.node(ref.node)
        if node.op is not Op.INPUT and node.label is None:
            node.label = label

    def import_graph(self, other: "AdderGraph") -> dict:
        """Replay ``other`` into this graph; returns old id -> Ref."""
        mapping = {0: Ref(0)}
        for node in other.nodes[1:]:
            lhs = mapping[node.lhs.node].shifted(node.lhs.shift)
            rhs = mapping[node.rhs.node].shifted(node.rhs.shift)
            mapping[node.id] = self.add_node(node.op, lhs, rhs, node.label)
        return mapping

    def topo_order(self):
        """Kahn order; raises ValueError on a cycle."""
        indeg = {n.id: 0 for n in self.nodes}
        users = {n.id: [] for n in self.nodes}
        for n in self.nodes:
            for r in (n.lhs, n.rhs):
                if r is not None:
                    indeg[n.id] += 1
                    users[r.node].append(n.id)
        ready = sorted(i for i, d in indeg.items() if d == 0)
        order = []
        while ready:
            i = ready.pop(0)
            order.append(i)
            for u in users[i]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    ready.append(u)
            ready.sort()
        if len(order) != len(self.nodes):
            raise ValueError("adder graph contains a cycle")
        return order

    def check(self):
        """Recompute values and depths from scratch; raise on any mismatch."""
        self.topo_order()
        inputs = [n for n in self.nodes if n.op is Op.INPUT]
        assert len(inputs) == 1, "exactly one input node expected"
        seen = set()
        for n in self.nodes[1:]:
            l, r = self.nodes[n.lhs.node], self.nodes[n.rhs.node]
            assert _v2(l.value) >= -n.lhs.shift and _v2(r.value) >= -n.rhs.shift, f"node {n.id} drops set bits"
            a, b = scale(l.value, n.lhs.shift), scale(r.value, n.rhs.shift)
            raw = a + b if n.op is Op.ADD else a - b
            assert raw == n.value and raw > 0, f"node {n.id} value mismatch"
            assert n.depth == 1 + max(l.depth, r.depth), f"node {n.id} depth mismatch"
            assert not self.dedup or n.value not in seen, f"duplicate value {n.value}"
            seen.add(n.value)

    def dump(self, input_width: int) -> str:
        lines = []
        for n in self.nodes:
            if n.op is Op.INPUT:
                lines.append(f"n{n.id} input - - {n.value} 0 {input_width} {n.label}")
                continue
            lines.append(
                f"n{n.id} {n.op.value} n{n.lhs.node}<<{n.lhs.shift} n{n.rhs.node}<<{n.rhs.shift} "
                f"{n.value} {n.depth} {output_width(n.value, input_width)} {n.label or '-'}"
            )
        return "\n".join(lines) + "\n"


@dataclass
class DesignStats:
    oper: int
    step: int
    seconds: float = 0.0


@dataclass
class Design:
    graph: AdderGraph
    outputs: dict  # output name -> Ref
    targets: dict  # output name -> constant value
    input_width: int = 16
    stats: DesignStats | None = None
    stages: dict = field(default_factory=dict)  # stage name -> operations added

    def output_value(self, name) -> int:
        return self.graph.value(self.outputs[name])

    def compute_stats(self, seconds: float = 0.0) -> DesignStats:
        self.stats = stats(self, seconds)
        return self.stats


def stats(design: Design, seconds: float = 0.0) -> DesignStats:
    g = design.graph
    step = max((g.depth(r) for r in design.outputs.values()), default=0)
    return DesignStats(g.oper, step, seconds)


def evaluate(design: Design, x: int) -> dict:
    """Bit-true evaluation of every node; returns output name -> value * x."""
    w = design.input_width
    if not 0 <= x < (1 << w):
        raise ValueError(f"x={x} outside {w}-bit range")
    g = design.graph
    vals = [0] * len(g.nodes)
    for i in g.topo_order():
        n = g.nodes[i]
        if n.op is Op.INPUT:
            vals[i] = x
            continue
        a = scale(vals[n.lhs.node], n.lhs.shift)
        b = scale(vals[n.rhs.node], n.rhs.shift)
        v = a + b if n.op is Op.ADD else a - b
        assert v.bit_length() <= output_width(n.value, w), f"node {i} exceeds its width"
        vals[i] = v
    return {name: scale(vals[r.node], r.shift) for name, r in design.outputs.items()}


def merge(*designs: Design) -> Design:
    out = AdderGraph()
    outputs, targets = {}, {}
    for d in designs:
        mapping = out.import_graph(d.graph)
        for name, r in d.outputs.items():
            outputs[name] = mapping[r.node].shifted(r.shift)
            targets[name] = d.targets[name]
    width = max((d.input_width for d in designs), default=16)
    merged = Design(out, outputs, targets, width)
    merged.compute_stats()
    return merged


def verify_design(design: Design, trials: int = 1000, seed: int = 0):
    """Random and corner-vector check plus structural checks.

    Vectors run first so a broken node is reported with a counterexample.
    Returns ``(ok, message)``; the message names the first failure.
    """
    g = design.graph
    try:
        g.topo_order()
    except ValueError as exc:
        return False, f"structure: {exc}"
    w = design.input_width
    rng = random.Random(seed)
    vectors = [0, 1, (1 << w) - 1] + [rng.getrandbits(w) for _ in range(trials)]
    for x in vectors:
        try:
            got = evaluate(design, x)
        except AssertionError as exc:
            return False, f"x={x}: {exc}"
        for name, v in got.items():
            if v != design.targets[name] * x:
                return False, f"x={x}: {name} = {v}, expected {design.targets[name] * x}"
    try:
        g.check()
    except (AssertionError, ValueError) as exc:
        return False, f"structure: {exc}"
    st = stats(design)
    claimed = design.stats.step if design.stats is not None else st.step
    mas = min_adder_steps_set(design.targets.values())
    if claimed < mas:
        return False, f"structure: step {claimed} below the lower bound {mas}"
    if claimed != st.step:
        return False, f"structure: claimed step {claimed} != actual {st.step}"
    if design.stats is not None and design.stats.oper != st.oper:
        return False, f"structure: claimed oper {design.stats.oper} != actual {st.oper}"
    return True, f"{len(vectors)} vectors passed"
