"""Common two-term subexpression elimination and final equation assembly."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

from .errors import UnresolvedTerm
from .graph import AdderGraph, Op, Ref
from .partition import EXP, LinearEquation, Term


class Mode(str, Enum):
    AREA = "area"
    DELAY = "delay"


@dataclass
class Subexpression:
    id: str
    left: Term  # shift 0
    right: Term  # shift relative to ``left``
    occurrences: int
    depth_estimate: int
    value: int

    def term(self, shift, sign=1) -> Term:
        return Term(EXP, self.id, self.value, shift, sign)


class SubexpressionTable(list):
    def by_id(self, name):
        for s in self:
            if s.id == name:
                return s
        raise KeyError(name)


def _sort_key(t: Term):
    return (t.shift, t.kind, t.key)


def _combined(lo_value, hi_value, d, rel):
    return lo_value + rel * (hi_value << d)


def _count_one(terms):
    """pattern -> non-overlapping matches ``[(i, j, sign), ...]`` in one equation."""
    raw = defaultdict(list)
    ids = [t.ident for t in terms]
    shifts = [t.shift for t in terms]
    signs = [t.sign for t in terms]
    n = len(terms)
    for i in range(n):
        a, sa, si = ids[i], signs[i], shifts[i]
        for j in range(i + 1, n):
            raw[(a, ids[j], shifts[j] - si, sa * signs[j])].append((i, j, sa))
    for key, matches in raw.items():
        if len(matches) > 1:
            used = set()
            keep = []
            for i, j, sign in matches:
                if i in used or j in used:
                    continue
                used.update((i, j))
                keep.append((i, j, sign))
            raw[key] = keep
    return raw


class _Tally:
    """Total match count per pattern, bucketed by count for a quick maximum."""

    def __init__(self):
        self.total = {}
        self.bucket = defaultdict(set)

    def bump(self, key, delta):
        c = self.total.get(key, 0)
        if c:
            self.bucket[c].discard(key)
        c += delta
        if c:
            self.total[key] = c
            self.bucket[c].add(key)
        else:
            del self.total[key]

    def best(self):
        top = max((c for c, ks in self.bucket.items() if ks), default=0)
        return top, self.bucket.get(top, ())


def eliminate_common_subexpressions(equations, mode=Mode.AREA, depth_of=None, start=0):
    """Iteratively replace the most frequent two-term pattern by a subexpression.

    ``depth_of(term)`` gives the adder-step depth of coefficient and sequence
    terms (used by the delay mode); subexpression depths are tracked here.
    Returns ``(table, equations)``; input equations are not modified.
    """
    mode = Mode(mode)
    table = SubexpressionTable()
    depths = {}

    def depth(t: Term):
        if t.kind == EXP:
            return depths[t.key]
        return depth_of(t) if depth_of is not None else 0

    eqs = [LinearEquation(e.target, sorted(e.terms, key=_sort_key)) for e in equations]
    per_eq = [_count_one(e.terms) for e in eqs]
    tally = _Tally()
    for counts in per_eq:
        for key, matches in counts.items():
            tally.bump(key, len(matches))
    proto = {}
    for e in eqs:
        for t in e.terms:
            proto.setdefault(t.ident, t)
    while True:
        best, keys = tally.best()
        if best < 2:
            break

        def rank(key):
            lo_t, hi_t = proto[key[0]], proto[key[1]]
            widths = lo_t.value.bit_length() + hi_t.value.bit_length()
            if mode is Mode.DELAY:
                return (1 + max(depth(lo_t), depth(hi_t)), widths, _order(key))
            return (widths, _order(key))

        key = min(keys, key=rank)
        lo_id, hi_id, d, rel = key
        lo_t, hi_t = proto[lo_id], proto[hi_id]
        value = _combined(lo_t.value, hi_t.value, d, rel)
        flip = 1
        if value < 0:
            value, flip = -value, -1
        name = f"exp_{start + len(table)}"
        sub = Subexpression(
            name,
            Term(lo_t.kind, lo_t.key, lo_t.value, 0, 1),
            Term(hi_t.kind, hi_t.key, hi_t.value, d, rel),
            best,
            1 + max(depth(lo_t), depth(hi_t)),
            value,
        )
        table.append(sub)
        depths[name] = sub.depth_estimate
        for k, counts in enumerate(per_eq):
            matches = counts.get(key)
            if not matches:
                continue
            terms = eqs[k].terms
            drop = set()
            new = []
            for i, j, sign in matches:
                drop.update((i, j))
                new.append(sub.term(terms[i].shift, sign * flip))
            kept = [t for n, t in enumerate(terms) if n not in drop]
            eqs[k] = LinearEquation(eqs[k].target, sorted(kept + new, key=_sort_key))
            proto.setdefault(new[0].ident, new[0])
            fresh = _count_one(eqs[k].terms)
            for old_key, m in counts.items():
                delta = len(fresh.get(old_key, ())) - len(m)
                if delta:
                    tally.bump(old_key, delta)
            for new_key, m in fresh.items():
                if new_key not in counts:
                    tally.bump(new_key, len(m))
            per_eq[k] = fresh
    return table, eqs


def _order(key):
    (lk, lv), (hk, hv), d, rel = key
    return (lk, str(lv), hk, str(hv), d, -rel)


def substitute(equations, table):
    """Expand every subexpression term back into coefficient/sequence terms."""
    defs = {s.id: s for s in table}
    out = []
    for e in equations:
        terms = list(e.terms)
        while any(t.kind == EXP for t in terms):
            nxt = []
            for t in terms:
                if t.kind != EXP:
                    nxt.append(t)
                    continue
                s = defs[t.key]
                for part in (s.left, s.right):
                    nxt.append(Term(part.kind, part.key, part.value, t.shift + part.shift, t.sign * part.sign))
            terms = nxt
        out.append(LinearEquation(e.target, terms))
    return out


# --- realization in an adder graph -----------------------------------------


def term_ref(graph: AdderGraph, term: Term) -> Ref:
    ref = graph.find(term.value)
    if ref is None:
        raise UnresolvedTerm(term.name)
    return ref.shifted(term.shift)


def combine(graph: AdderGraph, a: Term, b: Term, label=None):
    """Add the node for ``a + b`` (signed); returns ``(ref, sign)``."""
    ra, rb = term_ref(graph, a), term_ref(graph, b)
    va, vb = a.sign * graph.value(ra), b.sign * graph.value(rb)
    total = va + vb
    sign = 1 if total > 0 else -1
    if a.sign == b.sign:
        ref = graph.add_node(Op.ADD, ra, rb, label)
    elif va > 0:
        ref = graph.add_node(Op.SUB, ra, rb, label) if total > 0 else graph.add_node(Op.SUB, rb, ra, label)
    else:
        ref = graph.add_node(Op.SUB, rb, ra, label) if total > 0 else graph.add_node(Op.SUB, ra, rb, label)
    return ref, sign


def realize_table(graph: AdderGraph, table):
    """Create nodes for subexpressions in extraction order."""
    for s in table:
        ref, sign = combine(graph, s.left, s.right, s.id)
        assert sign > 0 and graph.value(ref) == s.value


def _width(t: Term) -> int:
    return (t.value << t.shift).bit_length()


def assemble_final_equations(graph: AdderGraph, equations, mode=Mode.AREA, names=None, start=0):
    """Reduce every equation to a single node; returns ``(outputs, fused)``.

    Area mode fuses the two narrowest terms first; delay mode fuses the two
    shallowest (narrowest on ties), which gives a minimum-depth tree.
    """
    mode = Mode(mode)
    names = names or [f"lc_{i}" for i in range(len(equations))]
    outputs = {}
    counter = start
    fused = []

    def depth(t):
        return graph.depth(term_ref(graph, t))

    for name, eq in zip(names, equations):
        terms = list(eq.terms)
        if not terms:
            raise UnresolvedTerm(f"{name} has no terms")
        for t in terms:
            term_ref(graph, t)
        while len(terms) > 1:
            if mode is Mode.DELAY:
                terms.sort(key=lambda t: (depth(t), _width(t), _sort_key(t)))
            else:
                terms.sort(key=lambda t: (_width(t), _sort_key(t)))
            a, b = terms[0], terms[1]
            last = len(terms) == 2
            label = name if last else f"exp_{counter}"
            ref, sign = combine(graph, a, b, label)
            shift = min(a.shift, b.shift)
            value = graph.value(ref)
            base = value >> shift
            assert base << shift == value
            t = Term(EXP, label, base, shift, sign)
            if not last:
                counter += 1
                fused.append(label)
            terms = [t] + terms[2:]
        final = terms[0]
        assert final.sign > 0, f"{name} assembles to a negative value"
        outputs[name] = term_ref(graph, final)
    return outputs, fused
