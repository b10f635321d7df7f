"""Multiplierless realization of small coefficient sets.

Four solvers build an :class:`AdderGraph` for a set of odd targets: digit
based recoding, a ready-set growing heuristic, an exact breadth-first
search, and a heuristic under an adder-step cap.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .aop import inverse, odd, recipe, self_inverse, successors, v2
from .errors import BudgetExceeded, InfeasibleDelay
from .graph import AdderGraph, Op, Ref
from .numeric import csd_nz, min_adder_steps_set, to_csd

DEFAULT_BUDGET = 5_000_000
AUTO_BUDGET = 20_000  # exact attempt of the "auto" solver before the heuristic takes over
AUTO_MAX_TARGETS = 6
SPLIT_SUBSET_MAX = 12  # digit count up to which the depth planner tries non-contiguous splits


@dataclass(frozen=True)
class McmProblem:
    targets: tuple
    max_width: int
    delay_bound: int | None = None

    @classmethod
    def of(cls, targets, delay_bound=None):
        ts = tuple(sorted({int(t) for t in targets}))
        assert all(t > 1 and t & 1 for t in ts), "targets must be odd and > 1"
        return cls(ts, max((t.bit_length() for t in ts), default=1), delay_bound)

    @property
    def max_shift(self):
        return self.max_width + 1

    @property
    def cap(self):
        return 1 << (self.max_width + 1)


def normalize(coefficients):
    """Reduce coefficients to odd fundamentals.

    Returns ``(problem, fixups)`` with ``fixups[c] = (fundamental, shift)``.
    """
    fixups = {}
    for c in coefficients:
        c = int(c)
        if c <= 0:
            raise ValueError("coefficients must be positive")
        s = v2(c)
        fixups[c] = (c >> s, s)
    return McmProblem.of(f for f, _ in fixups.values() if f != 1), fixups


def graph_targets(graph: AdderGraph, problem: McmProblem) -> dict:
    return {t: graph.find(t) for t in problem.targets}


# --- digit based recoding ---------------------------------------------------


def _binary_digits(c):
    return [(i, 1) for i in range(c.bit_length()) if (c >> i) & 1]


def dbr(problem: McmProblem, representation: str = "csd") -> AdderGraph:
    """Chain every target over its nonzero digits, most significant first.

    Chains are not shared between targets, so oper is the sum of nz - 1.
    """
    g = AdderGraph(dedup=False)
    for t in problem.targets:
        if representation == "binary":
            digits = _binary_digits(t)
        elif representation == "csd":
            digits = to_csd(t).nonzeros()
        else:
            raise ValueError(f"unknown representation {representation!r}")
        digits.sort(reverse=True)
        top, _ = digits[0]
        acc = g.input(top)
        for pos, d in digits[1:]:
            acc = g.add_node(Op.ADD if d > 0 else Op.SUB, acc, g.input(pos))
        g.relabel(acc, f"c{t}")
    return g


# --- graph construction from realized fundamentals ---------------------------


def _build(steps, max_shift, targets=()) -> AdderGraph:
    """``steps`` is an ordered list of ``(value, u, w)`` with u, w realized earlier."""
    g = AdderGraph()
    refs = {1: Ref(0)}
    for t, u, w in steps:
        rec = recipe(t, u, w, max_shift)
        assert rec is not None, f"{t} is not an A-operation of {u}, {w}"
        op, sa, sb, swap = rec
        a, b = (w, u) if swap else (u, w)
        g.add_node(op, refs[a].shifted(sa), refs[b].shifted(sb))
        refs[t] = g.find(t)
    for t in targets:
        g.relabel(refs[t], f"c{t}")
    return g


def order_by_depth(values, max_shift, cap, cache=None):
    """Realize a set of fundamentals shallowest first.

    Returns the ordered steps and the depth of each value.  ``cache`` maps
    operand pairs to their successor sets and may be shared across calls.
    """
    cache = {} if cache is None else cache
    realized = {1: 0}
    pending = set(values) - {1}
    steps = []
    while pending:
        best = None
        done = sorted(realized)
        for i, u in enumerate(done):
            for w in done[i:]:
                key = (u, w)
                succ = cache.get(key)
                if succ is None:
                    succ = cache[key] = successors(u, w, max_shift, cap)
                d = 1 + max(realized[u], realized[w])
                for v in pending:
                    if v in succ:
                        cand = (d, v, u, w)
                        if best is None or cand < best:
                            best = cand
        if best is None:
            raise ValueError(f"values {sorted(pending)} are not reachable")
        d, v, u, w = best
        realized[v] = d
        pending.discard(v)
        steps.append((v, u, w))
    return steps, realized


# --- exact breadth-first search ----------------------------------------------


class _ExactSearch:
    def __init__(self, problem: McmProblem, budget: int):
        self.targets = problem.targets
        self.S = problem.max_shift
        self.cap = problem.cap
        self.budget = budget
        self.explored = 0
        self.pairs = {}  # (u, w) -> successors, shared with order_by_depth
        self._inv = {}

    def inv(self, t, r):
        key = (t, r)
        out = self._inv.get(key)
        if out is None:
            out = self._inv[key] = inverse(t, r, self.S, self.cap) if r else self_inverse(t, self.S)
        return out

    def reachable(self, t, state):
        if not self.inv(t, 0).isdisjoint(state):
            return True
        return any(not self.inv(t, r).isdisjoint(state) for r in state)

    def closure(self, state):
        state = set(state)
        changed = True
        while changed:
            changed = False
            for t in self.targets:
                if t not in state and self.reachable(t, state):
                    state.add(t)
                    changed = True
        return frozenset(state)

    def remaining(self, state):
        return [t for t in self.targets if t not in state]

    def succ(self, state):
        vals = sorted(state)
        out = set()
        for i, u in enumerate(vals):
            for w in vals[i:]:
                got = self.pairs.get((u, w))
                if got is None:
                    got = self.pairs[(u, w)] = successors(u, w, self.S, self.cap)
                out |= got
        return out - state

    def tick(self):
        self.explored += 1
        if self.explored > self.budget:
            raise BudgetExceeded(self.explored)

    def finishers(self, state):
        """Completed states reachable by adding a single intermediate."""
        rem = self.remaining(state)
        useful = set()
        for t in rem:
            useful |= self.inv(t, 0)
            for r in state:
                useful |= self.inv(t, r)
        useful -= state
        if not useful:
            return []
        succ = self.succ(state)
        if len(rem) == 1:
            # every useful successor finishes the last target outright
            hits = sorted(useful & succ)
            self.explored += len(hits)
            return [frozenset(state | {s, rem[0]}) for s in hits]
        out = []
        for s in sorted(useful & succ):
            self.tick()
            ns = self.closure(state | {s})
            if not self.remaining(ns):
                out.append(ns)
        return out

    def run(self):
        root = self.closure({1})
        if not self.remaining(root):
            return root
        frontier = [root]
        seen = {root}
        while True:
            done = []
            for st in frontier:
                done.extend(self.finishers(st))
            if done:
                return done
            nxt = []
            for st in frontier:
                for s in sorted(self.succ(st)):
                    self.tick()
                    ns = self.closure(st | {s})
                    if ns not in seen:
                        seen.add(ns)
                        nxt.append(ns)
            frontier = nxt


def gb_exact_small(problem: McmProblem, budget: int = DEFAULT_BUDGET, max_bits: int = 16) -> AdderGraph:
    """Minimum-operation realization by breadth-first search over fundamental sets.

    Among minimum solutions the shallowest is returned.  Raises
    :class:`BudgetExceeded` once ``budget`` states have been explored.
    """
    if problem.max_width > max_bits:
        raise ValueError(f"exact search limited to {max_bits}-bit targets")
    if not problem.targets:
        return AdderGraph()
    search = _ExactSearch(problem, budget)
    found = search.run()
    if isinstance(found, frozenset):
        found = [found]
    best = None
    for st in found:
        steps, depth = order_by_depth(st, search.S, search.cap, search.pairs)
        key = (max(depth[t] for t in problem.targets), sorted(st))
        if best is None or key < best[0]:
            best = (key, steps)
    return _build(best[1], search.S, problem.targets)


# --- heuristics --------------------------------------------------------------


class _ReadySet:
    """Ready set R of realized fundamentals with depths and its successor map.

    Targets are registered with reverse indexes so that the successors which
    bring a target to distance one (``help``) or, through ``A(s, 2**a +/- 1)``,
    to distance two (``near``) are kept up to date as R grows.
    """

    def __init__(self, problem: McmProblem, max_depth=None):
        self.S = problem.max_shift
        self.cap = problem.cap
        self.max_depth = max_depth
        self.limit = None if max_depth is None else max_depth - 1
        self.depth = {1: 0}
        self.succ = {}  # value -> (depth, u, w)
        self._deepest = 0  # upper bound on depths stored in succ
        self.steps = []
        self.cand = {}  # target -> values w with t in A(w, r), r in R
        self.want = defaultdict(list)  # w -> targets
        self.help = {}  # target -> cand & succ
        self.near = {}  # target -> successors s with t in A(s, 2**a +/- 1)
        self.want_near = defaultdict(list)
        self.cheap = sorted({odd(w) for a in range(1, self.S + 1) for w in ((1 << a) - 1, (1 << a) + 1)} - {1})
        self._absorb(1)

    def _usable(self, r):
        return self.limit is None or self.depth[r] <= self.limit

    def _link(self, t, values, cand, want, hits):
        values = values.difference(cand)
        cand |= values
        for w in values:
            want[w].append(t)
        hits.update(self.succ.keys() & values)

    def register(self, t):
        cand, hits = set(), set()
        self.cand[t] = cand
        self.help[t] = hits
        self._link(t, self_inverse(t, self.S), cand, self.want, hits)
        for r in self.depth:
            if self._usable(r):
                self._link(t, inverse(t, r, self.S, self.cap), cand, self.want, hits)

    def register_near(self, t):
        if t in self.near:
            return
        cand, hits = set(), set()
        self.near[t] = hits
        for w in self.cheap:
            self._link(t, inverse(t, w, self.S, self.cap), cand, self.want_near, hits)

    def drop(self, t):
        # reverse indexes keep ``t``; lookups skip targets without a help set
        self.cand.pop(t, None)
        self.help.pop(t, None)
        self.near.pop(t, None)

    def _absorb(self, s):
        ds = self.depth[s]
        depth, succ, want, want_near = self.depth, self.succ, self.want, self.want_near
        help_, near = self.help, self.near
        top = self.max_depth
        for r, dr in list(depth.items()):
            d = 1 + max(ds, dr)
            if top is not None and d > top:
                continue
            ws = successors(s, r, self.S, self.cap).difference(depth)
            fresh = ws.difference(succ)
            if fresh:
                succ.update(dict.fromkeys(fresh, (d, s, r)))
                for w in want.keys() & fresh:
                    for t in want[w]:
                        if t in help_:
                            help_[t].add(w)
                for w in want_near.keys() & fresh:
                    for t in want_near[w]:
                        if t in near:
                            near[t].add(w)
            if d < self._deepest:
                for w in ws - fresh:
                    if d < succ[w][0]:
                        succ[w] = (d, s, r)
            elif fresh:
                self._deepest = d

    def add(self, v):
        d, u, w = self.succ.pop(v)
        self.depth[v] = d
        self.steps.append((v, u, w))
        for t in self.want.get(v, ()):
            if t in self.help:
                self.help[t].discard(v)
        for t in self.want_near.get(v, ()):
            if t in self.near:
                self.near[t].discard(v)
        if self._usable(v):
            for t, cand in self.cand.items():
                self._link(t, inverse(t, v, self.S, self.cap), cand, self.want, self.help[t])
        self._absorb(v)

    def _ok(self, w):
        return self.limit is None or self.succ[w][0] <= self.limit

    def helpers(self, t):
        """Successors that would put ``t`` at distance one."""
        return [w for w in self.help[t] if self._ok(w)]

    def near_helpers(self, t):
        """Successors that would put ``t`` at distance two via ``t = A(s, 2**a +/- 1)``."""
        self.register_near(t)
        return [w for w in self.near[t] if self._ok(w)]


def _grow(problem: McmProblem, max_depth=None):
    rs = _ReadySet(problem, max_depth)
    remaining = [t for t in problem.targets]
    for t in remaining:
        rs.register(t)
    while True:
        progress = True
        while progress:
            progress = False
            for t in list(remaining):
                if t in rs.succ:
                    rs.add(t)
                elif t not in rs.depth:
                    continue
                remaining.remove(t)
                rs.drop(t)
                progress = True
        if not remaining:
            return rs
        score = {}
        far = []
        for t in remaining:
            helpers = rs.helpers(t)
            for w in helpers:
                score[w] = score.get(w, 0) + 10
            if not helpers:
                far.append(t)
        for t in far:
            for w in rs.near_helpers(t):
                score[w] = score.get(w, 0) + 1
        if score:
            if max_depth is None:
                pick = min(score, key=lambda w: (-score[w], w))
            else:
                pick = min(score, key=lambda w: (-score[w], rs.succ[w][0], w))
            rs.add(pick)
            continue
        t = min(remaining, key=lambda t: (csd_nz(t), t))
        if max_depth is None:
            rs.add(_chain_step(rs, t))
        else:
            plan = _tree_plan(rs, t, max_depth)
            if plan is None:
                raise InfeasibleDelay(f"no realization of {t} within {max_depth} adder-steps")
            rs.add(plan)


def _chain_step(rs: _ReadySet, t: int) -> int:
    """Extend the closest ready value toward ``t`` by one CSD digit."""
    best = None
    for r in rs.depth:
        for k in range(0, rs.S + 1):
            rk = r << k
            if rk > rs.cap:
                break
            for sign in (1, -1):
                rem = t - sign * rk
                if rem == 0:
                    continue
                key = (csd_nz(rem), r, k, sign)
                if best is None or key < best[0]:
                    best = (key, rem, rk, sign)
    _, rem, rk, sign = best
    mag = abs(rem)
    pos, d = to_csd(mag).nonzeros()[-1]
    d = d if rem > 0 else -d
    s = odd(abs(sign * rk + d * (1 << pos)))
    if s not in rs.succ:
        # fall back to the top two digits of the remainder, always in A({1})
        digits = to_csd(mag).nonzeros()
        (p1, d1), (p0, d0) = digits[-1], digits[-2]
        s = odd((1 << p1) + d0 * d1 * (1 << p0))
    return s


def _splits(digits, half):
    """Ways to cut a digit list into two parts of at most ``half`` digits each.

    Contiguous cuts come first.  Short lists also try every subset holding the
    top digit, which gets around intermediate values already built too deep.
    """
    n = len(digits)
    seen = set()
    for i in range(max(1, n - half), min(n - 1, half) + 1):
        seen.add(tuple(range(i)))
        yield digits[:i], digits[i:]
    if n > SPLIT_SUBSET_MAX:
        return
    for k in range(max(1, n - half), min(n - 1, half) + 1):
        for rest in itertools.combinations(range(1, n), k - 1):
            idx = (0,) + rest
            if idx in seen:
                continue
            chosen = set(idx)
            yield [digits[j] for j in idx], [digits[j] for j in range(n) if j not in chosen]


def _tree_plan(rs: _ReadySet, t: int, budget: int):
    """Next value to add for a depth-bounded split of ``t``'s CSD digits."""
    memo = {}

    def plan(v, b):
        """Return a list of values to add (bottom-up), or None if infeasible."""
        v = odd(v)
        if v in rs.depth:
            return [] if rs.depth[v] <= b else None
        key = (v, b)
        if key in memo:
            return memo[key]
        memo[key] = None
        digits = sorted(to_csd(v).nonzeros(), reverse=True)
        if b <= 0 or len(digits) > (1 << b):
            return None
        best = None
        for hi_digits, lo_digits in _splits(digits, 1 << (b - 1)):
            hi = sum(d << p for p, d in hi_digits)
            lo = sum(d << p for p, d in lo_digits)
            a = plan(hi, b - 1)
            if a is None:
                continue
            c = plan(abs(lo), b - 1)
            if c is None:
                continue
            steps = a + [x for x in c if x not in a]
            if best is None or len(steps) < len(best):
                best = steps
        if best is not None:
            best = best + [v]
        memo[key] = best
        return best

    steps = plan(t, budget)
    if not steps:
        return None
    for v in steps:
        if v in rs.succ and v not in rs.depth:
            return v
    return None


def gb_heuristic(problem: McmProblem) -> AdderGraph:
    """Ready-set heuristic; never worse than CSD digit recoding."""
    if not problem.targets:
        return AdderGraph()
    rs = _grow(problem)
    g = _build(rs.steps, problem.max_shift, problem.targets)
    ref = dbr(problem, "csd")
    return ref if ref.oper < g.oper else g


def gb_delay_constrained(problem: McmProblem, max_steps: int) -> AdderGraph:
    """Ready-set heuristic where no node may be deeper than ``max_steps``."""
    if not problem.targets:
        return AdderGraph()
    mas = min_adder_steps_set(problem.targets)
    if max_steps < mas:
        raise InfeasibleDelay(f"adder-step bound {max_steps} below minimum {mas}")
    rs = _grow(problem, max_steps)
    g = _build(rs.steps, problem.max_shift, problem.targets)
    assert max(n.depth for n in g.nodes) <= max_steps
    return g


SOLVERS = ("heuristic", "exact", "dbr-bin", "dbr-csd", "auto")


def solve(problem: McmProblem, solver: str = "heuristic", delay_bound=None, budget=None) -> AdderGraph:
    """Dispatch by solver name; ``delay_bound`` switches to the depth-capped heuristic."""
    if delay_bound is not None:
        return gb_delay_constrained(problem, delay_bound)
    if solver == "heuristic":
        return gb_heuristic(problem)
    if solver == "exact":
        return gb_exact_small(problem, budget or DEFAULT_BUDGET)
    if solver == "dbr-bin":
        return dbr(problem, "binary")
    if solver == "dbr-csd":
        return dbr(problem, "csd")
    if solver == "auto":
        if problem.max_width <= 16 and len(problem.targets) <= AUTO_MAX_TARGETS:
            try:
                return gb_exact_small(problem, budget or AUTO_BUDGET)
            except BudgetExceeded:
                pass
        return gb_heuristic(problem)
    raise ValueError(f"unknown solver {solver!r}")
