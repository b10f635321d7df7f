"""Split large constants into p-bit coefficients and all-ones sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidP, ZeroConstant
from .numeric import LargeConstant


class Strategy(str, Enum):
    STRICT = "strict"
    COMMON_DIGIT = "common-digit"


@dataclass(frozen=True)
class PartitionConfig:
    p: int = 16
    strategy: Strategy = Strategy.STRICT

    def __post_init__(self):
        check_p(self.p)
        object.__setattr__(self, "strategy", Strategy(self.strategy))


def check_p(p):
    if not isinstance(p, int) or p % 4 or not 4 <= p <= 28:
        raise InvalidP(f"partition width must be a multiple of 4 in [4, 28], got {p!r}")


COEF, SEQ, EXP = "c", "seqf", "exp"


@dataclass(frozen=True)
class Term:
    kind: str  # COEF, SEQ or EXP
    key: object  # coefficient value, run length r, or subexpression name
    value: int  # interpreted value of the unshifted term
    shift: int = 0
    sign: int = 1

    @classmethod
    def coefficient(cls, value, shift, sign=1):
        return cls(COEF, value, value, shift, sign)

    @classmethod
    def sequence(cls, r, shift, sign=1):
        return cls(SEQ, r, (1 << r) - 1, shift, sign)

    @property
    def ident(self):
        return (self.kind, self.key)

    @property
    def name(self):
        if self.kind == COEF:
            return f"c{self.key}"
        if self.kind == SEQ:
            return f"seqf_{self.key}"
        return str(self.key)

    def contribution(self) -> int:
        return self.sign * (self.value << self.shift)

    def __str__(self):
        s = "-" if self.sign < 0 else "+"
        return f"{s}{self.name}<<{self.shift}" if self.shift else f"{s}{self.name}"


@dataclass
class LinearEquation:
    target: LargeConstant
    terms: list

    def total(self) -> int:
        return sum(t.contribution() for t in self.terms)

    def __str__(self):
        return " ".join(str(t) for t in self.terms)


@dataclass
class PartitionResult:
    coefficients: tuple
    sequences: tuple
    equations: list
    extracted: list = field(default_factory=list)  # common-digit extraction order


def _chunks(value, p):
    mask = (1 << p) - 1
    n = -(-value.bit_length() // p)
    return [(value >> (i * p)) & mask for i in range(n)]


def _strict_terms(value, p):
    mask = (1 << p) - 1
    chunks = _chunks(value, p)
    terms = []
    i = 0
    while i < len(chunks):
        c = chunks[i]
        if c == mask:
            j = i
            while j < len(chunks) and chunks[j] == mask:
                j += 1
            terms.append(Term.sequence((j - i) * p, i * p))
            i = j
            continue
        if c:
            terms.append(Term.coefficient(c, i * p))
        i += 1
    return terms


def _collect(equations, extracted=()):
    coefs = sorted({t.key for e in equations for t in e.terms if t.kind == COEF})
    seqs = sorted({t.key for e in equations for t in e.terms if t.kind == SEQ})
    return PartitionResult(tuple(coefs), tuple(seqs), equations, list(extracted))


def _constants(constants):
    out = []
    for c in constants:
        if isinstance(c, LargeConstant):
            out.append(c)
        else:
            out.append(LargeConstant.from_int(int(c)))
    if any(c.value <= 0 for c in out):
        raise ZeroConstant("constants must be positive")
    return out


def strict_partition(constants, cfg: PartitionConfig) -> PartitionResult:
    check_p(cfg.p)
    eqs = [LinearEquation(c, _strict_terms(c.value, cfg.p)) for c in _constants(constants)]
    return _collect(eqs)


def _free_windows(value, used, ndigits, p):
    """Window value -> non-overlapping free offsets, scanned from the LSB."""
    mask = (1 << p) - 1
    found = {}
    for o in range(0, ndigits * 4 - p + 1, 4):
        if (used >> o) & mask:
            continue
        w = (value >> o) & mask
        if w in (0, mask):
            continue
        offs = found.setdefault(w, [])
        if not offs or o >= offs[-1] + p:
            offs.append(o)
    return found


def common_digit_partition(constants, cfg: PartitionConfig) -> PartitionResult:
    """Extract repeated p-bit hex-aligned windows first, then partition the rest strictly.

    Occurrences are counted across all constants.  All-zero and all-ones
    windows are left to the run rules of the strict pass.
    """
    check_p(cfg.p)
    p = cfg.p
    mask = (1 << p) - 1
    consts = _constants(constants)
    used = [0] * len(consts)
    ndig = [-(-c.value.bit_length() // 4) for c in consts]
    picked = [[] for _ in consts]
    order = []
    while True:
        windows = [_free_windows(c.value, used[k], ndig[k], p) for k, c in enumerate(consts)]
        counts = {}
        for found in windows:
            for w, offs in found.items():
                counts[w] = counts.get(w, 0) + len(offs)
        best = max(counts, key=lambda w: (counts[w], w), default=None)
        if best is None or counts[best] < 2:
            break
        order.append(best)
        for k, found in enumerate(windows):
            for o in found.get(best, ()):
                used[k] |= mask << o
                picked[k].append(Term.coefficient(best, o))
    eqs = []
    for k, c in enumerate(consts):
        residual = c.value & ~used[k]
        terms = picked[k] + (_strict_terms(residual, p) if residual else [])
        terms.sort(key=lambda t: t.shift)
        eqs.append(LinearEquation(c, terms))
    return _collect(eqs, order)


def partition(constants, cfg: PartitionConfig) -> PartitionResult:
    if cfg.strategy is Strategy.COMMON_DIGIT:
        return common_digit_partition(constants, cfg)
    return strict_partition(constants, cfg)


def validate_partition(result: PartitionResult) -> bool:
    for eq in result.equations:
        if eq.total() != eq.target.value:
            return False
        for t in eq.terms:
            if t.kind == COEF and t.key not in result.coefficients:
                return False
            if t.kind == SEQ and t.key not in result.sequences:
                return False
    return True
