"""Large constants, CSD recoding and adder-step lower bounds."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EmptyInput, InvalidDigit, ZeroConstant

_HEX = re.compile(r"[0-9a-fA-F]")


@dataclass(frozen=True)
class LargeConstant:
    value: int
    bit_width: int
    source_hex: str

    @classmethod
    def from_int(cls, value: int) -> "LargeConstant":
        if value <= 0:
            raise ZeroConstant("constant must be positive")
        return cls(value, value.bit_length(), format(value, "x"))

    def __int__(self):
        return self.value


def parse_hex(text: str) -> LargeConstant:
    """Parse a (optionally ``0x``-prefixed) hexadecimal constant."""
    s = text.strip()
    offset = 0
    if s[:2] in ("0x", "0X"):
        s = s[2:]
        offset = 2
    if not s:
        raise EmptyInput("empty hexadecimal constant")
    for i, ch in enumerate(s):
        if not _HEX.fullmatch(ch):
            raise InvalidDigit(i + offset, ch)
    value = int(s, 16)
    if value == 0:
        raise ZeroConstant("constant is zero")
    return LargeConstant.from_int(value)


@dataclass(frozen=True)
class CsdForm:
    digits: tuple  # least-significant first, entries in {-1, 0, 1}

    @property
    def nz(self) -> int:
        return sum(1 for d in self.digits if d)

    def value(self) -> int:
        return sum(d << i for i, d in enumerate(self.digits) if d)

    def nonzeros(self):
        """(position, digit) pairs, least-significant first."""
        return [(i, d) for i, d in enumerate(self.digits) if d]


def to_csd(c: int) -> CsdForm:
    if c <= 0:
        raise ZeroConstant("CSD recoding needs a positive integer")
    digits = []
    while c:
        if c & 1:
            d = 2 - (c & 3)  # +1 when c = 1 mod 4, -1 when c = 3 mod 4
            c -= d
        else:
            d = 0
        digits.append(d)
        c >>= 1
    return CsdForm(tuple(digits))


def csd_nz(c: int) -> int:
    """Nonzero CSD digit count; 0 for c == 0, sign ignored."""
    c = abs(c)
    half = c >> 1
    return bin(half ^ (c + half)).count("1")


def odd_part(c: int) -> int:
    return c >> ((c & -c).bit_length() - 1) if c else 0


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def min_adder_steps(c: int) -> int:
    if c <= 0:
        raise ZeroConstant("adder steps undefined for non-positive constants")
    return _ceil_log2(csd_nz(c))


def min_adder_steps_set(constants) -> int:
    return max((min_adder_steps(int(c)) for c in constants), default=0)
