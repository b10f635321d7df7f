"""A-operation primitives on odd fundamentals.

An A-operation combines two odd values ``u`` and ``v`` into the odd part of
``|u*2**a +/- v*2**b|``.  Shifts are bounded by ``max_shift`` and results by
``cap``.
"""
from __future__ import annotations


def v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def odd(n: int) -> int:
    return n >> v2(n)


def successors(u: int, v: int, max_shift: int, cap: int) -> set:
    s = u + v
    out = {s >> ((s & -s).bit_length() - 1)}
    if u != v:
        d = abs(u - v)
        out.add(d >> ((d & -d).bit_length() - 1))
    for a in range(1, max_shift + 1):
        ua = u << a
        va = v << a
        if ua - v > cap and va - u > cap:
            break
        out.update((ua + v, abs(ua - v), va + u, abs(va - u)))
    out.discard(0)
    return {w for w in out if w <= cap}


def inverse(t: int, r: int, max_shift: int, cap: int) -> set:
    """All odd ``w <= cap`` such that ``t`` is an A-operation result of ``(w, r)``."""
    out = set()
    d = t - r
    if d > 0 and v2(d) <= max_shift:
        out.add(d >> v2(d))  # t = (w << a) + r
    d = t + r
    if v2(d) <= max_shift:
        out.add(d >> v2(d))  # t = (w << a) - r
    d = r - t
    if d > 0 and v2(d) <= max_shift:
        out.add(d >> v2(d))  # t = r - (w << a)
    for a in range(1, max_shift + 1):
        ra = r << a
        if ra - t > cap:
            break
        if t > ra:
            out.add(t - ra)  # t = w + (r << a)
        out.add(ra + t)  # t = w - (r << a)
        if ra > t:
            out.add(ra - t)  # t = (r << a) - w
    # t = odd(w + r) or odd(|w - r|) with both shifts zero
    k = 1
    while (t << k) - r <= cap:
        tk = t << k
        if tk > r:
            out.add(tk - r)
        out.add(r + tk)
        if r > tk:
            out.add(r - tk)
        k += 1
    return {w for w in out if 0 < w <= cap}


def self_inverse(t: int, max_shift: int) -> set:
    """Odd ``w`` with ``t`` in A(w, w), i.e. ``t = w * (2**a +/- 1)``."""
    out = set()
    for a in range(1, max_shift + 1):
        for m in ((1 << a) - 1, (1 << a) + 1):
            if m <= t and t % m == 0:
                out.add(t // m)
    return out


def recipe(t: int, u: int, v: int, max_shift: int):
    """Find ``(op, ls, rs)`` so that ``odd(u << ls op v << rs) == t``.

    ``op`` is ``"add"`` or ``"sub"``; for ``"sub"`` the difference is
    positive.  Operands may be swapped, in which case the tuple is
    ``(op, ls, rs, True)``.  Returns None when ``t`` is not in A(u, v).
    """
    for swap, (a, b) in ((False, (u, v)), (True, (v, u))):
        for sa in range(0, max_shift + 1):
            for sb in ((0,) if sa else range(0, max_shift + 1)):
                x, y = a << sa, b << sb
                s = x + y
                if odd(s) == t:
                    return ("add", sa, sb, swap)
                if x > y and odd(x - y) == t:
                    return ("sub", sa, sb, swap)
    return None
