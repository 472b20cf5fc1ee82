"""Pure-Python arithmetic kernel.

A scalar is a pair ``(nums, den)``: ``nums`` a tuple of integers holding
power-basis coordinates, ``den`` a positive integer, normalized so the gcd
of all coordinates together with ``den`` is 1.  Products are reduced with
precomputed rows: ``red[j]`` is the fully reduced coordinate vector of the
basis power ``d + j`` where ``d = len(nums)``.
"""

from __future__ import annotations

from math import gcd

__all__ = [
    "BACKEND",
    "add",
    "is_zero",
    "mul",
    "neg",
    "norm_pair",
    "rat_mul",
    "sub",
    "submul",
]

BACKEND = "pure"


def norm_pair(nums, den):
    """Canonical form: positive denominator, content coprime to it."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        den = -den
        nums = tuple(-c for c in nums)
    g = den
    for c in nums:
        if g == 1:
            return nums, den
        g = gcd(g, c)
    if g > 1:
        den //= g
        nums = tuple(c // g for c in nums)
    return nums, den


def is_zero(a):
    for c in a[0]:
        if c:
            return False
    return True


def neg(a):
    nums, den = a
    return tuple(-c for c in nums), den


def add(a, b):
    an, ad = a
    bn, bd = b
    if ad == bd:
        if ad == 1:
            return tuple(x + y for x, y in zip(an, bn)), 1
        return norm_pair(tuple(x + y for x, y in zip(an, bn)), ad)
    return norm_pair(tuple(x * bd + y * ad for x, y in zip(an, bn)), ad * bd)


def sub(a, b):
    an, ad = a
    bn, bd = b
    if ad == bd:
        if ad == 1:
            return tuple(x - y for x, y in zip(an, bn)), 1
        return norm_pair(tuple(x - y for x, y in zip(an, bn)), ad)
    return norm_pair(tuple(x * bd - y * ad for x, y in zip(an, bn)), ad * bd)


def rat_mul(p, q, a):
    """Multiply by the rational number p/q."""
    nums, den = a
    if p == 0:
        return (0,) * len(nums), 1
    return norm_pair(tuple(p * c for c in nums), den * q)


def mul(a, b, red):
    an, ad = a
    bn, bd = b
    d = len(an)
    prod = [0] * (2 * d - 1)
    for i in range(d):
        x = an[i]
        if x:
            for j in range(d):
                y = bn[j]
                if y:
                    prod[i + j] += x * y
    for j in range(2 * d - 2, d - 1, -1):
        c = prod[j]
        if c:
            row = red[j - d]
            for k in range(d):
                r = row[k]
                if r:
                    prod[k] += c * r
    return norm_pair(tuple(prod[:d]), ad * bd)


def submul(a, f, b, red):
    """Return a - f*b in one step (the inner operation of row elimination)."""
    return sub(a, mul(f, b, red))
