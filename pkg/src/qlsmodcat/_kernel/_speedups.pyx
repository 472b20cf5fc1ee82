# cython: language_level=3
"""Compiled arithmetic kernel; mirrors qlsmodcat._kernel.pure exactly.

Coefficients stay arbitrary-precision Python integers, so the speedup
comes from removing interpreter dispatch in the inner loops, not from
fixed-width arithmetic.
"""

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

BACKEND = "cython"


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


cdef list _raw_mul(tuple an, tuple bn, tuple red):
    cdef Py_ssize_t d = len(an)
    cdef Py_ssize_t i, j, k
    cdef list prod = [0] * (2 * d - 1)
    cdef object x, y, c, r
    cdef tuple row
    for i in range(d):
        x = an[i]
        if x:
            for j in range(d):
                y = bn[j]
                if y:
                    prod[i + j] = prod[i + j] + x * y
    for j in range(2 * d - 2, d - 1, -1):
        c = prod[j]
        if c:
            row = red[j - d]
            for k in range(d):
                r = row[k]
                if r:
                    prod[k] = prod[k] + c * r
    return prod


def mul(a, b, red):
    an, ad = a
    bn, bd = b
    cdef Py_ssize_t d = len(an)
    cdef list prod = _raw_mul(an, bn, red)
    return norm_pair(tuple(prod[:d]), ad * bd)


def submul(a, f, b, red):
    """Return a - f*b in one step (the inner operation of row elimination)."""
    an, ad = a
    fn, fd = f
    bn, bd = b
    cdef Py_ssize_t d = len(an)
    cdef Py_ssize_t k
    cdef list prod = _raw_mul(fn, bn, red)
    cdef object pd = fd * bd
    if ad == pd:
        return norm_pair(tuple(an[k] - prod[k] for k in range(d)), ad)
    return norm_pair(tuple(an[k] * pd - prod[k] * ad for k in range(d)), ad * pd)
