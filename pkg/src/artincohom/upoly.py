"""Dense univariate polynomials over Q.

A polynomial is a list of coefficients, lowest degree first, with no trailing
zeros; the zero polynomial is the empty list.  Coefficients are ``int`` when
integral and ``Fraction`` otherwise, which keeps the common integer case fast.
All functions return fresh lists and never mutate their arguments.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Coeff = "int | Fraction"


def norm_coeff(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def deg(p: Sequence) -> int:
    return len(p) - 1


def add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = norm_coeff(out[i] + c)
    return trim(out)


def sub(a: Sequence, b: Sequence) -> list:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = norm_coeff(out[i] - c)
    return trim(out)


def neg(a: Sequence) -> list:
    return [-c for c in a]


def scale(a: Sequence, c) -> list:
    if not c:
        return []
    return [norm_coeff(x * c) for x in a]


def shift(a: Sequence, k: int) -> list:
    """Multiply by x**k, k >= 0."""
    if not a:
        return []
    return [0] * k + list(a)


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim([norm_coeff(c) for c in out])


def divmod_(a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(r) - 1 < db:
        return [], trim(r)
    qt = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if not c:
            continue
        c = norm_coeff(Fraction(c, lc) if type(c) is int and type(lc) is int else c / lc)
        qt[k] = c
        for j, y in enumerate(b):
            r[k + j] -= c * y
        r[k + db] = 0
    r = trim([norm_coeff(x) for x in r[:db]])
    return trim(qt), r


def exact_div(a: Sequence, b: Sequence) -> list | None:
    """Return a / b, or None when b does not divide a."""
    qt, r = divmod_(a, b)
    return None if r else qt


def monic(a: Sequence) -> list:
    if not a:
        return []
    lc = a[-1]
    if lc == 1:
        return list(a)
    return [norm_coeff(Fraction(c) / lc) for c in a]


def content(a: Sequence) -> Fraction:
    """Positive rational c with a / c integral and primitive."""
    if not a:
        return Fraction(1)
    num = 0
    den = 1
    for c in a:
        c = Fraction(c)
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den)


def primitive(a: Sequence) -> list:
    """Integral, content-free associate of ``a`` with positive leading coefficient."""
    if not a:
        return []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return [norm_coeff(Fraction(x) / c) for x in a]


def gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = list(a), list(b)
    while b:
        _, r = divmod_(a, b)
        a, b = b, primitive(r)
    return monic(a)


def evaluate(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def power(a: Sequence, e: int) -> list:
    out = [1]
    base = list(a)
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def x_valuation(a: Sequence) -> int:
    """Largest k with x**k dividing a (a nonzero)."""
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    return k


def strip_x(a: Sequence) -> list:
    """Remove the largest power of x dividing a (x is a unit in Q[x, 1/x])."""
    return list(a[x_valuation(a):])
