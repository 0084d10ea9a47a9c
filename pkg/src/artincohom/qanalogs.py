"""Cyclotomic polynomials, q-analogs and (q,t)-analogs.

Besides the expanded ``LaurentPoly`` values, every product here also has a
factored form: a ``Counter`` over irreducible atoms ``("phi", d)`` for the
cyclotomic polynomial in q and ``("tq", i)`` for the binomial ``1 + t q^i``.
Factored forms make exact division of Poincare series a multiset difference.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from . import upoly
from .errors import BadArg, InternalInconsistency, NotDivisible
from .laurent import ONE, LaurentPoly, one_plus_tq


def divisors(m: int) -> list[int]:
    return [e for e in range(1, m + 1) if m % e == 0]


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple:
    num = [-1] + [0] * (d - 1) + [1]
    for e in divisors(d)[:-1]:
        num = upoly.exact_div(num, list(_cyclotomic_coeffs(e)))
    return tuple(num)


def cyclotomic_coeffs(d: int) -> list[int]:
    if d < 1:
        raise BadArg("cyclotomic index must be positive")
    return list(_cyclotomic_coeffs(d))


def cyclotomic(d: int) -> LaurentPoly:
    """The d-th cyclotomic polynomial in q."""
    return LaurentPoly.from_q_coeffs(cyclotomic_coeffs(d))


# ---------------------------------------------------------------- factored forms

def atom_poly(atom: tuple) -> LaurentPoly:
    kind, k = atom
    if kind == "phi":
        return cyclotomic(k)
    if kind == "tq":
        return one_plus_tq(k)
    raise BadArg(f"unknown atom {atom!r}")


def expand(factors: Counter) -> LaurentPoly:
    out = ONE
    for atom in sorted(factors):
        mult = factors[atom]
        if mult < 0:
            raise BadArg("cannot expand a factored form with negative multiplicity")
        for _ in range(mult):
            out = out * atom_poly(atom)
    return out


def factored_div(a: Counter, b: Counter) -> Counter:
    """Quotient of factored forms; raises NotDivisible when b does not divide a."""
    out = Counter(a)
    out.subtract(b)
    bad = {k: -v for k, v in out.items() if v < 0}
    if bad:
        raise NotDivisible(f"factored division leaves denominators {bad}")
    return +out


def lcm_factored(*forms: Counter) -> Counter:
    out: Counter = Counter()
    for f in forms:
        for atom, m in f.items():
            out[atom] = max(out[atom], m)
    return out


def q_int_factors(m: int) -> Counter:
    if m <= 0:
        raise BadArg("q-integer needs m >= 1")
    return Counter({("phi", e): 1 for e in divisors(m) if e > 1})


def q_factorial_factors(m: int) -> Counter:
    if m <= 0:
        raise BadArg("q-factorial needs m >= 1")
    out: Counter = Counter()
    for j in range(1, m + 1):
        out += q_int_factors(j)
    return out


def q_double_factorial_factors(m: int) -> Counter:
    if m <= 0:
        raise BadArg("q-double factorial needs m >= 1")
    out: Counter = Counter()
    for j in range(m, 0, -2):
        out += q_int_factors(j)
    return out


def qt_even_factors(m: int) -> Counter:
    """[2m]_{q,t} = [m]_q (1 + t q^(m-1))."""
    if m <= 0:
        raise BadArg("(q,t)-even number needs m >= 1")
    out = q_int_factors(m)
    out[("tq", m - 1)] += 1
    return out


def qt_double_factorial_factors(m: int) -> Counter:
    if m <= 0:
        raise BadArg("(q,t)-double factorial needs m >= 1")
    out: Counter = Counter()
    for i in range(1, m + 1):
        out += qt_even_factors(i)
    return out


# ---------------------------------------------------------------- expanded forms

def q_int(m: int) -> LaurentPoly:
    if m <= 0:
        raise BadArg("q-integer needs m >= 1")
    return LaurentPoly.from_q_coeffs([1] * m)


def q_factorial(m: int) -> LaurentPoly:
    return expand(q_factorial_factors(m))


def q_double_factorial(m: int) -> LaurentPoly:
    return expand(q_double_factorial_factors(m))


def qt_even(m: int) -> LaurentPoly:
    return expand(qt_even_factors(m))


def qt_double_factorial(m: int) -> LaurentPoly:
    return expand(qt_double_factorial_factors(m))


def q_binomial(m: int, i: int) -> LaurentPoly:
    """Gaussian binomial by exact division of q-factorials."""
    if not 0 <= i <= m:
        raise BadArg("q-binomial needs 0 <= i <= m")
    num = q_factorial(m) if m else ONE
    den = (q_factorial(i) if i else ONE) * (q_factorial(m - i) if m - i else ONE)
    try:
        return num.exact_div(den)
    except NotDivisible as exc:
        raise InternalInconsistency(f"q-binomial ({m} {i}) not polynomial") from exc


def qt_binomial_primed(m: int, i: int) -> LaurentPoly:
    """[2m]_{q,t}!! / ([2i]_{q,t}!! [m-i]_q!), computed by exact division."""
    if not 0 <= i <= m:
        raise BadArg("primed binomial needs 0 <= i <= m")
    num = qt_double_factorial(m) if m else ONE
    den = (qt_double_factorial(i) if i else ONE) * (q_factorial(m - i) if m - i else ONE)
    try:
        return num.exact_div(den)
    except NotDivisible as exc:
        raise InternalInconsistency(f"primed binomial ({m} {i}) not polynomial") from exc
