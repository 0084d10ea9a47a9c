"""Exact Laurent polynomials in two variables q, t over Q.

``LaurentPoly`` is an immutable value type backed by a dict
``(e_q, e_t) -> coefficient``.  Coefficients are Python ints whenever they are
integral and ``Fraction`` otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from . import upoly
from .errors import BadArg, BadSpecialization, NotDivisible

_norm = upoly.norm_coeff


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[key] = _norm(Fraction(c) if isinstance(c, str) else c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors --------------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c=1, eq: int = 0, et: int = 0) -> "LaurentPoly":
        return cls({(eq, et): c})

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable, offset: int = 0, et: int = 0) -> "LaurentPoly":
        return cls({(offset + i, et): c for i, c in enumerate(coeffs) if c})

    # basic queries -------------------------------------------------------
    def items(self):
        """Terms in canonical order: by q-exponent, then t-exponent."""
        return sorted(self._terms.items())

    def coeff(self, eq: int, et: int = 0):
        return self._terms.get((eq, et), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_t_free(self) -> bool:
        return all(b == 0 for _, b in self._terms)

    def q_range(self) -> tuple[int, int]:
        qs = [a for a, _ in self._terms]
        return min(qs), max(qs)

    def t_range(self) -> tuple[int, int]:
        ts = [b for _, b in self._terms]
        return min(ts), max(ts)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for (bq, bt), bc in b.items():
            for (aq, at), ac in a.items():
                k = (aq + bq, at + bt)
                out[k] = get(k, 0) + ac * bc
        return LaurentPoly._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise BadArg("negative power of a non-monomial")
            ((a, b), c), = self._terms.items()
            return LaurentPoly({(a * e, b * e): Fraction(1) / Fraction(c) ** (-e)})
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c) -> "LaurentPoly":
        if not c:
            return ZERO
        return LaurentPoly._raw({k: _norm(v * c) for k, v in self._terms.items()})

    def shift(self, dq: int = 0, dt: int = 0) -> "LaurentPoly":
        """Multiply by the unit monomial q**dq * t**dt."""
        return LaurentPoly._raw({(a + dq, b + dt): c for (a, b), c in self._terms.items()})

    # normal forms --------------------------------------------------------
    def unit_normal(self, monic: bool = False) -> "LaurentPoly":
        """Associate with lowest exponents 0 and positive (or unit) leading coefficient.

        The leading term is the last one in canonical order.
        """
        if not self._terms:
            return self
        mq = min(a for a, _ in self._terms)
        mt = min(b for _, b in self._terms)
        lead = self._terms[max(self._terms)]
        f = Fraction(1) / Fraction(lead) if monic else (1 if lead > 0 else -1)
        return LaurentPoly._raw({(a - mq, b - mt): _norm(c * f) for (a, b), c in self._terms.items()})

    def by_t(self) -> dict[int, list]:
        """Map t-exponent to a dense q-coefficient list (q-exponents must be >= 0)."""
        out: dict[int, list] = {}
        for (a, b), c in self._terms.items():
            row = out.setdefault(b, [])
            if len(row) <= a:
                row.extend([0] * (a + 1 - len(row)))
            row[a] = c
        return out

    @classmethod
    def from_by_t(cls, rows: Mapping[int, list]) -> "LaurentPoly":
        return cls._raw({(a, b): c for b, row in rows.items() for a, c in enumerate(row) if c})

    def to_upoly(self) -> tuple[int, list]:
        """Return (offset, dense coefficients) for a t-free Laurent polynomial."""
        if not self.is_t_free():
            raise BadArg("polynomial depends on t")
        if not self._terms:
            return 0, []
        lo = min(a for a, _ in self._terms)
        hi = max(a for a, _ in self._terms)
        out = [0] * (hi - lo + 1)
        for (a, _), c in self._terms.items():
            out[a - lo] = c
        return lo, out

    # substitutions -------------------------------------------------------
    def substitute(self, q: "LaurentPoly | None" = None, t: "LaurentPoly | None" = None) -> "LaurentPoly":
        """Ring substitution; negative exponents require monomial images."""
        qv = self._coerce(q) if q is not None else Q
        tv = self._coerce(t) if t is not None else T
        cache: dict = {}

        def pw(base, key, e):
            k = (key, e)
            if k not in cache:
                cache[k] = base ** e
            return cache[k]

        out = ZERO
        for (a, b), c in self._terms.items():
            out = out + pw(qv, "q", a) * pw(tv, "t", b) * c
        return out

    def evaluate(self, q, t=0):
        """Evaluate at rational (or any field-like) values."""
        acc = 0
        for (a, b), c in self._terms.items():
            if (a < 0 and not q) or (b < 0 and not t):
                raise BadSpecialization("negative exponent at a zero value")
            qa = Fraction(q) ** a if a < 0 else q ** a
            tb = Fraction(t) ** b if b < 0 else t ** b
            acc = acc + c * qa * tb
        return _norm(Fraction(acc)) if isinstance(acc, (int, Fraction)) else acc

    # division ------------------------------------------------------------
    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Q[q^+-1, t^+-1]; raises NotDivisible otherwise.

        Both operands are first normalised by unit monomials; the division is
        then carried out in Q[q][t] with t as the outer variable.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("exact_div by zero")
        if self.is_zero():
            return ZERO
        aq, at = min(a for a, _ in self._terms), min(b for _, b in self._terms)
        bq, bt = min(a for a, _ in other._terms), min(b for _, b in other._terms)
        rows = self.shift(-aq, -at).by_t()
        div = other.shift(-bq, -bt).by_t()
        db = max(div)
        lc = div[db]
        quot: dict[int, list] = {}
        while rows:
            top = max(rows)
            if top < db:
                break
            c = upoly.exact_div(rows[top], lc)
            if c is None:
                break
            k = top - db
            quot[k] = c
            for e, row in div.items():
                new = upoly.sub(rows.get(e + k, []), upoly.mul(c, row))
                if new:
                    rows[e + k] = new
                else:
                    rows.pop(e + k, None)
        if rows:
            rem = LaurentPoly.from_by_t(rows).shift(aq, at)
            raise NotDivisible(f"{other} does not divide {self}", remainder=rem)
        return LaurentPoly.from_by_t(quot).shift(aq - bq, at - bt)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    # text ----------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*q^{a}*t^{b}" for (a, b), c in self.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def pretty(self) -> str:
        """Compact human-readable rendering (not the canonical form)."""
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.items():
            mono = "*".join(
                s for s in (
                    "" if a == 0 else ("q" if a == 1 else f"q^{a}"),
                    "" if b == 0 else ("t" if b == 1 else f"t^{b}"),
                ) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


_TERM = re.compile(
    r"^(?P<c>[+-]?\d+(?:/\d+)?)?\*?(?:q\^?(?P<q>[+-]?\d+)?)?\*?(?:t\^?(?P<t>[+-]?\d+)?)?$"
)


def parse(text: str) -> LaurentPoly:
    """Parse the canonical string form (also tolerates omitted unit parts)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    s = re.sub(r"(?<=[\dqt])-", "+-", s)
    terms: dict = {}
    for raw in s.split("+"):
        if not raw:
            continue
        sign = 1
        if raw.startswith("-") and not re.match(r"^-\d", raw):
            sign, raw = -1, raw[1:]
        m = _TERM.match(raw)
        if not m or raw in ("*",):
            raise BadArg(f"cannot parse term {raw!r}")
        c = Fraction(m.group("c")) if m.group("c") else Fraction(1)
        eq = 0
        if "q" in raw:
            eq = int(m.group("q")) if m.group("q") else 1
        et = 0
        if "t" in raw:
            et = int(m.group("t")) if m.group("t") else 1
        key = (eq, et)
        terms[key] = terms.get(key, 0) + sign * c
    return LaurentPoly(terms)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1, 1, 0)
T = LaurentPoly.monomial(1, 0, 1)


def one_plus_tq(i: int) -> LaurentPoly:
    """The binomial 1 + t q^i."""
    return LaurentPoly({(0, 0): 1, (i, 1): 1})


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.exact_div(b)
