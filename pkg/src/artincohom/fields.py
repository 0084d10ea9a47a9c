"""Exact coefficient fields and evaluation points.

Two fields are supported: Q (elements are ``Fraction``) and the cyclotomic
field Q(zeta_d) (elements are tuples of ``Fraction`` giving the residue
mod phi_d).  A ``Point`` assigns q and t values of the form c * zeta^a with
rational c, which covers rational points, roots of unity and the support
points (zeta_d, -zeta_d^(-i)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import upoly
from .errors import BadArg, BadSpecialization
from .laurent import LaurentPoly
from .qanalogs import cyclotomic_coeffs


class RationalField:
    d = 1
    degree = 1
    zero = Fraction(0)
    one = Fraction(1)
    name = "Q"

    @staticmethod
    def from_exponents(terms: dict) -> Fraction:
        return Fraction(sum(terms.values(), Fraction(0)))

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    @staticmethod
    def is_zero(a) -> bool:
        return not a

    @staticmethod
    def render(a) -> str:
        return str(a)


class CyclotomicField:
    """Q(zeta_d) as Q[x] / phi_d(x)."""

    def __init__(self, d: int):
        if d < 2:
            raise BadArg("use RationalField for d = 1")
        self.d = d
        self.phi = [Fraction(c) for c in cyclotomic_coeffs(d)]
        self.degree = len(self.phi) - 1
        self.name = f"Q(zeta_{d})"
        self.zero = (Fraction(0),) * self.degree
        self.one = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)
        # x^j reduced mod phi_d for j < d (x^d = 1 in the field)
        self._powers = []
        for j in range(d):
            _, r = upoly.divmod_([0] * j + [1], self.phi)
            self._powers.append(self._pad(r))

    def _pad(self, coeffs) -> tuple:
        out = [Fraction(c) for c in coeffs[: self.degree]]
        out += [Fraction(0)] * (self.degree - len(out))
        return tuple(out)

    def from_exponents(self, terms: dict) -> tuple:
        """Element sum c * zeta^e from ``{e: c}`` (e taken mod d)."""
        acc = [Fraction(0)] * self.degree
        for e, c in terms.items():
            if not c:
                continue
            for k, v in enumerate(self._powers[e % self.d]):
                if v:
                    acc[k] += c * v
        return tuple(acc)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod: dict = {}
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = prod.get(i + j, 0) + x * y
        return self.from_exponents(prod)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: find u with u * a = 1 mod phi
        r0, r1 = list(self.phi), upoly.trim(list(a))
        s0, s1 = [], [Fraction(1)]
        while upoly.deg(r1) > 0:
            qt, r = upoly.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly.sub(s0, upoly.mul(qt, s1))
        c = Fraction(r1[0])
        return self._pad(upoly.scale(s1, 1 / c))

    def is_zero(self, a) -> bool:
        return not any(a)

    def render(self, a) -> str:
        terms = [f"{c}*z^{k}" for k, c in enumerate(a) if c]
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def field_for(d: int):
    return RationalField() if d == 1 else CyclotomicField(d)


def _frac(x) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class Point:
    """q = cq * zeta_d^aq and t = ct * zeta_d^at (t may be absent for t-free complexes)."""

    d: int
    cq: Fraction
    aq: int
    ct: Fraction | None = None
    at: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise BadArg("root-of-unity order must be positive")
        if not self.cq or (self.ct is not None and not self.ct):
            raise BadSpecialization("q and t must map to units")
        object.__setattr__(self, "cq", _frac(self.cq))
        if self.ct is not None:
            object.__setattr__(self, "ct", _frac(self.ct))
        object.__setattr__(self, "aq", self.aq % self.d)
        object.__setattr__(self, "at", self.at % self.d)

    @property
    def field(self):
        return field_for(self.d)

    @classmethod
    def rational(cls, q, t=None) -> "Point":
        return cls(1, Fraction(q), 0, None if t is None else Fraction(t), 0)

    @classmethod
    def support(cls, d: int, i: int) -> "Point":
        """(zeta_d, -zeta_d^(-i)), the common zero of phi_d and 1 + t q^i."""
        return cls(d, Fraction(1), 1, Fraction(-1), -i)

    @classmethod
    def root(cls, d: int) -> "Point":
        """q = zeta_d for t-free complexes."""
        return cls(d, Fraction(1), 1)

    def _value(self, c, a) -> str:
        if self.d == 1:
            return str(c)
        z = "zeta" if a == 1 else f"zeta^{a}"
        if a == 0:
            return str(c)
        return {1: z, -1: f"-{z}"}.get(c, f"{c}*{z}")

    def label(self) -> str:
        field = "Q" if self.d == 1 else f"Q(zeta_{self.d})"
        parts = [f"q={self._value(self.cq, self.aq)}"]
        if self.ct is not None:
            parts.append(f"t={self._value(self.ct, self.at)}")
        return f"{field}: " + ", ".join(parts)

    def sort_key(self):
        return (self.d, self.aq, self.at, self.cq, self.ct if self.ct is not None else Fraction(0))

    def evaluate(self, p: LaurentPoly):
        """Field element p(q, t)."""
        F = self.field
        acc: dict = {}
        for (a, b), c in p._terms.items():
            if b and self.ct is None:
                raise BadSpecialization("polynomial depends on t but the point fixes only q")
            coef = Fraction(c) * self.cq ** a
            e = a * self.aq
            if b:
                coef *= self.ct ** b
                e += b * self.at
            key = e % self.d
            acc[key] = acc.get(key, 0) + coef
        return F.from_exponents(acc)

    def vanishes(self, p: LaurentPoly) -> bool:
        return self.field.is_zero(self.evaluate(p))


# ---------------------------------------------------------------- linear algebra

def rank(rows: list[list], F) -> int:
    """Rank by Gaussian elimination over F (rows are lists of field elements)."""
    mat = [list(r) for r in rows if any(not F.is_zero(x) for x in r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not F.is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][c])
        prow = [F.mul(x, inv) for x in mat[r]]
        mat[r] = prow
        for i in range(r + 1, len(mat)):
            f = mat[i][c]
            if F.is_zero(f):
                continue
            row = mat[i]
            mat[i] = [x if F.is_zero(y) else F.sub(x, F.mul(f, y)) for x, y in zip(row, prow)]
        r += 1
        if r == len(mat):
            break
    return r


def rank_sparse_q(entries: dict, nrows: int, ncols: int) -> int:
    """Rank over Q of a sparse matrix ``{(r, c): Fraction}`` via row dictionaries."""
    rows: dict[int, dict[int, Fraction]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = Fraction(v)
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows.values():
        row = dict(row)
        while row:
            c = min(row)
            if c not in pivots:
                inv = 1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)
