"""Cohomology of cochain complexes after specialization.

Two routes:

* field route: evaluate every entry at a ``Point`` and take ranks over Q or
  Q(zeta_d);
* PID route: substitute t -> eps * q^k (or a rational constant, or nothing
  for t-free complexes), clear the common unit q^m and run a Smith normal
  form over Q[q].  Invariant factors are reported unit-normalized and
  decomposed into cyclotomic factors where possible.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly
from .errors import BadArg, BadSpecialization, InternalInconsistency
from .fields import Point, rank, rank_sparse_q
from .laurent import LaurentPoly
from .modules import FREE, CyclicModuleSpec, ModuleExpr, phimod
from .qanalogs import cyclotomic_coeffs
from .salvetti import CochainComplex


# ---------------------------------------------------------------- field route

@dataclass
class SpecializedComplex:
    dims: list[int]
    matrices: list[dict]
    point: Point

    @property
    def field(self):
        return self.point.field

    def check_d_squared(self) -> None:
        F = self.field
        for k in range(len(self.matrices) - 1):
            acc: dict = {}
            rows: dict = {}
            for (r, c), v in self.matrices[k + 1].items():
                rows.setdefault(c, []).append((r, v))
            for (mid, src), v in self.matrices[k].items():
                for tgt, w in rows.get(mid, []):
                    key = (tgt, src)
                    acc[key] = F.add(acc.get(key, F.zero), F.mul(w, v))
            if any(not F.is_zero(x) for x in acc.values()):
                raise InternalInconsistency("specialized d o d is not zero")


def specialize(cx: CochainComplex, point: Point) -> SpecializedComplex:
    """Entry-wise evaluation homomorphism R -> K at ``point``."""
    F = point.field
    mats = []
    for mat in cx.d:
        out = {}
        for key, v in mat.items():
            x = point.evaluate(v)
            if not F.is_zero(x):
                out[key] = x
        mats.append(out)
    return SpecializedComplex(cx.dims(), mats, point)


def ranks(sc: SpecializedComplex) -> list[int]:
    F = sc.field
    out = []
    for k, mat in enumerate(sc.matrices):
        nrows, ncols = sc.dims[k + 1], sc.dims[k]
        if not mat:
            out.append(0)
        elif sc.point.d == 1:
            out.append(rank_sparse_q(mat, nrows, ncols))
        else:
            dense = [[F.zero] * ncols for _ in range(nrows)]
            for (r, c), v in mat.items():
                dense[r][c] = v
            out.append(rank(dense, F))
    return out


def dims_from_ranks(dims: list[int], rk: list[int]) -> list[int]:
    out = []
    for k, c in enumerate(dims):
        r_out = rk[k] if k < len(rk) else 0
        r_in = rk[k - 1] if k >= 1 else 0
        out.append(c - r_out - r_in)
    return out


def cohomology_field(sc: SpecializedComplex) -> list[int]:
    """dim H^k = dim C^k - rank d^k - rank d^(k-1)."""
    return dims_from_ranks(sc.dims, ranks(sc))


def cohomology_at(cx: CochainComplex, point: Point) -> list[int]:
    return cohomology_field(specialize(cx, point))


def euler_characteristic(cx: CochainComplex) -> int:
    return cx.euler_characteristic()


GENERIC_POINTS = (
    Point.rational(Fraction(3, 2), Fraction(5, 7)),
    Point.rational(Fraction(-7, 3), Fraction(11, 5)),
    Point.rational(Fraction(13, 11), Fraction(-17, 19)),
)

GENERIC_Q_POINTS = (
    Point.rational(Fraction(3, 2)),
    Point.rational(Fraction(-7, 3)),
)


@dataclass
class GenericResult:
    dims: list[int]
    ranks: list[int]
    certified_by: str


def generic_dims(cx: CochainComplex, points=None) -> GenericResult:
    """Cohomology dimensions over the fraction field Q(q, t).

    Ranks at rational points are lower bounds for the generic ranks.  A
    differential whose lower bound meets the bound forced by d o d = 0 and
    its neighbours is certified; any remaining degree is settled by exact
    fraction-free elimination over R.
    """
    t_free = all(v.is_t_free() for mat in cx.d for v in mat.values())
    if points is None:
        points = GENERIC_Q_POINTS if t_free else GENERIC_POINTS
    dims = cx.dims()
    best = [0] * len(cx.d)
    for p in points:
        for k, r in enumerate(ranks(specialize(cx, p))):
            best[k] = max(best[k], r)
    how = "rational points"
    for k in range(len(best)):
        left = best[k - 1] if k >= 1 else 0
        right = best[k + 1] if k + 1 < len(best) else 0
        bound = min(dims[k] - left, dims[k + 1] - right)
        if best[k] > bound:
            raise InternalInconsistency("rank lower bounds violate d o d = 0")
        if best[k] < bound:
            best[k] = bareiss_rank(cx.d[k], dims[k + 1], dims[k])
            how = "rational points + fraction-free elimination"
    return GenericResult(dims_from_ranks(dims, best), best, how)


def bareiss_rank(mat: dict, nrows: int, ncols: int) -> int:
    """Exact rank over Q(q, t) by fraction-free elimination in R."""
    from .laurent import ZERO

    A = [[ZERO] * ncols for _ in range(nrows)]
    for (r, c), v in mat.items():
        A[r][c] = v
    prev = LaurentPoly.const(1)
    rk = 0
    col = 0
    rows = nrows
    while rk < rows and col < ncols:
        piv = next((i for i in range(rk, rows) if A[i][col]), None)
        if piv is None:
            col += 1
            continue
        A[rk], A[piv] = A[piv], A[rk]
        p = A[rk][col]
        for i in range(rk + 1, rows):
            a = A[i][col]
            row = A[i]
            for j in range(col + 1, ncols):
                val = p * row[j] - a * A[rk][j]
                row[j] = val.exact_div(prev) if val else ZERO
            row[col] = ZERO
        prev = p
        rk += 1
        col += 1
    return rk


# ---------------------------------------------------------------- PID route

@dataclass(frozen=True)
class PIDSlice:
    """t -> eps * q^k, or t -> a rational constant, or t absent (``kind='none'``)."""

    kind: str = "none"
    eps: int = 1
    k: int = 0
    value: Fraction = Fraction(0)

    @classmethod
    def monomial(cls, eps: int, k: int) -> "PIDSlice":
        if eps not in (1, -1):
            raise BadArg("eps must be +1 or -1")
        return cls("monomial", eps, k)

    @classmethod
    def constant(cls, value) -> "PIDSlice":
        value = Fraction(value)
        if not value:
            raise BadSpecialization("t must map to a unit")
        return cls("constant", value=value)

    def label(self) -> str:
        if self.kind == "none":
            return "Q[q^+-1]"
        if self.kind == "constant":
            return f"Q[q^+-1], t={self.value}"
        sign = "-" if self.eps < 0 else ""
        return f"Q[q^+-1], t={sign}q^{self.k}"

    def apply(self, p: LaurentPoly) -> dict[int, object]:
        """Univariate image as ``{q-exponent: coefficient}``."""
        out: dict[int, object] = {}
        for (a, b), c in p._terms.items():
            if b and self.kind == "none":
                raise BadSpecialization("entry depends on t; choose a slice")
            if self.kind == "monomial":
                e, c = a + self.k * b, c * self.eps ** b
            elif self.kind == "constant":
                e, c = a, Fraction(c) * self.value ** b
            else:
                e = a
            out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c}


def _poly_matrix(mat: dict, nrows: int, ncols: int, sl: PIDSlice) -> list[list[list]]:
    images = {key: sl.apply(v) for key, v in mat.items()}
    images = {key: v for key, v in images.items() if v}
    low = min((min(v) for v in images.values()), default=0)
    A = [[[] for _ in range(ncols)] for _ in range(nrows)]
    for (r, c), v in images.items():
        top = max(v)
        coeffs = [0] * (top - low + 1)
        for e, x in v.items():
            coeffs[e - low] = x
        A[r][c] = upoly.trim(coeffs)
    return A


def _normalize_lines(lines: list[list[list]]) -> None:
    """Scale a row of polynomials by a rational unit to make it integral and primitive."""
    for line in lines:
        num, den = 0, 1
        for p in line:
            for x in p:
                x = Fraction(x)
                num = math.gcd(num, x.numerator)
                den = den * x.denominator // math.gcd(den, x.denominator)
        if num and (num != 1 or den != 1):
            f = Fraction(den, num)
            for j, p in enumerate(line):
                if p:
                    line[j] = [upoly.norm_coeff(Fraction(x) * f) for x in p]


def smith_diagonal(A: list[list[list]]) -> list[list]:
    """Diagonalize a matrix over Q[q] by unimodular row/column operations.

    Returns the nonzero diagonal entries (not yet in divisibility order).
    """
    A = [[list(x) for x in row] for row in A]
    diag = []
    while A and A[0]:
        best = None
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x and (best is None or (len(x), sum(1 for c in x if c)) < best[0]):
                    best = ((len(x), sum(1 for c in x if c)), i, j)
        if best is None:
            break
        _, i0, j0 = best
        A[0], A[i0] = A[i0], A[0]
        for row in A:
            row[0], row[j0] = row[j0], row[0]
        while True:
            p = A[0][0]
            clean = True
            for i in range(1, len(A)):
                if A[i][0]:
                    qt, r = upoly.divmod_(A[i][0], p)
                    A[i] = [upoly.sub(x, upoly.mul(qt, y)) for x, y in zip(A[i], A[0])]
                    A[i][0] = r
                    _normalize_lines([A[i]])
                    if r:
                        clean = False
            for j in range(1, len(A[0])):
                if A[0][j]:
                    qt, r = upoly.divmod_(A[0][j], p)
                    for row in A:
                        row[j] = upoly.sub(row[j], upoly.mul(qt, row[0]))
                    A[0][j] = r
                    col = [row[j] for row in A]
                    _normalize_lines([col])
                    for row, x in zip(A, col):
                        row[j] = x
                    if r:
                        clean = False
            if clean:
                break
            cand = [(len(A[i][0]), i, 0) for i in range(len(A)) if A[i][0]]
            cand += [(len(A[0][j]), 0, j) for j in range(len(A[0])) if A[0][j]]
            _, i1, j1 = min(cand)
            A[0], A[i1] = A[i1], A[0]
            for row in A:
                row[0], row[j1] = row[j1], row[0]
        diag.append(A[0][0])
        A = [row[1:] for row in A[1:]]
    return diag


def _unit_normal(p: list) -> list:
    return upoly.monic(upoly.strip_x(upoly.trim(list(p))))


def invariant_factors(diag: list[list]) -> list[list]:
    """Turn a diagonal into Smith form f_1 | f_2 | ... (monic, q-free)."""
    d = [_unit_normal(p) for p in diag]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = upoly.gcd(d[i], d[j])
            if upoly.deg(g) == 0:
                l = upoly.mul(d[i], d[j])
            else:
                l = upoly.exact_div(upoly.mul(d[i], d[j]), g)
            d[i], d[j] = _unit_normal(g), _unit_normal(l)
    return d


def cyclotomic_profile(f: list) -> tuple[Counter, list]:
    """Multiplicities of phi_d in f and the non-cyclotomic cofactor."""
    f = _unit_normal(f)
    out: Counter = Counter()
    n = upoly.deg(f)
    bound = 2 * n * n + 2
    for d in range(1, bound + 1):
        if upoly.deg(f) < 1:
            break
        phi = cyclotomic_coeffs(d)
        if len(phi) - 1 > upoly.deg(f):
            continue
        while True:
            qt = upoly.exact_div(f, phi)
            if qt is None:
                break
            out[d] += 1
            f = qt
    return out, f


@dataclass
class PIDDegree:
    degree: int
    free_rank: int
    torsion: list[list] = field(default_factory=list)

    def module(self) -> ModuleExpr:
        parts: Counter = Counter()
        if self.free_rank:
            parts[FREE] += self.free_rank
        for f in self.torsion:
            prof, rest = cyclotomic_profile(f)
            if upoly.deg(rest) > 0:
                raise BadArg(f"invariant factor {f} has a non-cyclotomic part")
            for d, m in prof.items():
                parts[phimod(d, m)] += 1
        return ModuleExpr(parts)

    def torsion_strings(self) -> list[str]:
        return [str(LaurentPoly.from_q_coeffs(f)) for f in self.torsion]


def cohomology_pid(cx: CochainComplex, sl: PIDSlice | None = None) -> list[PIDDegree]:
    """Free ranks and invariant factors of H^k over Q[q^+-1]."""
    sl = sl or PIDSlice()
    dims = cx.dims()
    rk = []
    torsion_in = []  # invariant factors of d^(k-1), indexed by k
    for k, mat in enumerate(cx.d):
        A = _poly_matrix(mat, dims[k + 1], dims[k], sl)
        fs = invariant_factors(smith_diagonal(A)) if any(x for row in A for x in row) else []
        rk.append(len(fs))
        torsion_in.append([f for f in fs if upoly.deg(f) > 0])
    out = []
    for k, c in enumerate(dims):
        r_out = rk[k] if k < len(rk) else 0
        r_in = rk[k - 1] if k >= 1 else 0
        tors = torsion_in[k - 1] if k >= 1 else []
        out.append(PIDDegree(k, c - r_out - r_in, tors))
    return out
