"""Formal direct sums of cyclic modules over R = Q[q^+-1, t^+-1].

Summand kinds:

* ``free``: R itself
* ``one``:  {1}_i  = R / (1 + t q^i)
* ``d``:    {d}_i  = R / (phi_d, 1 + t q^i)
* ``dd``:   {{d}}_j = R / (phi_d, prod_{i<d} (1 + t q^i))^j
* ``phi``:  Q[q^+-1] / phi_d^j, the t-free torsion met in D-type complexes

Each summand knows its Tor dimensions against the residue field of a
``Point``, which is what the specialization checks compare against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadArg
from .fields import Point
from .laurent import ONE, one_plus_tq
from .qanalogs import cyclotomic

KINDS = ("free", "one", "d", "dd", "phi")


@dataclass(frozen=True)
class CyclicModuleSpec:
    kind: str
    d: int = 1
    i: int = 0
    lo: int = 0  # {{d}}_j only: the product runs over i = lo, ..., lo + span - 1
    span: int = 0  # 0 means d factors

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadArg(f"unknown summand kind {self.kind!r}")
        if self.kind in ("d", "dd", "phi") and self.d < 1:
            raise BadArg("cyclotomic index must be positive")
        if self.kind == "d":
            object.__setattr__(self, "i", self.i % self.d)
        if self.kind in ("dd", "phi") and self.i < 1:
            raise BadArg("exponent must be at least 1")

    def sort_key(self) -> tuple:
        return (KINDS.index(self.kind), self.d, self.i, self.lo, self.span)

    @property
    def factors(self) -> range:
        return range(self.lo, self.lo + (self.span or self.d))

    @property
    def name(self) -> str:
        if self.kind == "free":
            return "R"
        if self.kind == "one":
            return f"{{1}}_{self.i}"
        if self.kind == "d":
            return f"{{{self.d}}}_{self.i}"
        if self.kind == "dd":
            tail = f"[{self.lo}..{self.lo + self.span - 1}]" if self.span else ""
            return f"{{{{{self.d}}}}}_{self.i}{tail}"
        return f"{{{self.d}}}" + (f"^{self.i}" if self.i > 1 else "")

    def support_points(self) -> list[Point]:
        """Points where the summand is visible after specialization."""
        if self.kind == "one":
            return [Point.rational(2, Fraction(-1, 2 ** self.i) if self.i >= 0 else -(2 ** -self.i))]
        if self.kind == "d":
            return [Point.support(self.d, self.i)]
        if self.kind == "dd":
            return [Point.support(self.d, i) for i in sorted({i % self.d for i in self.factors})]
        if self.kind == "phi":
            return [Point.root(self.d)]
        return []

    def tor_dims(self, point: Point) -> tuple[int, int, int]:
        """dim Tor_p(summand, K) for p = 0, 1, 2 where K is the point's field."""
        if self.kind == "free":
            return (1, 0, 0)
        if self.kind == "phi":
            return (1, 1, 0) if point.vanishes(cyclotomic(self.d)) else (0, 0, 0)
        if self.kind == "one":
            return (1, 1, 0) if point.vanishes(one_plus_tq(self.i)) else (0, 0, 0)
        if not point.vanishes(cyclotomic(self.d)):
            return (0, 0, 0)
        if self.kind == "d":
            return (1, 2, 1) if point.vanishes(one_plus_tq(self.i)) else (0, 0, 0)
        # {{d}}_j: locally (phi_d, (1 + t q^i)^m)^j with m >= 1; its minimal
        # resolution R^j -> R^(j+1) -> R has ranks independent of m
        prod = ONE
        for i in self.factors:
            prod = prod * one_plus_tq(i)
        if not point.vanishes(prod):
            return (0, 0, 0)
        j = self.i
        return (1, j + 1, j)


class ModuleExpr:
    """Finite direct sum ``summand -> multiplicity`` with canonical ordering."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts: Counter = Counter()
        for spec, m in (dict(parts) if parts else {}).items():
            if m < 0:
                raise BadArg("negative multiplicity")
            if m:
                self.parts[spec] += m

    @classmethod
    def of(cls, *specs: CyclicModuleSpec) -> "ModuleExpr":
        return cls(Counter(specs))

    def __add__(self, other: "ModuleExpr") -> "ModuleExpr":
        return ModuleExpr(self.parts + other.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleExpr) and +self.parts == +other.parts

    def __hash__(self):
        return hash(frozenset((+self.parts).items()))

    def is_zero(self) -> bool:
        return not +self.parts

    def items(self):
        return sorted((+self.parts).items(), key=lambda item: item[0].sort_key())

    def free_rank(self) -> int:
        return self.parts[CyclicModuleSpec("free")]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        out = []
        for spec, m in self.items():
            out.append(spec.name if m == 1 else f"{spec.name}^{m}")
        return " + ".join(out)

    __repr__ = __str__

    def to_json(self) -> list:
        return [{"kind": s.kind, "d": s.d, "i": s.i, "mult": m, "name": s.name} for s, m in self.items()]

    def tor_dims(self, point: Point) -> tuple[int, int, int]:
        acc = [0, 0, 0]
        for spec, m in self.items():
            for p, v in enumerate(spec.tor_dims(point)):
                acc[p] += m * v
        return tuple(acc)

    def support_points(self) -> list[Point]:
        pts = {p for spec, _ in self.items() for p in spec.support_points()}
        return sorted(pts, key=Point.sort_key)


def tor_corrected_dims(exprs: dict[int, ModuleExpr], point: Point) -> dict[int, int]:
    """Predicted dim H^k(C (x) K) from module cohomology H^k(C) = exprs[k].

    Uses dim H^k(C (x) K) = sum_p dim Tor_p(H^(k+p)(C), K), p = 0, 1, 2,
    i.e. assumes the universal-coefficient spectral sequence degenerates.
    """
    degrees = set(exprs)
    for k in list(degrees):
        degrees.update({k - 1, k - 2})
    out = {}
    for k in sorted(degrees):
        total = 0
        for p in range(3):
            if k + p in exprs:
                total += exprs[k + p].tor_dims(point)[p]
        if total or k in exprs:
            out[k] = total
    return out


def one(i: int) -> CyclicModuleSpec:
    return CyclicModuleSpec("one", 1, i)


def dmod(d: int, i: int) -> CyclicModuleSpec:
    return CyclicModuleSpec("d", d, i)


def ddmod(d: int, j: int, lo: int = 0, span: int = 0) -> CyclicModuleSpec:
    return CyclicModuleSpec("dd", d, j, lo, span)


def phimod(d: int, power: int = 1) -> CyclicModuleSpec:
    return CyclicModuleSpec("phi", d, power)


FREE = CyclicModuleSpec("free")

