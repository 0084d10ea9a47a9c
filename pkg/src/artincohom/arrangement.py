"""Chambers of the central arrangement {x_i = x_j, x_i = -x_j} plus {x_1 = 0}.

The "orbit" variant adds every coordinate hyperplane x_k = 0, i.e. all
images of x_1 = 0 under W(D_(n+1)); the result is the B_(n+1) arrangement.

Feasibility of a strict homogeneous system A x > 0 is decided exactly: by
homogeneity it is equivalent to A x >= 1, which Fourier-Motzkin elimination
over the rationals settles and back substitution turns into a rational
witness point.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BadArg, TooLarge
from .fields import RationalField, rank

MAX_DIM = 5
MAX_HYPERPLANES = 40


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple[Fraction, ...]
    label: str

    def value(self, x) -> Fraction:
        return sum((a * v for a, v in zip(self.normal, x)), Fraction(0))


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    witness: tuple[Fraction, ...]
    walls: tuple[int, ...] = ()


VARIANTS = ("lemma", "orbit")


def build_lemma_arrangement(n: int, variant: str = "lemma") -> list[Hyperplane]:
    """L-_ij (x_i = x_j), L+_ij (x_i = -x_j) for i < j <= n+1, and H_1 in R^(n+1).

    ``variant="orbit"`` uses H_1, ..., H_(n+1) instead of H_1 alone.
    """
    if variant not in VARIANTS:
        raise BadArg(f"variant must be one of {VARIANTS}")
    if n < 1:
        raise BadArg("need n >= 1")
    dim = n + 1
    out = []

    def vec(entries: dict) -> tuple:
        return tuple(Fraction(entries.get(k, 0)) for k in range(dim))

    for i, j in combinations(range(dim), 2):
        out.append(Hyperplane(vec({i: 1, j: -1}), f"L-_{i + 1}{j + 1}"))
        out.append(Hyperplane(vec({i: 1, j: 1}), f"L+_{i + 1}{j + 1}"))
    for k in range(dim if variant == "orbit" else 1):
        out.append(Hyperplane(vec({k: 1}), f"H_{k + 1}"))
    return out


def expected_chamber_count(n: int, variant: str = "lemma") -> int:
    """Deletion-restriction count: |W(D_(n+1))| + |W(B_n)|, or |W(B_(n+1))| for the orbit."""
    def order_b(m):
        return 2 ** m * math.factorial(m)

    if variant == "orbit":
        return order_b(n + 1)
    return order_b(n + 1) // 2 + order_b(n)


# ---------------------------------------------------------------- Fourier-Motzkin

def _normalize(cons: list[tuple[tuple, Fraction]]) -> list[tuple[tuple, Fraction]] | None:
    """Scale rows to primitive integer form, merge duplicates, drop trivial rows.

    Returns None as soon as a row 0 >= b with b > 0 appears.
    """
    best: dict[tuple, Fraction] = {}
    for a, b in cons:
        nz = [x for x in a if x]
        if not nz:
            if b > 0:
                return None
            continue
        den = 1
        num = 0
        for x in nz:
            den = den * x.denominator // math.gcd(den, x.denominator)
        for x in nz:
            num = math.gcd(num, (x * den).numerator)
        scale = Fraction(den, num)
        key = tuple(x * scale for x in a)
        val = b * scale
        if key not in best or val > best[key]:
            best[key] = val
    return list(best.items())


def solve_strict(rows: list[tuple]) -> tuple[Fraction, ...] | None:
    """Rational x with r . x > 0 for every row, or None if the cone is empty."""
    if not rows:
        raise BadArg("empty system")
    dim = len(rows[0])
    cons = _normalize([(tuple(Fraction(v) for v in r), Fraction(1)) for r in rows])
    if cons is None:
        return None
    stages = []
    for k in range(dim - 1, -1, -1):
        stages.append(cons)
        pos = [c for c in cons if c[0][k] > 0]
        neg = [c for c in cons if c[0][k] < 0]
        new = [c for c in cons if c[0][k] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                lp, ln = ap[k], -an[k]
                a = tuple(ln * x + lp * y for x, y in zip(ap, an))
                new.append((a, ln * bp + lp * bn))
        cons = _normalize(new)
        if cons is None:
            return None
    x = [Fraction(0)] * dim
    for k in range(dim):
        lo = hi = None
        for a, b in stages[dim - 1 - k]:
            if not a[k]:
                continue
            rest = b - sum((a[j] * x[j] for j in range(k)), Fraction(0))
            bound = rest / a[k]
            if a[k] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            x[k] = (lo + hi) / 2
        elif lo is not None:
            x[k] = lo
        elif hi is not None:
            x[k] = hi
    point = tuple(x)
    if any(sum((a * v for a, v in zip(r, point)), Fraction(0)) <= 0 for r in rows):
        raise AssertionError("back substitution produced an infeasible witness")
    return point


def _rows_for(hyperplanes: list[Hyperplane], signs) -> list[tuple]:
    return [tuple(s * a for a in h.normal) for h, s in zip(hyperplanes, signs)]


def realizable(hyperplanes: list[Hyperplane], signs) -> tuple | None:
    return solve_strict(_rows_for(hyperplanes, signs))


# ---------------------------------------------------------------- chambers

def _check_scale(hyperplanes: list[Hyperplane]):
    if not hyperplanes:
        raise BadArg("no hyperplanes")
    if len(hyperplanes[0].normal) > MAX_DIM or len(hyperplanes) > MAX_HYPERPLANES:
        raise TooLarge(f"arrangement too large (dim <= {MAX_DIM}, <= {MAX_HYPERPLANES} hyperplanes)")


def _extend(args):
    hyperplanes, signs = args
    out = []
    for s in (1, -1):
        w = realizable(hyperplanes, signs + (s,))
        if w is not None:
            out.append((signs + (s,), w))
    return out


def enumerate_chambers(hyperplanes: list[Hyperplane], jobs: int = 1) -> list[Chamber]:
    """All realizable sign vectors, adding one hyperplane at a time."""
    _check_scale(hyperplanes)
    current: list[tuple] = [((), None)]
    for k in range(1, len(hyperplanes) + 1):
        prefix = hyperplanes[:k]
        tasks = [(prefix, signs) for signs, _ in current]
        if jobs > 1 and len(tasks) > 8:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                parts = list(ex.map(_extend, tasks, chunksize=16))
        else:
            parts = [_extend(t) for t in tasks]
        current = [item for part in parts for item in part]
    found = sorted(current, key=lambda item: item[0])
    signset = {s for s, _ in found}
    chambers = []
    for signs, w in found:
        walls = tuple(j for j in range(len(signs))
                      if signs[:j] + (-signs[j],) + signs[j + 1:] in signset)
        chambers.append(Chamber(signs, w, walls))
    return chambers


def walls_by_feasibility(chamber_signs, hyperplanes: list[Hyperplane]) -> tuple[int, ...]:
    """Hyperplanes whose single sign flip is still realizable."""
    out = []
    for j in range(len(chamber_signs)):
        flipped = tuple(chamber_signs[:j]) + (-chamber_signs[j],) + tuple(chamber_signs[j + 1:])
        if realizable(hyperplanes, flipped) is not None:
            out.append(j)
    return tuple(out)


def is_simplicial(chamber, hyperplanes: list[Hyperplane]) -> bool:
    """Number of walls equals the dimension and the wall normals are independent."""
    signs = chamber.signs if isinstance(chamber, Chamber) else tuple(chamber)
    if realizable(hyperplanes, signs) is None:
        raise BadArg("sign vector is not a chamber")
    walls = chamber.walls if isinstance(chamber, Chamber) and chamber.walls else \
        walls_by_feasibility(signs, hyperplanes)
    dim = len(hyperplanes[0].normal)
    if len(walls) != dim:
        return False
    return rank([list(hyperplanes[j].normal) for j in walls], RationalField()) == dim


def sign_vector(hyperplanes: list[Hyperplane], x) -> tuple[int, ...] | None:
    out = []
    for h in hyperplanes:
        v = h.value(x)
        if not v:
            return None
        out.append(1 if v > 0 else -1)
    return tuple(out)


def d_generators(dim: int) -> list:
    """Signed permutations generating W(D_dim): adjacent swaps and (x1, x2) -> (-x2, -x1)."""
    gens = []
    for i in range(dim - 1):
        def swap(x, i=i):
            y = list(x)
            y[i], y[i + 1] = y[i + 1], y[i]
            return tuple(y)
        gens.append(swap)

    def flip(x):
        y = list(x)
        y[0], y[1] = -x[1], -x[0]
        return tuple(y)

    if dim >= 2:
        gens.append(flip)
    return gens


def verify_lemma(n: int, jobs: int = 1, variant: str = "lemma") -> dict:
    """Enumerate, certify simpliciality, and check the chamber-splitting claims."""
    if n < 1:
        raise BadArg("need n >= 1")
    hs = build_lemma_arrangement(n, variant)
    dim = n + 1
    chambers = enumerate_chambers(hs, jobs)
    failures = [list(c.signs) for c in chambers if not is_simplicial(c, hs)]
    signset = {c.signs for c in chambers}
    checks: dict[str, bool] = {}
    checks["sign vectors distinct"] = len(signset) == len(chambers)
    checks["closed under x -> -x"] = all(tuple(-s for s in c.signs) in signset for c in chambers)
    checks["witnesses avoid every hyperplane"] = all(sign_vector(hs, c.witness) == c.signs for c in chambers)
    checks["chamber count matches deletion-restriction"] = \
        len(chambers) == expected_chamber_count(n, variant)

    # C0 = {-x2 < x1 < x2 < ... < x_(n+1)}
    def unit(i, c=1):
        return tuple(Fraction(c if k == i else 0) for k in range(dim))

    c0 = [tuple(a + b for a, b in zip(unit(1), unit(0))),        # x2 + x1 > 0
          tuple(a - b for a, b in zip(unit(1), unit(0)))]        # x2 - x1 > 0
    c0 += [tuple(a - b for a, b in zip(unit(k + 1), unit(k))) for k in range(1, dim - 1)]
    checks["C0 nonempty"] = solve_strict(c0) is not None
    checks["H_k, k >= 2, do not cut C0"] = all(
        solve_strict(c0 + [unit(k, -1)]) is None for k in range(1, dim))
    checks["H_1 cuts C0"] = solve_strict(c0 + [unit(0)]) is not None and \
        solve_strict(c0 + [unit(0, -1)]) is not None
    for name, extra in (("C1", unit(0)), ("C2", unit(0, -1))):
        w = solve_strict(c0 + [extra])
        sv = sign_vector(hs, w) if w else None
        ch = next((c for c in chambers if c.signs == sv), None)
        checks[f"{name} is a simplicial chamber"] = ch is not None and is_simplicial(ch, hs)
        if name == "C1" and ch is not None:
            want = {"H_1"} | {f"L-_{k}{k + 1}" for k in range(1, dim)}
            checks["C1 walls are H_1 and L-_(k,k+1)"] = {hs[j].label for j in ch.walls} == want

    moved = skipped = 0
    ok = True
    for c in chambers:
        for g in d_generators(dim):
            sv = sign_vector(hs, g(c.witness))
            if sv is None:
                skipped += 1
                continue
            moved += 1
            ok = ok and sv in signset
    checks["D_(n+1) generators map witnesses into enumerated chambers"] = ok and moved > 0
    return {
        "n": n,
        "variant": variant,
        "hyperplanes": [h.label for h in hs],
        "chamber_count": len(chambers),
        "simplicial_count": len(chambers) - len(failures),
        "failures": failures,
        "checks": checks,
        "action_images": {"checked": moved, "on_a_hyperplane": skipped},
    }
