"""Closed-form cohomology predictions, transcribed as case analyses.

Module-valued answers are ``{degree: ModuleExpr}`` dictionaries.  For the
affine B_n answer the rows are indexed by s (cohomological degree n - s of
the group with series coefficients); ``affine_rows_to_degrees`` moves them to
degrees of the augmented complex over R.
"""

from __future__ import annotations

from .errors import BadArg
from .modules import FREE, ModuleExpr, ddmod, dmod, one, phimod


def f_nh(n: int, h: int) -> int:
    """floor((n + h - 1) / 2h): exponent of the top anti-invariant summand."""
    return (n + h - 1) // (2 * h)


def f_nh_alt(n: int, h: int) -> int:
    """Second closed form floor((n-1)/h) - floor((n-1)/2h), equal to ``f_nh``."""
    return (n - 1) // h - (n - 1) // (2 * h)


def c_nhs(n: int, h: int, s: int) -> int:
    return max(0, n // (2 * h) - s)


def I_nh(n: int, h: int) -> list[int]:
    r = n % (2 * h)
    if r <= h:
        return list(range(n, n + h - 1))
    return list(range(n + h - 1, n + 2 * h))


def S_n(n: int) -> list[int]:
    """h with 2h | n, or h | n - 1 and 2h not dividing n - 1."""
    out = []
    for h in range(1, n + 1):
        if n % (2 * h) == 0 or ((n - 1) % h == 0 and (n - 1) % (2 * h) != 0):
            out.append(h)
    return out


def divides(a: int, b: int) -> bool:
    return b % a == 0


# ---------------------------------------------------------------- finite B_n

def predict_inv(n: int) -> dict[int, ModuleExpr]:
    """H^i(C(B_n)) over R with the (q, t) local system."""
    if n < 1:
        raise BadArg("need n >= 1")
    out: dict[int, ModuleExpr] = {}
    for i in range(n + 1):
        parts = []
        gap = n - i
        if gap == 0:
            parts += [dmod(d, k) for d in range(1, n + 1) if divides(d, n) for k in range(d - 1)]
            parts.append(one(n - 1))
        elif gap % 2 == 0:
            j = gap // 2
            parts += [dmod(d, k) for d in range(1, n + 1)
                      if divides(d, n) and d * (j + 1) <= n for k in range(d - 1)]
        else:
            j = (gap - 1) // 2
            parts += [dmod(d, n - 1) for d in range(1, n + 1)
                      if not divides(d, n) and d * (j + 1) <= n]
        out[i] = ModuleExpr.of(*parts)
    return out


# ---------------------------------------------------------------- anti-invariant part

def predict_anti(n: int, min_h: int = 3, top: str = "stated") -> dict[int, ModuleExpr]:
    """H^k of the anti-invariant augmented complex of affine B_n.

    ``min_h=3`` is the literal "h > 2" range; ``min_h=2`` admits h = 2 and
    ``min_h=1`` every h.  ``top`` selects the product in the top summands,
    see ``top_part``.
    """
    if n < 3:
        raise BadArg("affine B_n needs n >= 3")
    out: dict[int, ModuleExpr] = {}
    out[n + 1] = top_part(n, top)
    for s in range(n + 1):
        out[n - s] = _twisted_part(n, s, min_h)
    return out


TOP_READINGS = ("stated", "proof")


def top_part(n: int, reading: str = "stated") -> ModuleExpr:
    """Top summands {{2h}}_f(n,h).

    ``stated``: the product over all residues i = 0..2h-1.
    ``proof``: for 2h > n only the factors i = n+h-1, ..., n+2h-1 produced
    by the last nonzero differential (the n mod 2h > h case).
    """
    if reading not in TOP_READINGS:
        raise BadArg(f"top reading must be one of {TOP_READINGS}")
    parts = []
    for h in range(1, n + 1):
        f = f_nh(n, h)
        if not f:
            continue
        if reading == "proof" and 2 * h > n:
            parts.append(ddmod(2 * h, f, n + h - 1, h + 1))
        else:
            parts.append(ddmod(2 * h, f))
    return ModuleExpr.of(*parts)


def _twisted_part(n: int, c_shift: int, min_h: int) -> ModuleExpr:
    parts: dict = {}
    for h in range(max(min_h, 1), n + 1):
        c = c_nhs(n, h, c_shift)
        if not c:
            continue
        for i in I_nh(n, h):
            spec = dmod(2 * h, i)
            parts[spec] = parts.get(spec, 0) + c
    return ModuleExpr(parts)


# ---------------------------------------------------------------- affine B_n

def predict_main2_rows(n: int, min_h: int = 3, c_offset: int = 0,
                       top: str = "stated") -> dict[int, ModuleExpr]:
    """Rows s = 0..n of the affine B_n answer with series coefficients.

    Row 0 is the free series module (reported as a free summand).  Row s
    uses c(n, h, s - c_offset); ``c_offset=0`` is the literal statement,
    ``c_offset=2`` the count implied by the anti-invariant computation.
    """
    if n < 3:
        raise BadArg("affine B_n needs n >= 3")
    rows: dict[int, ModuleExpr] = {0: ModuleExpr.of(FREE)}
    rows[1] = top_part(n, top)
    inv = predict_inv(n)
    for s in range(2, n + 3):
        expr = _twisted_part(n, s - c_offset, min_h)
        i = n - s + 2
        if i in inv:
            expr = expr + inv[i]
        rows[s] = expr
    return rows


def affine_rows_to_degrees(rows: dict[int, ModuleExpr], n: int) -> dict[int, ModuleExpr]:
    """Row s >= 1 -> degree n - s + 2 of the augmented complex over R (row 0 has no image)."""
    return {n - s + 2: expr for s, expr in rows.items() if s >= 1 and n - s + 2 >= 0}


def predict_main2(n: int, min_h: int = 3, c_offset: int = 0,
                  top: str = "stated") -> dict[int, ModuleExpr]:
    return affine_rows_to_degrees(predict_main2_rows(n, min_h, c_offset, top), n)


def predict_main3(n: int) -> list[int]:
    """Trivial-coefficient Betti numbers of the affine B_n Artin group."""
    if n < 3:
        raise BadArg("affine B_n needs n >= 3")
    top = 2 + n // 2
    return [1] + [2] * (n - 2) + [top, top]


# ---------------------------------------------------------------- D-type subcomplex

def predict_dpssG(n: int) -> dict[int, ModuleExpr]:
    """H^k(G1_n) over Q[q^+-1] as sums of {2h} = Q[q^+-1] / phi_2h."""
    if n < 2:
        raise BadArg("need n >= 2")
    S = S_n(n)
    out = {k: ModuleExpr() for k in range(n + 1)}
    out[n] = ModuleExpr.of(*[phimod(2 * h) for h in S])
    for s in range(1, n // 2 + 1):
        low = [phimod(2 * h) for h in S if 1 < h and 2 * s * h < n]
        high = [phimod(2 * h) for h in S if 1 < h and 2 * s * h <= n]
        out[n - 2 * s] = out[n - 2 * s] + ModuleExpr.of(*low)
        out[n - 2 * s + 1] = out[n - 2 * s + 1] + ModuleExpr.of(*high)
    return out


def d1_exponents(n: int) -> dict[int, int]:
    """phi_2h multiplicities in prod_{i=1}^{n-1} (1 + q^i)."""
    out = {}
    for h in range(1, n + 1):
        e = (n - 1) // h - (n - 1) // (2 * h)
        if e:
            out[2 * h] = e
    return out
