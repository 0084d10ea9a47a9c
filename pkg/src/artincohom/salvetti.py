"""Salvetti cochain complexes with abelian (q, t) local coefficients.

A complex stores, for each degree, an ordered basis of labels (subset
bitmasks) and a sparse coboundary matrix ``d[k]`` with entries
``(row, col) -> LaurentPoly`` mapping degree k to degree k + 1.

Besides the plain complex this module builds the augmented affine-B complex,
the splitting under the diagram involution swapping vertices 1 and 2, the
chain maps between the pieces and the explicit anti-invariant cocycles of
the D-type subcomplex ``G1``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .coxeter import (
    CoxeterGraph,
    alpha,
    bitstring,
    build_graph,
    enumerate_finite_subsets,
    fork_string,
    members,
    popcount,
)
from .errors import BadArg, InternalInconsistency, NotDivisible, Unsupported
from .laurent import ONE, ZERO, LaurentPoly
from .poincare import poincare, poincare_factors
from .qanalogs import (
    cyclotomic,
    expand,
    factored_div,
    lcm_factored,
    q_double_factorial_factors,
    q_int_factors,
)

Label = int


@dataclass
class CochainComplex:
    bases: list[list[Label]]
    d: list[dict[tuple[int, int], LaurentPoly]]
    name: str = ""
    size: int = 0
    fork: bool = False
    graph: CoxeterGraph | None = None
    weighting: str | None = None
    index: list[dict[Label, int]] = field(init=False, repr=False)
    # set by ``restrict``: the enclosing complex and the spanning vectors
    ambient: "CochainComplex | None" = field(default=None, init=False, repr=False, compare=False)
    vectors: list | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.d) != max(len(self.bases) - 1, 0):
            raise BadArg("need one coboundary matrix per consecutive pair of degrees")
        self.index = [{lab: i for i, lab in enumerate(b)} for b in self.bases]
        for k, mat in enumerate(self.d):
            for (r, c) in mat:
                if not (0 <= r < len(self.bases[k + 1]) and 0 <= c < len(self.bases[k])):
                    raise BadArg(f"entry ({r}, {c}) out of range in degree {k}")

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    def label_str(self, label: Label) -> str:
        return fork_string(label, self.size) if self.fork else bitstring(label, self.size)

    def apply(self, k: int, vec: dict[Label, LaurentPoly]) -> dict[Label, LaurentPoly]:
        """Coboundary of a degree-k cochain given as ``label -> coefficient``."""
        if k >= self.top:
            return {}
        idx = self.index[k]
        cols: dict[int, list] = {}
        for (r, c), v in self.d[k].items():
            cols.setdefault(c, []).append((r, v))
        out: dict[Label, LaurentPoly] = {}
        for lab, coef in vec.items():
            if not coef:
                continue
            for r, v in cols.get(idx[lab], []):
                tgt = self.bases[k + 1][r]
                out[tgt] = out.get(tgt, ZERO) + v * coef
        return {lab: v for lab, v in out.items() if v}

    def check_d_squared(self) -> None:
        """Raise InternalInconsistency unless d o d vanishes entry-wise."""
        for k in range(self.top - 1):
            rows: dict[int, list] = {}
            for (r, c), v in self.d[k + 1].items():
                rows.setdefault(c, []).append((r, v))
            acc: dict[tuple[int, int], LaurentPoly] = {}
            for (mid, src), v in self.d[k].items():
                for tgt, w in rows.get(mid, []):
                    key = (tgt, src)
                    acc[key] = acc.get(key, ZERO) + w * v
            bad = [key for key, v in acc.items() if v]
            if bad:
                r, c = bad[0]
                raise InternalInconsistency(
                    f"{self.name}: d^{k + 1} d^{k} nonzero at "
                    f"{self.label_str(self.bases[k + 2][r])} <- {self.label_str(self.bases[k][c])}"
                )

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.dims()))

    def dump(self) -> str:
        """Matrix dump: per degree a header, entry triplets and a basis legend."""
        lines = [f"# complex {self.name}"]
        for k, basis in enumerate(self.bases):
            lines.append(f"basis {k}: " + " ".join(f"{i}={self.label_str(lab)}" for i, lab in enumerate(basis)))
        for k, mat in enumerate(self.d):
            lines.append(f"degree {k}: rows={len(self.bases[k + 1])} cols={len(self.bases[k])}")
            for (r, c), v in sorted(mat.items()):
                lines.append(f"{r} {c} {v}")
        return "\n".join(lines) + "\n"


@dataclass
class Cochain:
    degree: int
    coeffs: dict[Label, LaurentPoly]

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        a = {k: v for k, v in self.coeffs.items() if v}
        b = {k: v for k, v in other.coeffs.items() if v}
        return self.degree == other.degree and a == b

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())


# ---------------------------------------------------------------- construction

_expand_cache: dict = {}


def _expand_cached(factors: Counter) -> LaurentPoly:
    key = frozenset(factors.items())
    if key not in _expand_cache:
        _expand_cache[key] = expand(factors)
    return _expand_cache[key]


def build_complex(graph: CoxeterGraph, weighting: str = "q", name: str | None = None,
                  check_division: bool = False) -> CochainComplex:
    """Salvetti complex of ``graph`` with the eta_q or eta_{q,t} local system.

    Entries are the ratios W_{G'} / W_G computed on factored Poincare series;
    ``check_division=True`` additionally re-derives every entry by exact
    division of the expanded series.
    """
    bases = [enumerate_finite_subsets(graph, k) for k in range(graph.size + 1)]
    while len(bases) > 1 and not bases[-1]:
        bases.pop()
    factors = {lab: poincare_factors(graph, lab, weighting) for b in bases for lab in b}
    d = []
    for k in range(len(bases) - 1):
        target = {lab: i for i, lab in enumerate(bases[k + 1])}
        mat = {}
        for c, gamma in enumerate(bases[k]):
            for s in graph.vertices:
                bit = 1 << (s - 1)
                if gamma & bit or (gamma | bit) not in target:
                    continue
                up = gamma | bit
                ratio = _expand_cached(factored_div(factors[up], factors[gamma]))
                if check_division:
                    direct = poincare(graph, up, weighting).exact_div(poincare(graph, gamma, weighting))
                    if direct != ratio:
                        raise InternalInconsistency("factored and expanded division disagree")
                sign = -1 if alpha(gamma, up) % 2 else 1
                mat[(target[up], c)] = ratio if sign > 0 else -ratio
        d.append(mat)
    label = name or f"C({graph.family or 'W'}_{graph.rank}, {weighting})"
    return CochainComplex(bases, d, label, graph.size, graph.has_fork(), graph, weighting)


def complex_for(family: str, rank: int, weighting: str | None = None) -> CochainComplex:
    graph = build_graph(family, rank)
    if weighting is None:
        weighting = "qt" if graph.t_vertex is not None else "q"
    return build_complex(graph, weighting)


def quasi_poincare_factors(n: int) -> Counter:
    if n < 2:
        raise BadArg("quasi-Poincare polynomial needs n >= 2")
    out = q_double_factorial_factors(2 * (n - 1)) + q_int_factors(n)
    for i in range(n):
        out[("tq", i)] += 1
    return out


def quasi_poincare_tilde_b(n: int, check: bool = True) -> LaurentPoly:
    """[2(n-1)]!! [n] prod_{i<n} (1 + t q^i), checked to be the lcm of the maximal parabolics."""
    what = quasi_poincare_factors(n)
    value = expand(what)
    if check and n >= 3:
        graph = build_graph("tildeB", n)
        maximal = [graph.full_mask & ~(1 << (v - 1)) for v in graph.vertices]
        forms = [poincare_factors(graph, m, "qt") for m in maximal]
        if +lcm_factored(*forms) != +what:
            raise InternalInconsistency("quasi-Poincare polynomial is not the lcm of the maximal parabolics")
        for m in maximal:
            try:
                value.exact_div(poincare(graph, m, "qt"))
            except NotDivisible as exc:
                raise InternalInconsistency(f"W_hat not divisible by W of {members(m)}") from exc
    return value


def augment_tilde_b(complex_: CochainComplex, n: int) -> CochainComplex:
    """Append e_S in degree n+1 with d(e_G) = (-1)^alpha(G,S) W_hat / W_G e_S."""
    graph = complex_.graph
    if graph is None or graph.family != "tildeB" or graph.rank != n:
        raise BadArg("augmentation needs the affine B_n complex")
    full = graph.full_mask
    what = quasi_poincare_factors(n)
    quasi_poincare_tilde_b(n)
    bases = [list(b) for b in complex_.bases]
    while len(bases) <= n:
        bases.append([])
    bases.append([full])
    mat = {}
    for c, gamma in enumerate(bases[n]):
        ratio = _expand_cached(factored_div(what, poincare_factors(graph, gamma, "qt")))
        sign = -1 if alpha(gamma, full) % 2 else 1
        mat[(0, c)] = ratio if sign > 0 else -ratio
    d = [dict(m) for m in complex_.d] + [mat]
    return CochainComplex(bases, d, f"Chat(tildeB_{n})", graph.size, True, graph, "qt")


def augmented_tilde_b(n: int) -> CochainComplex:
    return augment_tilde_b(build_complex(build_graph("tildeB", n), "qt"), n)


# ---------------------------------------------------------------- subcomplexes

def restrict(complex_: CochainComplex, vectors: list[list[tuple[Label, dict]]],
             name: str) -> CochainComplex:
    """Complex on a d-stable family of vectors.

    ``vectors[k]`` lists ``(label, vector)`` pairs; each vector has coefficient
    1 at its own label and at no other listed label, so coordinates can be
    read off at the labels.  Raises InternalInconsistency if d does not
    preserve the span.
    """
    d = []
    for k in range(len(vectors) - 1):
        tgt = {lab: (i, vec) for i, (lab, vec) in enumerate(vectors[k + 1])}
        mat = {}
        for c, (lab, vec) in enumerate(vectors[k]):
            image = complex_.apply(k, vec)
            rebuilt: dict = {}
            for tlab, (r, tvec) in tgt.items():
                coef = image.get(tlab)
                if coef:
                    mat[(r, c)] = coef
                    for key, x in tvec.items():
                        rebuilt[key] = rebuilt.get(key, ZERO) + coef * x
            rebuilt = {key: v for key, v in rebuilt.items() if v}
            if rebuilt != image:
                raise InternalInconsistency(f"{name}: differential leaves the span in degree {k}")
        d.append(mat)
    bases = [[lab for lab, _ in vs] for vs in vectors]
    cx = CochainComplex(bases, d, name, complex_.size, complex_.fork, complex_.graph, complex_.weighting)
    cx.ambient = complex_
    cx.vectors = vectors
    return cx


def _require_fork(complex_: CochainComplex):
    if not complex_.fork:
        raise Unsupported("the involution needs a graph whose vertices 1 and 2 form a fork")


def swap12(label: Label) -> Label:
    low = label & 3
    return (label & ~3) | {0: 0, 1: 2, 2: 1, 3: 3}[low]


def sigma(complex_: CochainComplex, x: Cochain) -> Cochain:
    """Diagram involution: swap vertices 1 and 2, negating strings containing both."""
    _require_fork(complex_)
    out = {}
    for lab, v in x.coeffs.items():
        img = swap12(lab)
        out[img] = -v if lab & 3 == 3 else v
    return Cochain(x.degree, out)


def basis_cochain(k: int, label: Label, coeff=ONE) -> Cochain:
    return Cochain(k, {label: LaurentPoly._coerce(coeff)})


def coboundary(complex_: CochainComplex, x: Cochain) -> Cochain:
    return Cochain(x.degree + 1, complex_.apply(x.degree, x.coeffs))


def split_sigma(complex_: CochainComplex) -> tuple[CochainComplex, CochainComplex]:
    """Invariant and anti-invariant subcomplexes under the involution.

    Invariant basis: e_(0/0)A and e_(0/1)A + e_(1/0)A (labelled by the
    (0/0)A resp. (0/1)A mask).  Anti-invariant basis: e_(1/1)A and
    e_(0/1)A - e_(1/0)A (labelled by (1/1)A resp. (0/1)A).
    """
    _require_fork(complex_)
    inv, anti = [], []
    for basis in complex_.bases:
        iv, av = [], []
        for lab in basis:
            low = lab & 3
            if low == 0:
                iv.append((lab, {lab: ONE}))
            elif low == 1:
                iv.append((lab, {lab: ONE, swap12(lab): ONE}))
                av.append((lab, {lab: ONE, swap12(lab): -ONE}))
            elif low == 3:
                av.append((lab, {lab: ONE}))
        inv.append(iv)
        anti.append(av)
    for k, basis in enumerate(complex_.bases):
        if len(inv[k]) + len(anti[k]) != len(basis):
            raise InternalInconsistency("invariant and anti-invariant ranks do not add up")
    return (restrict(complex_, inv, f"I[{complex_.name}]"),
            restrict(complex_, anti, f"K[{complex_.name}]"))


def sigma_commutes(complex_: CochainComplex) -> bool:
    for k, basis in enumerate(complex_.bases[:-1]):
        for lab in basis:
            x = basis_cochain(k, lab)
            if coboundary(complex_, sigma(complex_, x)) != sigma(complex_, coboundary(complex_, x)):
                return False
    return True


# ---------------------------------------------------------------- chain maps

@dataclass
class ChainMap:
    """Degree-preserving map given on basis labels: ``images[k][label] -> vector``."""

    source: CochainComplex
    target: CochainComplex
    images: list[dict[Label, dict[Label, LaurentPoly]]]
    name: str = ""

    def apply(self, k: int, vec: dict) -> dict:
        out: dict = {}
        for lab, c in vec.items():
            for tlab, x in self.images[k].get(lab, {}).items():
                out[tlab] = out.get(tlab, ZERO) + c * x
        return {key: v for key, v in out.items() if v}

    def check_commutes(self) -> None:
        for k, basis in enumerate(self.source.bases):
            for lab in basis:
                lhs = self.target.apply(k, self.images[k].get(lab, {}))
                rhs = self.apply(k + 1, self.source.apply(k, {lab: ONE})) if k + 1 < len(self.images) else {}
                if lhs != rhs:
                    raise InternalInconsistency(
                        f"{self.name}: d f != f d on {self.source.label_str(lab)} in degree {k}")

    def column_ranks_full(self) -> bool:
        """Each degree's matrix has full column rank (images have distinct pivots)."""
        for k, basis in enumerate(self.source.bases):
            used = set()
            for lab in basis:
                img = self.images[k].get(lab, {})
                if not img:
                    return False
                pivot = min(img)
                if pivot in used:
                    return False
                used.add(pivot)
        return True


def _shift_b_to_tilde_b(label: Label) -> Label:
    """B_n string 1A / 0A to the affine B_n string (0/1)A / (0/0)A."""
    return (label & 1) | ((label >> 1) << 2)


def beta_map(n: int, target: CochainComplex | None = None) -> ChainMap:
    """C(B_n) -> Chat(tildeB_n): 0A -> (0/0)A, 1A -> (1/0)A + (0/1)A."""
    if n < 3:
        raise BadArg("beta needs n >= 3 (the affine B_n graph)")
    source = build_complex(build_graph("B", n), "qt")
    target = target or augmented_tilde_b(n)
    images = []
    for basis in source.bases:
        img = {}
        for lab in basis:
            m = _shift_b_to_tilde_b(lab)
            img[lab] = {m: ONE, swap12(m): ONE} if lab & 1 else {m: ONE}
        images.append(img)
    return ChainMap(source, target, images, "beta")


def beta_onto_invariants(n: int) -> tuple[CochainComplex, CochainComplex, bool]:
    """Compare C(B_n) with the invariant part of Chat(tildeB_n) matrix by matrix."""
    source = build_complex(build_graph("B", n), "qt")
    inv, _ = split_sigma(augmented_tilde_b(n))
    same = True
    for k in range(len(source.bases)):
        relabel = [_shift_b_to_tilde_b(lab) for lab in source.bases[k]]
        if k >= len(inv.bases) or sorted(relabel) != sorted(inv.bases[k]):
            return source, inv, False
    for k, mat in enumerate(source.d):
        for (r, c), v in mat.items():
            rl = _shift_b_to_tilde_b(source.bases[k + 1][r])
            cl = _shift_b_to_tilde_b(source.bases[k][c])
            if inv.d[k].get((inv.index[k + 1][rl], inv.index[k][cl])) != v:
                same = False
        if len(mat) != len(inv.d[k]):
            same = False
    return source, inv, same


def _sub_with_vertex1(complex_: CochainComplex, name: str) -> CochainComplex:
    vectors = [[(lab, {lab: ONE}) for lab in basis if lab & 1] for basis in complex_.bases]
    return restrict(complex_, vectors, name)


def build_G1(n: int) -> CochainComplex:
    """Subcomplex of C(D_n) (q weighting) spanned by strings (0/1)A and (1/1)A."""
    if n < 2:
        raise BadArg("G1 needs n >= 2")
    return _sub_with_vertex1(build_complex(build_graph("D", n), "q"), f"G1_{n}")


def build_oC(n: int, augmented: CochainComplex | None = None) -> CochainComplex:
    """Span of (0/1)A and (1/1)A inside Chat(tildeB_n)."""
    return _sub_with_vertex1(augmented or augmented_tilde_b(n), f"oC_{n}")


def kappa_map(n: int, augmented: CochainComplex | None = None) -> ChainMap:
    """oC_n -> Chat(tildeB_n): (0/1)A -> (0/1)A - (1/0)A, (1/1)A -> 2 (1/1)A."""
    target = augmented or augmented_tilde_b(n)
    source = build_oC(n, target)
    images = []
    for basis in source.bases:
        img = {}
        for lab in basis:
            if lab & 3 == 3:
                img[lab] = {lab: LaurentPoly.const(2)}
            else:
                img[lab] = {lab: ONE, swap12(lab): -ONE}
        images.append(img)
    return ChainMap(source, target, images, "kappa")


# ---------------------------------------------------------------- anti-invariant generators

def _ones(k: int) -> str:
    if k < 0:
        raise BadArg("ill-formed string: negative run of ones")
    return "1" * k


def generator_string(kind: str, mu: int, k: int, h: int) -> str:
    """Binary string x with o_{mu,k}[h] or e_{mu,k}[h] = d(x) / phi_{2h}, in (v2/v1)tail notation."""
    if h < 1 or mu < 0 or k < 0:
        raise BadArg("need h >= 1, mu >= 0, k >= 0")
    def s_h() -> str:
        return "0" + _ones(h - 2)

    l_h = "0" + _ones(h)
    i, odd = divmod(k, 2)
    if kind == "o":
        if mu == 0:
            col, tail = "(0/1)", _ones(h - 1)
        else:
            col, tail = "(1/1)", _ones(2 * mu * h - 2) + "0" + _ones(h)
        if i:
            tail += (s_h() + l_h) * i
        if odd:
            tail += s_h()
    elif kind == "e":
        if mu < 1:
            raise BadArg("e-generators need mu >= 1")
        col, tail = "(1/1)", _ones((2 * mu - 1) * h - 1) + "0" + _ones(h - 2)
        if i:
            tail += (l_h + s_h()) * i
        if odd:
            tail += l_h
    else:
        raise BadArg("kind must be 'o' or 'e'")
    return col + tail


def anti_generator(kind: str, mu: int, k: int, h: int, n: int,
                   g1: CochainComplex | None = None) -> Cochain:
    """The cocycle (1/phi_{2h}) d(x) in G1_n for the generator string x."""
    from .coxeter import parse_subset

    text = generator_string(kind, mu, k, h)
    label = parse_subset(text)
    length = len(text) - 3  # "(a/b)" counts as two vertices
    if length != n:
        raise BadArg(f"{kind}_{{{mu},{k}}}[{h}] has length {length}, not {n}")
    g1 = g1 or build_G1(n)
    deg = popcount(label)
    dx = g1.apply(deg, {label: ONE})
    phi = cyclotomic(2 * h)
    coeffs = {lab: v.exact_div(phi) for lab, v in dx.items()}
    out = Cochain(deg + 1, coeffs)
    if coboundary(g1, out).coeffs:
        raise InternalInconsistency("anti-invariant generator is not a cocycle")
    return out


def admissible_generators(n: int) -> tuple[list[tuple], list[tuple]]:
    """Generators attached to each h dividing n evenly or n - 1 oddly.

    Returns ``(well_formed, rejected)`` lists of ``(kind, mu, k, h, degree)``;
    rejected entries would need a string with a negative run of ones.
    """
    cand = []
    for h in range(1, n + 1):
        if n % (2 * h) == 0:
            lam = n // (2 * h)
            for s in range(lam):
                cand.append(("e", lam - s, 2 * s, h, n - 2 * s))
                cand.append(("o", lam - s - 1, 2 * s + 1, h, n - 2 * s - 1))
        if (n - 1) % h == 0 and ((n - 1) // h) % 2 == 1:
            lam = ((n - 1) // h - 1) // 2
            for s in range(lam + 1):
                cand.append(("o", lam - s, 2 * s, h, n - 2 * s))
            for s in range(lam):
                cand.append(("e", lam - s, 2 * s + 1, h, n - 2 * s - 1))
    good, bad = [], []
    for g in cand:
        try:
            generator_string(*g[:4])
        except BadArg:
            bad.append(g)
            continue
        good.append(g)
    return good, bad
