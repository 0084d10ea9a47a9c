"""Poincare series of finite parabolic subgroups.

``poincare`` uses product formulas per connected component; ``poincare_oracle``
sums over every group element instead and shares no code with it beyond the
graph model.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .coxeter import (
    CoxeterGraph,
    classify_component,
    components,
    enumerate_elements,
    generator_classes,
    members,
)
from .errors import BadArg, Unsupported
from .laurent import LaurentPoly
from .qanalogs import (
    expand,
    q_double_factorial_factors,
    q_factorial_factors,
    q_int_factors,
    qt_double_factorial_factors,
)

WEIGHTINGS = ("q", "qt")

# fundamental degrees of the exceptional types
_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("H", 3): (2, 6, 10),
    ("H", 4): (2, 12, 20, 30),
}


def _q_factors(kind: str, k: int, label: int | None) -> Counter:
    if kind == "A":
        return q_factorial_factors(k + 1)
    if kind == "B":
        return q_double_factorial_factors(2 * k)
    if kind == "D":
        return q_double_factorial_factors(2 * (k - 1)) + q_int_factors(k)
    if kind in ("I", "G"):
        return q_int_factors(2) + q_int_factors(label)
    out: Counter = Counter()
    for d in _DEGREES[(kind, k)]:
        out += q_int_factors(d)
    return out


def _check_weighting(graph: CoxeterGraph, weighting: str):
    if weighting not in WEIGHTINGS:
        raise BadArg(f"weighting must be one of {WEIGHTINGS}")
    if weighting == "qt" and graph.t_vertex is None:
        raise Unsupported("qt weighting needs a graph with a designated t-generator")


def poincare_factors(graph: CoxeterGraph, mask: int, weighting: str = "q") -> Counter:
    """Factored Poincare series of the parabolic subgroup on ``mask``."""
    return _poincare_factors(graph, mask, weighting).copy()


@lru_cache(maxsize=100_000)
def _poincare_factors(graph: CoxeterGraph, mask: int, weighting: str) -> Counter:
    _check_weighting(graph, weighting)
    out: Counter = Counter()
    for comp in components(graph, mask):
        ct = classify_component(graph, comp)
        if ct is None:
            raise BadArg(f"parabolic on {members(mask)} is not of finite type")
        tv = graph.t_vertex
        if weighting == "qt" and tv is not None and comp >> (tv - 1) & 1:
            ok = (ct.kind == "B" and ct.order[-1] == tv) or (ct.kind == "A" and ct.rank == 1)
            if not ok:
                raise Unsupported(f"component {ct.name} carries the t-generator off its label-4 end")
            out += qt_double_factorial_factors(ct.rank)
        else:
            out += _q_factors(ct.kind, ct.rank, ct.label)
    return out


def poincare(graph: CoxeterGraph, mask: int, weighting: str = "q") -> LaurentPoly:
    return expand(_poincare_factors(graph, mask, weighting))


def poincare_oracle(graph: CoxeterGraph, mask: int, weighting: str = "q",
                    bound: int | None = None) -> LaurentPoly:
    """Brute-force sum of (-1)^l(w) eta(w) over the parabolic subgroup.

    eta sends a generator to -q, or to -t for the t-generator's class under
    the qt weighting, so each element contributes q^a t^b with a + b = l(w).
    """
    _check_weighting(graph, weighting)
    classes = generator_classes(graph)
    t_class = classes[graph.t_vertex] if weighting == "qt" else None
    terms: dict = {}
    for w in enumerate_elements(graph, mask, bound):
        b = w.class_counts.get(t_class, 0) if t_class is not None else 0
        a = w.length - b
        sign = (-1) ** w.length
        # (-1)^l(w) * (-q)^a (-t)^b
        coeff = sign * (-1) ** a * (-1) ** b
        terms[(a, b)] = terms.get((a, b), 0) + coeff
    return LaurentPoly(terms)
