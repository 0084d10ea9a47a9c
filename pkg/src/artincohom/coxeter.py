"""Coxeter graphs, parabolic subsets and a brute-force element enumerator.

Subsets of the generating set are plain ``int`` bitmasks: vertex ``v``
(numbered from 1) is bit ``v - 1``.  Vertex numbering for the B, D and affine
B families follows the usual convention for the fork: vertices 1 and 2 are
the two leaves attached to vertex 3, and the label-4 edge sits at the far
end of the chain.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import BadArg, BadInclusion, RankTooSmall, TooLarge, Unsupported

INF = math.inf
MAX_VERTICES = 63
DEFAULT_MAX_ORDER = 10**5


@dataclass(frozen=True)
class CoxeterGraph:
    """Vertices ``1..N`` and a symmetric Coxeter matrix.

    ``t_vertex`` marks the generator sent to (-t) by the two-parameter local
    system (the label-4 leaf for B and affine B); it is None otherwise.
    """

    matrix: tuple[tuple, ...]
    family: str | None = None
    rank: int | None = None
    t_vertex: int | None = None

    def __post_init__(self):
        n = len(self.matrix)
        if n > MAX_VERTICES:
            raise BadArg(f"at most {MAX_VERTICES} vertices are supported")
        for i in range(n):
            if len(self.matrix[i]) != n:
                raise BadArg("Coxeter matrix must be square")
            if self.matrix[i][i] != 1:
                raise BadArg("Coxeter matrix diagonal must be 1")
            for j in range(i + 1, n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise BadArg("Coxeter matrix must be symmetric")
                if not (m == INF or (isinstance(m, int) and m >= 2)):
                    raise BadArg(f"bad Coxeter label m({i + 1},{j + 1}) = {m}")
        if self.t_vertex is not None and not 1 <= self.t_vertex <= n:
            raise BadArg("t_vertex out of range")

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def vertices(self) -> list[int]:
        return list(range(1, self.size + 1))

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def m(self, s: int, t: int):
        return self.matrix[s - 1][t - 1]

    def edges(self) -> list[tuple[int, int, object]]:
        """Pairs with label >= 3 (including infinity)."""
        return [
            (s, t, self.m(s, t))
            for s, t in itertools.combinations(self.vertices, 2)
            if self.m(s, t) != 2
        ]

    def neighbours(self, s: int, within: int | None = None) -> list[int]:
        within = self.full_mask if within is None else within
        return [
            t for t in self.vertices
            if t != s and self.m(s, t) != 2 and within >> (t - 1) & 1
        ]

    def has_fork(self) -> bool:
        """Vertices 1 and 2 are interchangeable leaves hanging off vertex 3."""
        if self.size < 3 or self.m(1, 2) != 2:
            return False
        return all(self.m(1, v) == self.m(2, v) for v in self.vertices[2:]) and self.m(1, 3) == 3

    # serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": [[s, t, "inf" if m == INF else m] for s, t, m in self.edges()],
            "family": self.family,
            "rank": self.rank,
            "t_vertex": self.t_vertex,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoxeterGraph":
        n = len(data["vertices"])
        mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for s, t, m in data["edges"]:
            m = INF if m in ("inf", "infinity") else int(m)
            mat[s - 1][t - 1] = mat[t - 1][s - 1] = m
        return cls(tuple(map(tuple, mat)), data.get("family"), data.get("rank"), data.get("t_vertex"))


def graph_from_edges(n: int, edges, family=None, rank=None, t_vertex=None) -> CoxeterGraph:
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for s, t, m in edges:
        mat[s - 1][t - 1] = mat[t - 1][s - 1] = m
    return CoxeterGraph(tuple(map(tuple, mat)), family, rank, t_vertex)


FAMILIES = ("A", "B", "D", "tildeB", "tildeA", "tildeC")


def build_graph(family: str, rank: int) -> CoxeterGraph:
    """Coxeter graph of the given family with the standard vertex numbering."""
    if family not in FAMILIES:
        raise BadArg(f"unknown family {family!r}; expected one of {FAMILIES}")
    minimum = {"A": 1, "B": 2, "D": 2, "tildeB": 3, "tildeA": 2, "tildeC": 2}[family]
    if rank < minimum:
        raise RankTooSmall(f"{family}_{rank}: rank must be >= {minimum}")
    n = rank
    if family == "A":
        return graph_from_edges(n, [(i, i + 1, 3) for i in range(1, n)], family, n)
    if family == "B":
        edges = [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 1, n, 4)]
        return graph_from_edges(n, edges, family, n, t_vertex=n)
    if family == "D":
        edges = []
        if n >= 3:
            edges = [(1, 3, 3), (2, 3, 3)] + [(i, i + 1, 3) for i in range(3, n)]
        return graph_from_edges(n, edges, family, n)
    if family == "tildeB":
        edges = [(1, 3, 3), (2, 3, 3)] + [(i, i + 1, 3) for i in range(3, n)] + [(n, n + 1, 4)]
        return graph_from_edges(n + 1, edges, family, n, t_vertex=n + 1)
    if family == "tildeA":
        if n == 1:
            return graph_from_edges(2, [(1, 2, INF)], family, n)
        edges = [(i, i + 1, 3) for i in range(1, n + 1)] + [(1, n + 1, 3)]
        return graph_from_edges(n + 1, edges, family, n)
    # tildeC
    edges = [(1, 2, 4)] + [(i, i + 1, 3) for i in range(2, n)] + [(n, n + 1, 4)]
    return graph_from_edges(n + 1, edges, family, n)


# ---------------------------------------------------------------- subsets

def mask_of(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << (v - 1)
    return out


def members(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bitstring(mask: int, size: int) -> str:
    """Characteristic string in vertex order (vertex 1 first)."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(size))


def fork_string(mask: int, size: int) -> str:
    """Stacked notation ``(v2/v1)tail`` for graphs with a fork at vertices 1, 2."""
    top = mask >> 1 & 1
    bottom = mask & 1
    return f"({top}/{bottom})" + bitstring(mask >> 2, size - 2)


def parse_subset(text: str) -> int:
    """Inverse of ``bitstring`` and ``fork_string``."""
    text = text.strip()
    if text.startswith("("):
        top, rest = text[1:].split("/", 1)
        bottom, tail = rest.split(")", 1)
        bits = bottom + top + tail
    else:
        bits = text
    if set(bits) - {"0", "1"}:
        raise BadArg(f"bad subset string {text!r}")
    return sum(1 << i for i, b in enumerate(bits) if b == "1")


def components(graph: CoxeterGraph, mask: int) -> list[int]:
    """Connected components of the induced subgraph, as masks, in vertex order."""
    seen = 0
    out = []
    for v in members(mask):
        if seen >> (v - 1) & 1:
            continue
        comp = 0
        stack = [v]
        while stack:
            u = stack.pop()
            if comp >> (u - 1) & 1:
                continue
            comp |= 1 << (u - 1)
            stack.extend(w for w in graph.neighbours(u, mask) if not comp >> (w - 1) & 1)
        seen |= comp
        out.append(comp)
    return out


@dataclass(frozen=True)
class ComponentType:
    """Finite type of a connected parabolic plus a standard vertex ordering.

    ``order`` lists the component's vertices so that they match the standard
    simple roots of ``kind``: along the path for A/B/H/I (for B ending at the
    label-4 end), and for D the two short leaves first, then the long arm
    starting at the branch vertex.
    """

    kind: str
    rank: int
    order: tuple[int, ...]
    label: int | None = None  # m for I_2(m)

    @property
    def name(self) -> str:
        return f"I2({self.label})" if self.kind == "I" else f"{self.kind}{self.rank}"


def _path_order(graph, mask, vs) -> list[int] | None:
    ends = [v for v in vs if len(graph.neighbours(v, mask)) == 1]
    if len(vs) == 1:
        return list(vs)
    if len(ends) != 2 or any(len(graph.neighbours(v, mask)) > 2 for v in vs):
        return None
    order = [min(ends)]
    prev = None
    while len(order) < len(vs):
        nxt = [w for w in graph.neighbours(order[-1], mask) if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def classify_component(graph: CoxeterGraph, comp: int) -> ComponentType | None:
    """Identify a connected induced subgraph in the finite-type table, else None."""
    vs = members(comp)
    k = len(vs)
    n_edges = sum(len(graph.neighbours(v, comp)) for v in vs) // 2
    if n_edges != k - 1:
        return None  # contains a cycle
    labels = [graph.m(s, t) for s, t in itertools.combinations(vs, 2) if graph.m(s, t) != 2]
    if any(m == INF for m in labels):
        return None
    big = [m for m in labels if m > 3]
    degrees = {v: len(graph.neighbours(v, comp)) for v in vs}
    path = _path_order(graph, comp, vs)
    if k == 1:
        return ComponentType("A", 1, tuple(vs))
    if not big:
        if path is not None:
            return ComponentType("A", k, tuple(path))
        branch = [v for v in vs if degrees[v] >= 3]
        if len(branch) != 1 or degrees[branch[0]] != 3:
            return None
        c = branch[0]
        arms = []
        for start in graph.neighbours(c, comp):
            arm = [start]
            prev = c
            while True:
                nxt = [w for w in graph.neighbours(arm[-1], comp) if w != prev]
                if not nxt:
                    break
                prev = arm[-1]
                arm.append(nxt[0])
            arms.append(arm)
        arms.sort(key=lambda a: (len(a), a))
        lens = tuple(len(a) for a in arms)
        if lens[0] == 1 and lens[1] == 1:
            return ComponentType("D", k, tuple([arms[0][0], arms[1][0], c] + arms[2]))
        if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
            return ComponentType("E", k, tuple([c] + sum(arms, [])))
        return None
    if len(big) > 1 or path is None:
        return None
    m = big[0]
    pos = [i for i in range(k - 1) if graph.m(path[i], path[i + 1]) == m][0]
    if k == 2:
        if m == 4:
            if graph.t_vertex == path[0]:
                path = path[::-1]
            return ComponentType("B", 2, tuple(path), 4)
        if m == 6:
            return ComponentType("G", 2, tuple(path), 6)
        return ComponentType("I", 2, tuple(path), m)
    if m == 4:
        if pos == 0:
            return ComponentType("B", k, tuple(reversed(path)))
        if pos == k - 2:
            return ComponentType("B", k, tuple(path))
        if k == 4 and pos == 1:
            return ComponentType("F", 4, tuple(path))
        return None
    if m == 5 and k in (3, 4):
        if pos == 0:
            return ComponentType("H", k, tuple(reversed(path)))
        if pos == k - 2:
            return ComponentType("H", k, tuple(path))
    return None


def finite_type(graph: CoxeterGraph, mask: int) -> bool:
    """True iff every component of the induced subgraph is of finite type."""
    if mask & ~graph.full_mask:
        raise BadArg("subset not contained in the vertex set")
    return all(classify_component(graph, c) is not None for c in components(graph, mask))


def enumerate_finite_subsets(graph: CoxeterGraph, k: int) -> list[int]:
    """All finite-type subsets of size k in ascending bitmask order."""
    if not 0 <= k <= graph.size:
        raise BadArg("subset size out of range")
    masks = [mask_of(c) for c in itertools.combinations(graph.vertices, k)]
    return sorted(m for m in masks if finite_type(graph, m))


def alpha(gamma: int, gamma_prime: int) -> int:
    """Number of elements of gamma below the unique vertex of gamma' \\ gamma."""
    extra = gamma_prime & ~gamma
    if gamma & ~gamma_prime or popcount(extra) != 1:
        raise BadInclusion(f"{members(gamma)} -> {members(gamma_prime)} is not a codimension-1 inclusion")
    return popcount(gamma & (extra - 1))


def generator_classes(graph: CoxeterGraph) -> dict[int, int]:
    """Map vertex -> class representative (smallest vertex) under odd-label edges."""
    rep = {v: v for v in graph.vertices}

    def find(v):
        while rep[v] != v:
            rep[v] = rep[rep[v]]
            v = rep[v]
        return v

    for s, t, m in graph.edges():
        if m != INF and m % 2 == 1:
            a, b = find(s), find(t)
            rep[max(a, b)] = min(a, b)
    return {v: find(v) for v in graph.vertices}


# ---------------------------------------------------------------- element enumerator

Signed = tuple[tuple[int, int], ...]  # image of e_i is sign * e_j, stored as (j, sign)


@dataclass(frozen=True)
class GroupElement:
    """A signed permutation with its Coxeter length and per-class letter counts."""

    perm: Signed
    length: int
    class_counts: dict = field(hash=False, compare=False, default_factory=dict)

    @property
    def sign_changes(self) -> int:
        return sum(1 for _, s in self.perm if s < 0)


def _reflection(root: tuple[int, ...]) -> Signed:
    """Signed permutation for the reflection in a root of shape e_i, e_i - e_j or e_i + e_j."""
    dim = len(root)
    img = [(i, 1) for i in range(dim)]
    nz = [i for i, c in enumerate(root) if c]
    if len(nz) == 1:
        i = nz[0]
        img[i] = (i, -1)
    else:
        i, j = nz
        if root[i] == -root[j]:
            img[i], img[j] = (j, 1), (i, 1)
        else:
            img[i], img[j] = (j, -1), (i, -1)
    return tuple(img)


def _compose(a: Signed, b: Signed) -> Signed:
    """a after b."""
    out = []
    for j, s in b:
        k, t = a[j]
        out.append((k, s * t))
    return tuple(out)


def _act(w: Signed, v: tuple) -> tuple:
    out = [0] * len(v)
    for i, c in enumerate(v):
        if c:
            j, s = w[i]
            out[j] += s * c
    return tuple(out)


@dataclass
class _Realization:
    dim: int
    simple: dict  # vertex -> root vector
    rho: tuple


def _realize(graph: CoxeterGraph, mask: int) -> _Realization:
    """Signed-permutation realization of the parabolic subgroup on ``mask``."""
    blocks = []
    for comp in components(graph, mask):
        ct = classify_component(graph, comp)
        if ct is None or ct.kind not in ("A", "B", "D"):
            raise Unsupported(f"element enumeration supports A/B/D components, got {ct and ct.name}")
        blocks.append(ct)
    dim = sum(ct.rank + 1 if ct.kind == "A" else ct.rank for ct in blocks)
    simple = {}
    rho = [0] * dim
    off = 0
    for ct in blocks:
        k = ct.rank

        def e(i, sign=1):
            v = [0] * dim
            v[off + i] = sign
            return v

        def plus(a, b):
            return tuple(x + y for x, y in zip(a, b))

        if ct.kind == "A":
            for i, v in enumerate(ct.order):
                simple[v] = plus(e(i), e(i + 1, -1))
            for i in range(k + 1):
                rho[off + i] = k - i
            off += k + 1
        elif ct.kind == "B":
            for i, v in enumerate(ct.order[:-1]):
                simple[v] = plus(e(i), e(i + 1, -1))
            simple[ct.order[-1]] = tuple(e(k - 1))
            for i in range(k):
                rho[off + i] = k - i
            off += k
        else:
            a, b, c, *arm = ct.order
            simple[a] = plus(e(1), e(0, -1))
            simple[b] = plus(e(1), e(0))
            for i, v in enumerate([c] + arm):
                simple[v] = plus(e(i + 2), e(i + 1, -1))
            for i in range(k):
                rho[off + i] = i
            off += k
    return _Realization(dim, simple, tuple(rho))


def max_order() -> int:
    return int(os.environ.get("ARTIN_MAX_ORDER", DEFAULT_MAX_ORDER))


def enumerate_elements(graph: CoxeterGraph, mask: int | None = None,
                       bound: int | None = None) -> Iterator[GroupElement]:
    """Yield every element of the (parabolic) group exactly once.

    Lengths are inversion counts against the positive roots; class counts come
    from a greedy reduced word that repeatedly strips a right descent.
    """
    mask = graph.full_mask if mask is None else mask
    bound = max_order() if bound is None else bound
    real = _realize(graph, mask)
    gens = {v: _reflection(r) for v, r in real.simple.items()}
    identity = tuple((i, 1) for i in range(real.dim))

    seen = {identity}
    queue = deque([identity])
    elements = []
    while queue:
        w = queue.popleft()
        elements.append(w)
        for g in gens.values():
            x = _compose(w, g)
            if x not in seen:
                if len(seen) >= bound:
                    raise TooLarge(f"group order exceeds bound {bound}")
                seen.add(x)
                queue.append(x)

    # positive roots: orbit of the simple roots, positive against rho
    roots = set(real.simple.values())
    frontier = list(roots)
    while frontier:
        r = frontier.pop()
        for g in gens.values():
            x = _act(g, r)
            if x not in roots:
                roots.add(x)
                frontier.append(x)
    rho = real.rho
    positive = [r for r in roots if sum(a * b for a, b in zip(r, rho)) > 0]

    def is_neg(v):
        return sum(a * b for a, b in zip(v, rho)) < 0

    def length(w):
        return sum(1 for r in positive if is_neg(_act(w, r)))

    classes = generator_classes(graph)
    order = sorted(gens)
    for w in elements:
        counts: dict = {}
        cur = w
        steps = 0
        while cur != identity:
            s = next(v for v in order if is_neg(_act(cur, real.simple[v])))
            cur = _compose(cur, gens[s])
            counts[classes[s]] = counts.get(classes[s], 0) + 1
            steps += 1
        if steps != length(w):
            raise AssertionError("greedy word length disagrees with inversion count")
        yield GroupElement(w, steps, counts)
