from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from artincohom.coxeter import build_graph, mask_of, parse_subset, popcount
from artincohom.errors import BadArg, InternalInconsistency, Unsupported
from artincohom.fields import RationalField, rank
from artincohom.laurent import ONE, Q, T, LaurentPoly, one_plus_tq
from artincohom.qanalogs import cyclotomic, q_double_factorial, q_int
from artincohom.salvetti import (
    Cochain,
    CochainComplex,
    admissible_generators,
    anti_generator,
    augment_tilde_b,
    augmented_tilde_b,
    basis_cochain,
    beta_map,
    beta_onto_invariants,
    build_complex,
    build_G1,
    build_oC,
    coboundary,
    generator_string,
    kappa_map,
    quasi_poincare_tilde_b,
    sigma,
    sigma_commutes,
    split_sigma,
)


def test_tilde_b3_dims():
    cx = build_complex(build_graph("tildeB", 3), "qt")
    assert cx.dims() == [1, 4, 6, 4]


@pytest.mark.parametrize("n", range(3, 8))
def test_tilde_b_dims_are_binomials(n):
    cx = build_complex(build_graph("tildeB", n), "qt")
    assert cx.dims() == [comb(n + 1, k) for k in range(n + 1)]


def test_b2_first_coboundary():
    cx = build_complex(build_graph("B", 2), "qt")
    image = cx.apply(0, {0: ONE})
    assert image == {mask_of([1]): 1 + Q, mask_of([2]): 1 + T}


def test_factored_division_agrees_with_expanded_division():
    g = build_graph("tildeB", 4)
    a = build_complex(g, "qt")
    b = build_complex(g, "qt", check_division=True)
    assert a.d == b.d


def test_quasi_poincare_n3():
    w = quasi_poincare_tilde_b(3)
    assert w == q_double_factorial(4) * q_int(3) * one_plus_tq(0) * one_plus_tq(1) * one_plus_tq(2)
    # [4]!! [3] 2^3 at q = t = 1
    assert w.evaluate(1, 1) == 8 * 3 * 8


def test_augmentation_n3():
    cx = augmented_tilde_b(3)
    assert cx.dims() == [1, 4, 6, 4, 1]
    top = cx.d[3]
    assert len(top) == 4 and all(r == 0 for r, _ in top)
    g = cx.graph
    w = quasi_poincare_tilde_b(3)
    from artincohom.poincare import poincare

    for (_, c), v in top.items():
        gamma = cx.bases[3][c]
        assert v in (w.exact_div(poincare(g, gamma, "qt")), -w.exact_div(poincare(g, gamma, "qt")))
    # Gamma = S minus the last vertex: alpha counts all n smaller vertices
    last = g.full_mask & ~(1 << g.size - 1)
    c = cx.index[3][last]
    assert (top[(0, c)] == w.exact_div(poincare(g, last, "qt"))) == (3 % 2 == 0)
    cx.check_d_squared()


def test_augmentation_needs_affine_complex():
    with pytest.raises(BadArg):
        augment_tilde_b(build_complex(build_graph("B", 3), "qt"), 3)


def test_d_squared_detects_corruption():
    cx = build_complex(build_graph("B", 3), "qt")
    bad = CochainComplex(cx.bases, [dict(m) for m in cx.d], "bad")
    key = next(iter(bad.d[0]))
    bad.d[0][key] = bad.d[0][key] + ONE
    with pytest.raises(InternalInconsistency):
        bad.check_d_squared()


def test_sigma_rules():
    cx = build_complex(build_graph("tildeB", 3), "qt")
    both = parse_subset("(1/1)00")
    assert sigma(cx, basis_cochain(2, both)) == Cochain(2, {both: -ONE})
    none = parse_subset("(0/0)11")
    assert sigma(cx, basis_cochain(2, none)) == basis_cochain(2, none)
    a, b = parse_subset("(0/1)10"), parse_subset("(1/0)10")
    assert sigma(cx, basis_cochain(2, a)) == basis_cochain(2, b)
    for k, basis in enumerate(cx.bases):
        for lab in basis:
            x = basis_cochain(k, lab, 1 + T)
            assert sigma(cx, sigma(cx, x)) == x
    with pytest.raises(Unsupported):
        sigma(build_complex(build_graph("B", 3), "qt"), basis_cochain(0, 0))


def _sigma_eigenspace_dims(cx, k):
    """Ranks of the projectors (1 +- sigma) / 2 on C^k, as dense rational matrices."""
    basis = cx.bases[k]
    dims = []
    for sign in (1, -1):
        rows = []
        for lab in basis:
            img = sigma(cx, basis_cochain(k, lab)).coeffs
            row = [Fraction(0)] * len(basis)
            row[cx.index[k][lab]] += Fraction(1, 2)
            for tlab, v in img.items():
                row[cx.index[k][tlab]] += sign * Fraction(v.coeff(0, 0), 2)
            rows.append(row)
        dims.append(rank(rows, RationalField()))
    return dims


def test_split_tilde_b3_degree_two():
    cx = build_complex(build_graph("tildeB", 3), "qt")
    inv, anti = split_sigma(cx)
    assert (inv.dims()[2], anti.dims()[2]) == tuple(_sigma_eigenspace_dims(cx, 2)) == (3, 3)


@pytest.mark.parametrize("n", range(3, 7))
def test_split_dims_match_projector_ranks(n):
    cx = augmented_tilde_b(n)
    inv, anti = split_sigma(cx)
    for k in range(len(cx.bases)):
        assert [inv.dims()[k], anti.dims()[k]] == _sigma_eigenspace_dims(cx, k)
        assert inv.dims()[k] + anti.dims()[k] == cx.dims()[k]
    assert sigma_commutes(cx)
    inv.check_d_squared()
    anti.check_d_squared()


def test_beta():
    n = 4
    beta = beta_map(n)
    beta.check_commutes()
    assert beta.images[0][0] == {parse_subset("(0/0)000"): ONE}
    src, inv, same = beta_onto_invariants(n)
    assert same
    assert src.dims() == inv.dims()[: n + 1]
    assert beta.column_ranks_full()


def test_g1_dims():
    g1 = build_G1(4)
    # strings (0/1)A or (1/1)A: vertex 1 present, any subset of vertices 2..4
    expected = [sum(1 for m in range(16) if m & 1 and popcount(m) == k) for k in range(5)]
    assert g1.dims() == expected == [0, 1, 3, 3, 1]
    assert all(v.is_t_free() for mat in g1.d for v in mat.values())
    g1.check_d_squared()


def test_kappa():
    kappa = kappa_map(4)
    kappa.check_commutes()
    assert kappa.column_ranks_full()
    oc = build_oC(4)
    _, anti = split_sigma(augmented_tilde_b(4))
    assert oc.dims() == anti.dims()


def test_generator_strings():
    assert generator_string("o", 0, 0, 3) == "(0/1)11"
    assert generator_string("o", 0, 1, 3) == "(0/1)1101"
    assert generator_string("e", 1, 0, 2) == "(1/1)10"
    with pytest.raises(BadArg):
        generator_string("e", 0, 0, 2)
    with pytest.raises(BadArg):
        generator_string("o", 0, 1, 1)  # s_h needs h >= 2
    with pytest.raises(BadArg):
        generator_string("x", 0, 0, 2)


@pytest.mark.parametrize("h", range(1, 6))
def test_top_generator_o00(h):
    n = h + 1
    g1 = build_G1(n)
    x = anti_generator("o", 0, 0, h, n, g1)
    assert x.degree == n
    # phi_2h times the cocycle is the coboundary of the string
    label = parse_subset(generator_string("o", 0, 0, h))
    dx = g1.apply(n - 1, {label: ONE})
    assert {k: v * cyclotomic(2 * h) for k, v in x.coeffs.items()} == dx
    assert coboundary(g1, x).is_zero()


def test_generator_length_mismatch():
    with pytest.raises(BadArg):
        anti_generator("o", 0, 0, 3, 5)


def test_admissible_generators_n4():
    good, rejected = admissible_generators(4)
    kinds = {(k, mu, kk, h) for k, mu, kk, h, _ in good}
    assert kinds == {("e", 1, 0, 2), ("o", 0, 0, 3), ("o", 0, 1, 2), ("o", 1, 0, 1)}
    # h = 1 strings that would need a negative run of ones
    assert {g[:4] for g in rejected} >= {("e", 2, 0, 1)}
    for kind, mu, k, h, degree in good:
        x = anti_generator(kind, mu, k, h, 4)
        assert x.degree == degree


def test_restricted_complex_rejects_unstable_span():
    from artincohom.salvetti import restrict

    cx = build_complex(build_graph("B", 2), "qt")
    vectors = [[(0, {0: ONE})], [(1, {1: ONE})], []]
    with pytest.raises(InternalInconsistency):
        restrict(cx, vectors, "bad")


def test_dump_format():
    cx = augmented_tilde_b(3)
    text = cx.dump()
    lines = text.splitlines()
    assert lines[0] == "# complex Chat(tildeB_3)"
    assert "basis 4: 0=(1/1)11" in lines
    assert "degree 3: rows=1 cols=4" in lines
    header = lines.index("degree 0: rows=4 cols=1")
    r, c, poly = lines[header + 1].split(" ", 2)
    from artincohom.laurent import parse

    assert parse(poly) == cx.d[0][(int(r), int(c))]


def test_euler_characteristics():
    assert build_complex(build_graph("tildeB", 3), "qt").euler_characteristic() == -1
    assert build_complex(build_graph("tildeB", 4), "qt").euler_characteristic() == 1
    for n in range(3, 7):
        assert augmented_tilde_b(n).euler_characteristic() == 0


def test_laurent_coefficients_of_differentials_are_polynomials():
    cx = augmented_tilde_b(5)
    for mat in cx.d:
        for v in mat.values():
            assert isinstance(v, LaurentPoly)
            qlo, _ = v.q_range()
            tlo, _ = v.t_range()
            assert qlo >= 0 and tlo >= 0
