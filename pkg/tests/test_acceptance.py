"""Acceptance criteria 1-11, one logged PASS/FAIL line per check.

Two literal readings are known not to hold and are marked as strict xfails:
the affine top-degree statement (7) and the chamber counts of the arrangement
as literally defined (9).  Their reconciled readings are checked alongside.
"""
from __future__ import annotations

from math import factorial

import pytest

from artincohom import theorems as th
from artincohom.coxeter import build_graph, enumerate_finite_subsets
from artincohom.laurent import ONE, Q
from artincohom.modules import ModuleExpr, phimod
from artincohom.poincare import poincare, poincare_oracle
from artincohom.qanalogs import cyclotomic, q_double_factorial, qt_double_factorial
from artincohom.salvetti import (
    admissible_generators,
    anti_generator,
    augmented_tilde_b,
    beta_map,
    build_complex,
    build_G1,
    build_oC,
    coboundary,
    generator_string,
    kappa_map,
    quasi_poincare_tilde_b,
    sigma_commutes,
    split_sigma,
)
from artincohom.coxeter import parse_subset
from artincohom.verify import verify, verify_generators


def _failed(rep: dict) -> list:
    bad = [p for p in rep["probes"] if not p["pass"]]
    return bad + [c for c in rep.get("checks", []) if not c["pass"]]


# 1 ------------------------------------------------------------------------

def test_criterion_1_d_squared(record):
    built = []
    for n in range(2, 9):
        built += [build_complex(build_graph("B", n), "qt"), build_complex(build_graph("D", n), "q"),
                  build_G1(n)]
        if n >= 3:
            built += [build_complex(build_graph("tildeB", n), "qt"), augmented_tilde_b(n), build_oC(n)]
    for cx in built:
        cx.check_d_squared()
    assert record("1", True, f"d^2 = 0 on {len(built)} complexes")


# 2 ------------------------------------------------------------------------

@pytest.mark.parametrize("family,n,weightings", [
    ("B", 3, ("q", "qt")), ("B", 4, ("q", "qt")), ("D", 4, ("q",)), ("A", 3, ("q",)),
])
def test_criterion_2_poincare_oracle(record, family, n, weightings):
    g = build_graph(family, n)
    count = 0
    bad = []
    for w in weightings:
        for k in range(g.size + 1):
            for mask in enumerate_finite_subsets(g, k):
                count += 1
                if poincare(g, mask, w) != poincare_oracle(g, mask, w):
                    bad.append((w, mask))
    assert record(f"2 {family}{n}", not bad, f"{count} parabolics") and not bad


# 3 ------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 7))
def test_criterion_3_main3(record, n):
    rep = verify("main3", n)
    top = 2 + n // 2
    expected = [1] + [2] * (n - 2) + [top, top]
    ok = rep["pass"] and rep["dims"] == expected
    assert record(f"3 n={n}", ok, f"dims {rep['dims']}") and ok


# 4 ------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 9))
def test_criterion_4_dpssG(record, n):
    rep = verify("dpssG", n)
    top = th.predict_dpssG(n)[n]
    rule = ModuleExpr.of(*[phimod(2 * h) for h in th.S_n(n)])
    # n is an even multiple of h, or an odd multiple of h plus one
    members = [h for h in range(1, n + 1)
               if any(n == 2 * lam * h or n == (2 * lam + 1) * h + 1 for lam in range(n + 1))]
    ok = rep["pass"] and top == rule and th.S_n(n) == members
    assert record(f"4 n={n}", ok, f"H^{n} = {top}") and ok


# 5 ------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 9))
def test_criterion_5_generators(record, n):
    g1 = build_G1(n)
    good, _ = admissible_generators(n)
    ok = bool(good)
    for kind, mu, k, h, degree in good:
        x = anti_generator(kind, mu, k, h, n, g1)
        label = parse_subset(generator_string(kind, mu, k, h))
        dx = g1.apply(degree - 1, {label: ONE})
        ok &= {lab: v * cyclotomic(2 * h) for lab, v in x.coeffs.items()} == dx
        ok &= coboundary(g1, x).is_zero()
    nonzero = verify_generators(n, g1)
    ok &= all(r["pass"] for r in nonzero)
    assert record(f"5 n={n}", ok, f"{len(good)} generators") and ok


# 6 ------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_criterion_6_inv(record, n):
    rep = verify("inv", n)
    ok = rep["pass"]
    assert record(f"6 n={n}", ok, f"{len(rep['probes'])} probes") and ok, _failed(rep)


# 7 ------------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5])
def test_criterion_7_main2_reconciled(record, n):
    rep = verify("main2", n, reading="reconciled", sweep=True, jobs=2)
    generic = next(c for c in rep["checks"] if c["name"].startswith("free rank"))
    ok = rep["pass"] and generic["got"][n] == 1
    assert record(f"7 n={n} reconciled", ok, f"{len(rep['probes'])} probes") and ok, _failed(rep)


@pytest.mark.xfail(strict=True, reason="literal reading of the affine statement disagrees with the complex")
@pytest.mark.parametrize("n", [3, 4, 5])
def test_criterion_7_main2_literal(record, n):
    rep = verify("main2", n, reading="literal")
    bad = _failed(rep)
    record(f"7 n={n} literal", not bad, f"{len(bad)} mismatched probes")
    assert not bad


# 8 ------------------------------------------------------------------------

def test_criterion_8_d1_identity(record):
    ok = True
    for n in range(3, 13):
        g = build_graph("tildeB", n)
        ratio = quasi_poincare_tilde_b(n, check=False).exact_div(poincare(g, g.full_mask & ~0b10, "qt"))
        prod = ONE
        for i in range(1, n):
            prod = prod * (1 + Q ** i)
        cyc = ONE
        for h in range(1, n + 1):
            cyc = cyc * cyclotomic(2 * h) ** ((n - 1) // h - (n - 1) // (2 * h))
        ok &= ratio == prod == cyc
    assert record("8", ok, "n = 3..12") and ok


# 9 ------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_criterion_9_simplicial_and_c0(record, n):
    for reading in ("literal", "reconciled"):
        rep = verify("lemma-simplicial", n, reading=reading)
        arr = rep["arrangement"]
        ok = arr["simplicial_count"] == arr["chamber_count"] and all(arr["checks"].values())
        ok &= arr["checks"]["H_k, k >= 2, do not cut C0"]
        record(f"9 n={n} {reading} simplicial", ok,
               f"{arr['simplicial_count']}/{arr['chamber_count']} simplicial")
        assert ok


@pytest.mark.parametrize("n", [2, 3])
def test_criterion_9_count_reconciled(record, n):
    rep = verify("lemma-simplicial", n, reading="reconciled")
    count = rep["arrangement"]["chamber_count"]
    expected = {2: 48, 3: 384}[n]
    ok = count == expected == 2 ** (n + 1) * factorial(n + 1)
    assert record(f"9 n={n} count reconciled", ok, f"{count} chambers") and ok


@pytest.mark.xfail(strict=True, reason="the literally defined arrangement has fewer chambers")
@pytest.mark.parametrize("n", [2, 3])
def test_criterion_9_count_literal(record, n):
    rep = verify("lemma-simplicial", n, reading="literal")
    count = rep["arrangement"]["chamber_count"]
    expected = {2: 48, 3: 384}[n]
    record(f"9 n={n} count literal", count == expected, f"{count} chambers, expected {expected}")
    assert count == expected


# 10 -----------------------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 9))
def test_criterion_10_chain_maps(record, n):
    aug = augmented_tilde_b(n)
    ok = sigma_commutes(aug) and sigma_commutes(build_complex(build_graph("tildeB", n), "qt"))
    ok &= sigma_commutes(build_complex(build_graph("D", n), "q"))
    for cx in (aug, build_complex(build_graph("D", n), "q")):
        inv, anti = split_sigma(cx)
        ok &= all(a + b == c for a, b, c in zip(inv.dims(), anti.dims(), cx.dims()))
    beta_map(n, aug).check_commutes()
    kappa_map(n, aug).check_commutes()
    assert record(f"10 n={n}", ok) and ok


# 11 -----------------------------------------------------------------------

def test_criterion_11_arithmetic(record):
    ok = all(th.f_nh(n, h) == th.f_nh_alt(n, h) for n in range(1, 41) for h in range(1, 21))
    ok &= all(qt_double_factorial(m).substitute(t=Q) == q_double_factorial(2 * m) for m in range(1, 7))
    assert record("11", ok) and ok
