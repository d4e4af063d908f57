from __future__ import annotations

import random

import pytest
import sympy

from rank2cluster.algebra import Polynomial
from rank2cluster.errors import ConstantInput, InfiniteType, MissingLaurentForm, NotInvariant, NotSymmetric
from rank2cluster.invariants import (
    InvariantCandidate,
    LaurentForm,
    SymmetricCombiner,
    check_degree_condition,
    cluster_list,
    construct_invariant,
    decompose_a1a1,
    decompose_half_invariant,
    evaluate_a1a1,
    in_span,
    mean_roundtrip,
    search_laurent_invariants,
    verify_invariant,
)
from rank2cluster.parser import parse_polynomial, parse_ratfunc

R = parse_ratfunc
AFF_22 = R("(x1^2+x2^2+1)/(x1*x2)")
AFF_14 = R("(x2^4+x1^2+2*x1+1)/(x1*x2^2)")
A2 = R("(x1^2*x2+x1*x2^2+x1^2+x2^2+2*x1+2*x2+1)/(x1*x2)")


def test_verify():
    assert verify_invariant(AFF_22, 2, 2)
    assert verify_invariant(AFF_14, 1, 4)
    assert not verify_invariant(R("x1"), 1, 1)
    assert not verify_invariant(AFF_22, 1, 4)
    with pytest.raises(ConstantInput):
        verify_invariant(R("7/3"), 1, 1)


def test_transposed_invariant():
    # relabelling x1 <-> x2 turns an (m, n) invariant into an (n, m) one
    assert verify_invariant(AFF_14.swap(), 4, 1)


def test_construct_examples():
    half = SymmetricCombiner.power_sum(1, "1/2")
    assert construct_invariant(1, 1, R("x1"), half) == A2
    assert construct_invariant(1, 2, R("x1"), half) == R("(x1^2*x2^2+x2^4+2*x2^2+x1^2+2*x1+1)/(x1*x2^2)")
    assert construct_invariant(1, 2, R("x2"), half) == R("(x1*x2^2+x2^2+x1^2+2*x1+1)/(x1*x2)")
    target = R("x1+2/x1+x2+2/x2")
    assert construct_invariant(0, 0, target, SymmetricCombiner.power_sum(1, "1/4")) == target
    assert construct_invariant(0, 0, R("x1+x2"), half) == target
    with pytest.raises(InfiniteType):
        construct_invariant(2, 2, R("x1"), half)


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (1, 3), (0, 0), (2, 1), (3, 1)])
@pytest.mark.parametrize(
    "phi",
    [
        SymmetricCombiner.power_sum(1),
        SymmetricCombiner.power_sum(2, 3),
        SymmetricCombiner.elementary(2),
        SymmetricCombiner.elementary(3, "1/5"),
    ],
    ids=["p1", "p2", "e2", "e3"],
)
def test_constructions_are_invariant_or_constant(m, n, phi):
    # polynomial F keeps every value Laurent; without a gcd, non-Laurent values swell quickly
    for F in ("x1", "x2 + x1^2", "3*x1*x2 - x2"):
        T = construct_invariant(m, n, R(F), phi)
        assert T.is_constant() or verify_invariant(T, m, n)


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (0, 0)])
def test_non_laurent_f(m, n):
    T = construct_invariant(m, n, R("(x1 + 2)/(x2^2 + 1) + 1/x1"), SymmetricCombiner.power_sum(1))
    assert verify_invariant(T, m, n)


def test_construction_ignores_cluster_order():
    clusters = cluster_list(1, 2)
    shuffled = clusters[:]
    random.Random(5).shuffle(shuffled)
    phi = SymmetricCombiner.elementary(2)
    F = R("x1*x2 + x2")
    assert construct_invariant(1, 2, F, phi, clusters) == construct_invariant(1, 2, F, phi, shuffled)


def test_explicit_combiner():
    # X1*X2 + X1*X3 + X2*X3 on three values
    phi = SymmetricCombiner.explicit({(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    assert phi([R("x1"), R("x2"), R("2")]) == R("x1*x2 + 2*x1 + 2*x2")
    with pytest.raises(NotSymmetric):
        SymmetricCombiner.explicit({(2, 0): 1, (0, 1): 1})


def test_mean_roundtrip():
    for T, m, n in [(A2, 1, 1), (R("(x1*x2^2+x2^2+x1^2+2*x1+1)/(x1*x2)"), 1, 2)]:
        assert mean_roundtrip(T, m, n) == T


def test_decompose_half():
    X = Polynomial.x1()
    assert decompose_half_invariant(R("x1 + 2/x1")) == X
    g = decompose_half_invariant(R("x1^2 + 4/x1^2"))
    assert g == parse_polynomial("x1^2 - 4")
    with pytest.raises(NotSymmetric):
        decompose_half_invariant(R("x1"))


def test_decompose_half_against_sympy():
    x = sympy.Symbol("x")
    f = 3 * x**3 + 24 / x**3 - x**2 - 4 / x**2 + 5
    g = decompose_half_invariant(R("3*x2^3 + 24/x2^3 - x2^2 - 4/x2^2 + 5"))
    X = sympy.Symbol("X")
    g_sym = sum(c * X**a for (a, _), c in g.terms.items())
    assert sympy.simplify(g_sym.subs(X, x + 2 / x) - f) == 0


def test_decompose_a1a1():
    assert decompose_a1a1(R("x1+2/x1+x2+2/x2")) == parse_polynomial("x1 + x2")
    T = R("(x1 + 2/x1)*(x2 + 2/x2)")
    G = decompose_a1a1(T)
    assert G == parse_polynomial("x1*x2")
    assert evaluate_a1a1(G) == T
    with pytest.raises(NotInvariant):
        decompose_a1a1(R("x1*x2"))


def test_degree_condition():
    assert check_degree_condition(InvariantCandidate.from_ratfunc(AFF_22))
    assert check_degree_condition(InvariantCandidate.from_ratfunc(AFF_14))
    form = InvariantCandidate.from_ratfunc(R("(x1^3+x2^2+1)/(x1*x2)")).laurent_form
    assert (form.s, form.t) == (1, 1)
    assert not check_degree_condition(InvariantCandidate.from_ratfunc(R("(x1^3+x2^2+1)/(x1*x2)")))
    with pytest.raises(MissingLaurentForm):
        check_degree_condition(InvariantCandidate(AFF_22))


def test_search_examples():
    basis = search_laurent_invariants(2, 2, 1, 1)
    assert len(basis) == 1
    assert str(basis[0]) == "(x1^2 + x2^2 + 1)/(x1*x2)"
    assert in_span(A2, search_laurent_invariants(1, 1, 1, 1))
    assert in_span(AFF_14, search_laurent_invariants(1, 4, 1, 2))
    for s in range(1, 4):
        for t in range(1, 4):
            assert search_laurent_invariants(1, 5, s, t) == []


def test_search_larger_box_contains_smaller_invariant():
    assert in_span(AFF_22, search_laurent_invariants(2, 2, 2, 2))


def _sympy_search_dimension(m, n, s, t):
    """Dimension of the Laurent invariant space, solved independently with sympy."""
    x1, x2 = sympy.symbols("x1 x2")
    cols = [(i, j) for i in range(2 * s + 1) for j in range(2 * t + 1) if (i, j) != (s, t)]
    lam = sympy.symbols(f"l0:{len(cols)}")
    T = sum(l * x1**i * x2**j for l, (i, j) in zip(lam, cols)) / (x1**s * x2**t)
    m1 = (x2**n + 1 if n else 2) / x1
    m2 = (x1**m + 1 if m else 2) / x2
    equations = []
    for image in (T.subs(x1, m1), T.subs(x2, m2)):
        num = sympy.numer(sympy.together(image - T))
        equations.extend(sympy.Poly(sympy.expand(num), x1, x2).coeffs())
    A, _ = sympy.linear_eq_to_matrix(equations, lam)
    return len(cols) - A.rank()


@pytest.mark.parametrize(
    "m, n, s, t",
    [(2, 2, 1, 1), (1, 1, 1, 1), (1, 4, 1, 2), (2, 3, 1, 1), (1, 5, 1, 2), (0, 0, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
)
def test_search_dimension_matches_sympy(m, n, s, t):
    basis = search_laurent_invariants(m, n, s, t)
    assert len(basis) == _sympy_search_dimension(m, n, s, t)
    assert all(check_degree_condition(c) for c in basis)


def test_search_rejects_bad_box():
    with pytest.raises(ValueError):
        search_laurent_invariants(2, 2, 0, 1)


def test_laurent_form_value():
    form = LaurentForm({(2, 0): 1, (0, 2): 1, (0, 0): 1}, 1, 1)
    assert form.value() == AFF_22
