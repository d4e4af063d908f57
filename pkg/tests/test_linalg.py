from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from rank2cluster.linalg import bareiss_echelon, nullspace, primitive, rank

small = st.integers(-6, 6)


@st.composite
def matrices(draw):
    rows = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 6))
    entries = draw(st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return entries, cols


@given(matrices())
def test_rank_and_nullspace_match_sympy(data):
    rows, cols = data
    M = sympy.Matrix(rows)
    assert rank(rows, cols) == M.rank()
    basis = nullspace(rows, cols)
    assert len(basis) == cols - M.rank()
    for vec in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, vec)) == 0 for row in rows)
    # same reduced basis as sympy's RREF-based nullspace
    ours = [[sympy.Rational(v.numerator, v.denominator) for v in vec] for vec in basis]
    theirs = [list(v) for v in M.nullspace()]
    assert ours == theirs


def test_rational_entries():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [1, Fraction(2, 3)]]
    assert rank(rows, 2) == 1
    assert nullspace(rows, 2) == [[Fraction(-2, 3), Fraction(1)]]


def test_echelon_pivots():
    ech, pivots = bareiss_echelon([[0, 2, 4], [0, 1, 2], [1, 0, 0]], 3)
    assert pivots == [0, 1]
    assert len(ech) == 2


def test_primitive():
    assert primitive([Fraction(-1, 2), Fraction(3, 4), 0]) == [2, -3, 0]
    assert primitive([0, 0]) == [0, 0]
