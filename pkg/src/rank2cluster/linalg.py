"""Exact linear algebra over Q: fraction-free elimination and nullspaces."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def bareiss_echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns (reduced rows, pivot columns).  Rows are integer multiples of
    rows of the input's row space.
    """
    mat = [r for r in _integer_rows(rows) if any(r)]
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for i in range(r + 1, len(mat)):
            a = mat[i][c]
            row_i, row_r = mat[i], mat[r]
            mat[i] = [(p * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = p
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(bareiss_echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns; vectors are ordered by free column.
    """
    ech, pivots = bareiss_echelon(rows, ncols)
    # back-substitute to reduced row echelon form over Q
    rref = [[Fraction(v) for v in row] for row in ech]
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        row = rref[idx]
        p = row[c]
        rref[idx] = row = [v / p for v in row]
        for up in range(idx):
            f = rref[up][c]
            if f:
                rref[up] = [a - f * b for a, b in zip(rref[up], row)]
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for idx, c in enumerate(pivots):
            vec[c] = -rref[idx][fcol]
        basis.append(vec)
    return basis


def primitive(vec: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers with positive first nonzero entry."""
    den = 1
    for v in vec:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return ints
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    return [-v for v in ints] if lead < 0 else ints
