from __future__ import annotations

import pytest

from rank2cluster.cluster import enumerate_clusters
from rank2cluster.dvector import (
    DVector,
    Regime,
    alpha_beta,
    alpha_beta_radical,
    check_dvector_vs_cluster,
    check_growth,
    classify,
    closed_form_table,
    dvectors_branches,
    dvectors_closed_form,
    dvectors_recurrence,
    matrix_form,
)
from rank2cluster.errors import UnsupportedRegime

GRID = [(m, n) for m in range(1, 7) for n in range(1, 7) if 4 <= m * n <= 12]


def test_initial_positions():
    for m, n in [(1, 1), (2, 3), (4, 1)]:
        table = dvectors_recurrence(m, n, 3)
        assert table[0] == (DVector(-1, 0), DVector(0, -1))
        assert table[1] == (DVector(1, 0), DVector(0, -1))
        assert table[2][1] == DVector(m, 1)


def test_affine_t4():
    assert dvectors_recurrence(2, 2, 4)[4][0] == DVector(3, 2)
    cf = dvectors_closed_form(2, 2, 2)
    assert (cf.d1_even, cf.d2_even) == (DVector(3, 2), DVector(4, 3))
    cf = dvectors_closed_form(1, 4, 2)
    assert (cf.d1_even, cf.d2_even) == (DVector(3, 4), DVector(2, 3))


@pytest.mark.parametrize("m, n", GRID)
def test_closed_form_matches_recurrence(m, n):
    rec = dvectors_recurrence(m, n, 61)
    for pos, pair in closed_form_table(m, n, 30).items():
        assert rec[pos] == pair


@pytest.mark.parametrize("m, n", GRID)
def test_matrix_form_and_branches(m, n):
    rec = dvectors_recurrence(m, n, 61)
    for pos, pair in matrix_form(m, n, 30).items():
        assert rec[pos] == pair
    for pos, pair in dvectors_branches(m, n, 61).items():
        assert rec[pos] == pair


@pytest.mark.parametrize("m, n", [p for p in GRID if p[0] * p[1] >= 5])
def test_alpha_beta(m, n):
    al, be = alpha_beta(m, n, 30)
    assert al[0] == be[0] == (1, 0, 0, 1)
    c = m * n - 2
    for seq in (al, be):
        for k in range(1, 30):
            for e in range(4):
                assert seq[k + 1][e] - c * seq[k][e] + seq[k - 1][e] == 0
    for k in (1, 2, 7, 15):
        assert alpha_beta_radical(m, n, k) == (al[k], be[k])


def test_closed_form_errors():
    with pytest.raises(UnsupportedRegime):
        dvectors_closed_form(1, 3, 1)
    with pytest.raises(UnsupportedRegime):
        check_growth(1, 2, 10)
    with pytest.raises(ValueError):
        dvectors_recurrence(1, 1, 0)


def test_engine_agreement():
    assert check_dvector_vs_cluster(1, 1, 10)
    assert check_dvector_vs_cluster(2, 2, 10)
    assert check_dvector_vs_cluster(1, 4, 10)
    assert check_dvector_vs_cluster(4, 1, 10)
    assert check_dvector_vs_cluster(0, 0, 6)


def test_a2_denominators_cover_period():
    seeds = enumerate_clusters(1, 1, 50).seeds
    table = dvectors_recurrence(1, 1, 10)
    for seed in seeds:
        assert tuple(DVector(*d) for d in seed.dvectors()) == table[seed.position]


def test_classify():
    assert classify(1, 3) is Regime.FINITE
    assert classify(2, 2) is Regime.AFFINE
    assert classify(2, 3) is Regime.NON_AFFINE
    assert str(classify(0, 5)) == "finite"


def test_classify_matches_periodicity():
    # (0, n) with n > 0 is not skew-symmetrizable, so only m = n = 0 or m, n >= 1
    pairs = [(0, 0)] + [(m, n) for m in range(1, 6) for n in range(1, 6)]
    for m, n in pairs:
        if m * n <= 3:
            finite = enumerate_clusters(m, n, 50).period is not None
        else:
            # a recurring labeled seed would make the d-vectors recur as well
            table = dvectors_recurrence(m, n, 50)
            finite = any(table[pos] == table[0] for pos in range(1, 51))
        assert finite == (classify(m, n) is Regime.FINITE), (m, n)


def test_growth():
    assert check_growth(2, 2, 50)
    assert check_growth(1, 5, 50)
    assert check_growth(3, 3, 50)
    assert check_growth(4, 1, 50)
