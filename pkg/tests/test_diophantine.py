from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from rank2cluster.diophantine import (
    PRESET_NAMES,
    DioEquation,
    brute_force_solutions,
    certify_completeness,
    check_descent,
    dio_step,
    enumerate_orbit,
    preset,
    solve_by_discriminant,
)
from rank2cluster.errors import NonIntegral, PreconditionViolated
from rank2cluster.parser import parse_ratfunc


def _sympy_scan(eq: DioEquation, bound: int) -> list[tuple[int, int]]:
    """Exhaustive scan evaluating a sympy-lambdified T on exact fractions."""
    x1, x2 = sympy.symbols("x1 x2")
    expr = sympy.sympify(str(eq.T).replace("^", "**"), locals={"x1": x1, "x2": x2})
    f = sympy.lambdify((x1, x2), expr, modules=[{}])
    return sorted(
        (a, b) for a in range(1, bound + 1) for b in range(1, bound + 1) if f(Fraction(a), Fraction(b)) == eq.level
    )


def test_dio_step():
    assert dio_step((1, 1), 1, 1, 1) == (2, 1)
    assert dio_step((2, 1), 2, 1, 1) == (2, 3)
    assert dio_step((2, 3), 1, 1, 4) == (41, 3)
    with pytest.raises(NonIntegral):
        dio_step((2, 2), 1, 2, 2)  # (2^2 + 1)/2
    with pytest.raises(ValueError):
        dio_step((0, 1), 1, 1, 1)
    with pytest.raises(ValueError):
        dio_step((1, 1), 3, 1, 1)


def test_dio_step_is_an_involution():
    for name in PRESET_NAMES:
        eq = preset(name)
        for node in enumerate_orbit(eq, 200).nodes:
            for d in (1, 2):
                assert dio_step(dio_step(node.pair, d, eq.m, eq.n), d, eq.m, eq.n) == node.pair


def test_orbit_walk_order():
    orbit = enumerate_orbit(preset("a2"), 100)
    assert [n.pair for n in orbit.nodes] == [(1, 1), (2, 1), (2, 3), (3, 2), (1, 2)]
    assert orbit.closed
    orbit = enumerate_orbit(preset("b2"), 100)
    assert [n.pair for n in orbit.nodes] == [(1, 1), (2, 1), (2, 3), (5, 3), (5, 2), (1, 2)]
    assert orbit.nodes[3].word == "121"


def test_affine_orbit_is_pruned():
    orbit = enumerate_orbit(preset("22"), 13)
    assert orbit.pairs == {(1, 1), (1, 2), (2, 1), (2, 5), (5, 2), (5, 13), (13, 5)}
    assert not orbit.closed
    with pytest.raises(ValueError):
        enumerate_orbit(preset("22"), 0)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_brute_force_against_sympy(name):
    eq = preset(name)
    assert brute_force_solutions(eq, 60) == _sympy_scan(eq, 60)


def test_brute_force_empty_bound():
    assert brute_force_solutions(preset("a2"), 0) == []


def test_brute_force_threads_agree():
    eq = preset("14")
    assert brute_force_solutions(eq, 300, threads=3) == brute_force_solutions(eq, 300)


@pytest.mark.parametrize("name, bound, count", [("a2", 200, 5), ("14", 500, 10), ("22", 1000, 15)])
def test_certify(name, bound, count):
    cert = certify_completeness(preset(name), bound)
    assert cert and cert.verdict == "complete within bound"
    assert len(cert.brute) == count
    assert not cert.missing and not cert.extra


def test_off_orbit_level_breaks_integrality():
    # T(1, 3) = 11/3 for the affine invariant; mu2 sends (1, 3) to (1, 2/3)
    base = preset("22")
    eq = DioEquation(base.T, 2, 2, base.T.evaluate(1, 3), (1, 3))
    with pytest.raises(AssertionError, match="integrality"):
        enumerate_orbit(eq, 50)


def test_discriminant_matches_brute_force():
    for name in PRESET_NAMES:
        eq = preset(name)
        assert solve_by_discriminant(eq, 400) == brute_force_solutions(eq, 400)
    quartic = DioEquation.build(preset("14").T.swap(), 4, 1)
    with pytest.raises(ValueError):
        solve_by_discriminant(quartic, 10)


def test_descent():
    report = check_descent((41, 3))
    assert report and report.branch == "a > b^2" and report.mutated1 == (2, 3)
    report = check_descent((2, 3))
    assert report and report.branch == "a < b^2" and report.mutated2 == (2, 1)
    with pytest.raises(PreconditionViolated):
        check_descent((1, 1))
    with pytest.raises(PreconditionViolated):
        check_descent((3, 3))
    with pytest.raises(PreconditionViolated):
        check_descent((41, 3), 2, 2)


def test_build_validation():
    T = parse_ratfunc("(x1^2 + x2^2 + 1)/(x1*x2)")
    eq = DioEquation.build(T, 2, 2)
    assert eq.level == 3 and eq.initial == (1, 1)
    assert DioEquation.build(T, 2, 2, (2, 5), 3).holds(13, 5)
    with pytest.raises(ValueError):
        DioEquation.build(T, 1, 4)
    with pytest.raises(ValueError):
        DioEquation.build(T, 2, 2, (1, 1), 4)
    with pytest.raises(KeyError):
        preset("e8")


def test_residual_table_clears_fractions():
    eq = DioEquation.build(parse_ratfunc("(x1^2 + x2^2 + 1)/(2*x1*x2)"), 2, 2)
    assert eq.level == Fraction(3, 2)
    assert all(type(v) is int for v in eq.residual_table().values())
    assert brute_force_solutions(eq, 13) == brute_force_solutions(preset("22"), 13)
