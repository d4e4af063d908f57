"""Exact computations in rank-2 cluster algebras."""

from __future__ import annotations

from .algebra import LaurentFraction, Polynomial, RationalFunction, laurent_normalize, ratfunc_equal, ratfunc_substitute
from .cluster import (
    ExchangeData,
    Seed,
    check_constant_terms,
    check_imr,
    check_mutation_maction_equivalence,
    enumerate_clusters,
    m_action,
    matrix_mutate,
    mutate_seed,
    walk,
)
from .diophantine import (
    DioEquation,
    brute_force_solutions,
    certify_completeness,
    check_descent,
    dio_step,
    enumerate_orbit,
    preset,
)
from .dvector import (
    DVector,
    check_dvector_vs_cluster,
    check_growth,
    classify,
    dvectors_closed_form,
    dvectors_recurrence,
)
from .errors import ClusterError
from .invariants import (
    InvariantCandidate,
    SymmetricCombiner,
    check_degree_condition,
    construct_invariant,
    decompose_a1a1,
    decompose_half_invariant,
    search_laurent_invariants,
    verify_invariant,
)
from .parser import parse, print_canonical, to_ratfunc

__all__ = [name for name in dir() if not name.startswith("_")]
