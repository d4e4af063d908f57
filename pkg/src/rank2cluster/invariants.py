"""Mutation invariants: verification, construction, decomposition and search."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (
    ONE,
    Coeff,
    Polynomial,
    RationalFunction,
    as_coeff,
    as_ratfunc,
)
from .cluster import enumerate_clusters, m_substitution
from .dvector import Regime, classify
from .errors import (
    ConstantInput,
    InfiniteType,
    MissingLaurentForm,
    NotDivisible,
    NotInvariant,
    NotSymmetric,
)
from .linalg import nullspace, primitive


def _substitute(f: RationalFunction, direction: int, m: int, n: int) -> RationalFunction:
    s1, s2 = m_substitution(direction, m, n)
    return f.substitute(s1, s2)


def verify_invariant(T, m: int, n: int) -> bool:
    """T is unchanged by both initial-seed mutations."""
    T = as_ratfunc(T)
    if T.is_constant():
        raise ConstantInput("a constant is not a mutation invariant")
    return all(_substitute(T, d, m, n) == T for d in (1, 2))


# -- symmetric combiners -------------------------------------------------------


def _elementary(values: Sequence[RationalFunction], k: int) -> RationalFunction:
    # e_0..e_k by the product recurrence
    e = [RationalFunction.constant(1)] + [RationalFunction.constant(0)] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


@dataclass(frozen=True)
class SymmetricCombiner:
    """A symmetric polynomial Phi(X_1, ..., X_N).

    kind "power_sum": scale * sum X_i^index.
    kind "elementary": scale * e_index(X_1, ..., X_N).
    kind "explicit": terms maps exponent tuples of length N to coefficients.
    """

    kind: str
    index: int = 1
    scale: Fraction = Fraction(1)
    terms: Mapping[tuple[int, ...], Coeff] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("power_sum", "elementary", "explicit"):
            raise ValueError(f"unknown combiner kind {self.kind!r}")
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.kind == "explicit":
            if not self.terms:
                raise ValueError("explicit combiner needs terms")
            clean = {tuple(k): as_coeff(v) for k, v in self.terms.items() if v}
            widths = {len(k) for k in clean}
            if len(widths) != 1:
                raise ValueError("explicit terms must all have the same number of variables")
            object.__setattr__(self, "terms", clean)
            if not self._is_symmetric():
                raise NotSymmetric("explicit polynomial is not symmetric")
        elif self.index < 0:
            raise ValueError("index must be nonnegative")

    @classmethod
    def mean(cls, count: int) -> SymmetricCombiner:
        return cls("power_sum", 1, Fraction(1, count))

    @classmethod
    def power_sum(cls, index: int = 1, scale=1) -> SymmetricCombiner:
        return cls("power_sum", index, Fraction(scale))

    @classmethod
    def elementary(cls, index: int, scale=1) -> SymmetricCombiner:
        return cls("elementary", index, Fraction(scale))

    @classmethod
    def explicit(cls, terms: Mapping[tuple[int, ...], object]) -> SymmetricCombiner:
        return cls("explicit", terms=terms)

    @property
    def arity(self) -> int | None:
        if self.kind != "explicit":
            return None
        return len(next(iter(self.terms)))

    def _is_symmetric(self) -> bool:
        width = self.arity
        for a in range(width - 1):
            swapped = {}
            for key, c in self.terms.items():
                k = list(key)
                k[a], k[a + 1] = k[a + 1], k[a]
                swapped[tuple(k)] = c
            if swapped != self.terms:
                return False
        return True

    def __call__(self, values: Sequence) -> RationalFunction:
        values = [as_ratfunc(v) for v in values]
        if self.kind == "power_sum":
            total = RationalFunction.constant(0)
            for v in values:
                total = total + v**self.index
            return total * self.scale
        if self.kind == "elementary":
            return _elementary(values, self.index) * self.scale
        if len(values) != self.arity:
            raise ValueError(f"combiner takes {self.arity} values, got {len(values)}")
        total = RationalFunction.constant(0)
        for key, c in self.terms.items():
            term = RationalFunction.constant(c)
            for v, e in zip(values, key):
                if e:
                    term = term * v**e
            total = total + term
        return total


def cluster_list(m: int, n: int):
    """Labeled clusters of a finite type as pairs of rational functions."""
    if classify(m, n) is not Regime.FINITE:
        raise InfiniteType(f"(m, n) = ({m}, {n}) is not of finite type")
    return [s.ratfuncs() for s in enumerate_clusters(m, n, 64).seeds]


def construct_invariant(m: int, n: int, F, phi: SymmetricCombiner, clusters=None) -> RationalFunction:
    """Phi(F(c_{1;1}, c_{2;1}), ..., F(c_{1;N}, c_{2;N})) over the labeled clusters."""
    if classify(m, n) is not Regime.FINITE:
        raise InfiniteType(f"(m, n) = ({m}, {n}) is not of finite type")
    F = as_ratfunc(F)
    if clusters is None:
        clusters = cluster_list(m, n)
    values = [F.substitute(c1, c2) for c1, c2 in clusters]
    return phi(values).reduce_laurent()


# -- A1 x A1 decompositions ----------------------------------------------------------


def _univariate_terms(f) -> dict[int, Coeff]:
    """Exponent -> coefficient of a Laurent polynomial in one variable."""
    if isinstance(f, Mapping):
        return {int(e): as_coeff(c) for e, c in f.items() if c}
    f = as_ratfunc(f)
    try:
        terms = f.laurent_terms()
    except NotDivisible:
        raise ValueError(f"{f} is not a Laurent polynomial") from None
    used = {v for (a, b) in terms for v, e in ((0, a), (1, b)) if e}
    if used == {0, 1}:
        raise ValueError(f"{f} involves both variables")
    var = 1 if used == {1} else 0
    return {mono[var]: c for mono, c in terms.items()}


def _f_basis(k: int) -> list[Polynomial]:
    """F_0..F_k with F_j(x + 2/x) = x^j + (2/x)^j, as polynomials in X = x1."""
    X = Polynomial.x1()
    basis = [Polynomial.constant(2), X]
    while len(basis) <= k:
        basis.append(X * basis[-1] - basis[-2].scale(2))
    return basis[: k + 1]


def _decompose_terms(terms: dict[int, Coeff]) -> Polynomial:
    for e, c in terms.items():
        if terms.get(-e, 0) != as_coeff(c * Fraction(2) ** e):
            raise NotSymmetric("f(x) != f(2/x)")
    rest = dict(terms)
    top = max(rest, default=0)
    basis = _f_basis(max(top, 1))
    g = Polynomial()
    while rest and max(rest) > 0:
        k = max(rest)
        c = rest[k]
        g = g + basis[k].scale(c)
        for e, v in ((k, c), (-k, as_coeff(c * Fraction(2) ** k))):
            left = rest.get(e, 0) - v
            if left:
                rest[e] = as_coeff(left)
            else:
                rest.pop(e, None)
    if any(e != 0 for e in rest):
        raise NotSymmetric("f(x) != f(2/x)")
    return g + Polynomial.constant(rest.get(0, 0))


def decompose_half_invariant(f) -> Polynomial:
    """g with f(x) = g(x + 2/x); g is returned as a polynomial in x1 standing for X.

    f is a one-variable Laurent polynomial (in x1 or x2) or an exponent ->
    coefficient map.
    """
    return _decompose_terms(_univariate_terms(f))


def decompose_a1a1(T) -> Polynomial:
    """G with T(x1, x2) = G(x1 + 2/x1, x2 + 2/x2); G uses x1, x2 for X1, X2."""
    T = as_ratfunc(T)
    if not T.is_laurent() and not T.reduce_laurent().is_laurent():
        raise NotInvariant("not a Laurent polynomial")
    if not verify_invariant(T, 0, 0):
        raise NotInvariant(f"{T} is not invariant for (m, n) = (0, 0)")
    by_x2: dict[int, dict[int, Coeff]] = {}
    for (a, b), c in T.laurent_terms().items():
        by_x2.setdefault(b, {})[a] = c
    # T = sum_b g_b(X1) x2^b, then collect by powers of X1
    by_x1: dict[int, dict[int, Coeff]] = {}
    for b, row in by_x2.items():
        g = _decompose_terms(row)
        for (a, _), c in g.items():
            by_x1.setdefault(a, {})[b] = c
    out: dict[tuple[int, int], Coeff] = {}
    for a, row in by_x1.items():
        h = _decompose_terms(row)
        for (b, _), c in h.items():
            out[(a, b)] = c
    return Polynomial(out)


def evaluate_a1a1(G: Polynomial) -> RationalFunction:
    """G(x1 + 2/x1, x2 + 2/x2)."""
    x1, x2 = RationalFunction.x1(), RationalFunction.x2()
    return RationalFunction(G).substitute(x1 + 2 / x1, x2 + 2 / x2)


# -- Laurent candidates --------------------------------------------------------------


@dataclass(frozen=True)
class LaurentForm:
    """(sum lambda_ij x1^i x2^j) / (x1^s x2^t) with lambda_st = 0."""

    coeffs: Mapping[tuple[int, int], Coeff]
    s: int
    t: int

    def numerator(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def value(self) -> RationalFunction:
        return RationalFunction(self.numerator(), Polynomial.monomial(self.s, self.t))


@dataclass(frozen=True)
class InvariantCandidate:
    value: RationalFunction
    laurent_form: LaurentForm | None = None

    @classmethod
    def from_ratfunc(cls, T) -> InvariantCandidate:
        """Laurent form with s, t read off the lowest exponents; the constant term is dropped."""
        T = as_ratfunc(T)
        terms = T.laurent_terms()
        s = max(0, -min(a for a, _ in terms))
        t = max(0, -min(b for _, b in terms))
        coeffs = {(a + s, b + t): c for (a, b), c in terms.items() if (a, b) != (0, 0)}
        form = LaurentForm(coeffs, s, t)
        return cls(form.value(), form)

    @classmethod
    def from_form(cls, form: LaurentForm) -> InvariantCandidate:
        return cls(form.value(), form)

    def __str__(self) -> str:
        return str(self.value)


def check_degree_condition(T: InvariantCandidate) -> bool:
    """Largest x1 / x2 exponents in the numerator equal 2s / 2t."""
    form = T.laurent_form
    if form is None:
        raise MissingLaurentForm("candidate has no Laurent form")
    live = [mono for mono, c in form.coeffs.items() if c]
    if not live:
        return False
    return max(i for i, _ in live) == 2 * form.s and max(j for _, j in live) == 2 * form.t


def _condition_columns(
    m: int, n: int, s: int, t: int, cols: list[tuple[int, int]]
) -> tuple[list[Polynomial], list[Polynomial]]:
    """For each unknown lambda_ij, its contribution to both invariance conditions.

    T o M1 = T:  sum lambda_ij [P^i x1^(2s-i) x2^j - P^s x1^i x2^j] = 0, P = x2^n + 1
    T o M2 = T:  sum lambda_ij [Q^j x1^i x2^(2t-j) - Q^t x1^i x2^j] = 0, Q = x1^m + 1
    The second condition is encoded with an offset in the x2 exponent so both
    share one polynomial per column.
    """
    P = Polynomial.constant(2) if n == 0 else Polynomial.monomial(0, n) + ONE
    Q = Polynomial.constant(2) if m == 0 else Polynomial.monomial(m, 0) + ONE
    pp = [ONE]
    qp = [ONE]
    for _ in range(2 * max(s, t)):
        pp.append(pp[-1] * P)
        qp.append(qp[-1] * Q)
    cond1, cond2 = [], []
    for i, j in cols:
        cond1.append((pp[i].shift(2 * s - i, j)) - pp[s].shift(i, j))
        cond2.append((qp[j].shift(i, 2 * t - j)) - qp[t].shift(i, j))
    return cond1, cond2


def _rows(columns: list[Polynomial]) -> list[list[Coeff]]:
    monos = sorted({mono for p in columns for mono in p.terms}, reverse=True)
    index = {mono: r for r, mono in enumerate(monos)}
    rows = [[0] * len(columns) for _ in monos]
    for c, p in enumerate(columns):
        for mono, v in p.terms.items():
            rows[index[mono]][c] = v
    return rows


def search_laurent_invariants(m: int, n: int, s: int, t: int) -> list[InvariantCandidate]:
    """Basis of Laurent invariants (sum lambda_ij x1^i x2^j)/(x1^s x2^t), 0<=i<=2s, 0<=j<=2t.

    lambda_st is pinned to 0, which removes the constants.  Basis vectors
    are scaled to coprime integers.  Each candidate's Laurent form uses its
    own lowest-terms exponents, which can be smaller than (s, t).
    """
    if s < 1 or t < 1:
        raise ValueError("s and t must be at least 1")
    cols = [(i, j) for i in range(2 * s + 1) for j in range(2 * t + 1) if (i, j) != (s, t)]
    cond1, cond2 = _condition_columns(m, n, s, t, cols)
    rows = _rows(cond1) + _rows(cond2)
    basis = nullspace(rows, len(cols))
    out = []
    for vec in basis:
        ints = primitive(vec)
        coeffs = {cols[c]: v for c, v in enumerate(ints) if v}
        cand = InvariantCandidate.from_form(LaurentForm(coeffs, s, t))
        if not verify_invariant(cand.value, m, n):
            raise AssertionError(f"nullspace vector is not invariant: {cand}")
        out.append(InvariantCandidate.from_ratfunc(cand.value))
    return out


def in_span(T, basis: Sequence[InvariantCandidate]) -> bool:
    """Whether T, up to an additive constant, lies in the span of the candidates."""
    from .linalg import rank

    if not basis:
        return False

    def vector(f) -> dict[tuple[int, int], Coeff]:
        return {e: c for e, c in as_ratfunc(f).laurent_terms().items() if e != (0, 0)}

    rows = [vector(b.value) for b in basis]
    target = vector(T)
    monos = sorted({e for r in rows for e in r} | set(target))
    mat = [[r.get(e, 0) for e in monos] for r in rows]
    return rank(mat, len(monos)) == rank(mat + [[target.get(e, 0) for e in monos]], len(monos))


def mean_roundtrip(T, m: int, n: int) -> RationalFunction:
    """Phi = mean, F = T reproduces any invariant T of a finite type."""
    clusters = cluster_list(m, n)
    return construct_invariant(m, n, T, SymmetricCombiner.mean(len(clusters)), clusters)

