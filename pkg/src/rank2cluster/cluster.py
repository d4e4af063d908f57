"""Rank-2 seeds, mutation, M-actions and general exchange-matrix mutation.

Tree positions follow the line layout

    ... -2- t_{-1} -2- t_0 -1- t_1 -2- t_2 -1- t_3 ...

so direction 1 joins t_{2k} and t_{2k+1}, direction 2 joins t_{2k-1} and t_{2k}.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import ONE, LaurentFraction, Polynomial, RationalFunction, ratfunc_equal
from .errors import IndexOutOfRange


@dataclass(frozen=True)
class ExchangeData:
    """The exchange matrix sign * [[0, m], [-n, 0]]."""

    m: int
    n: int
    sign: int = 1

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be nonnegative")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def mutate(self) -> ExchangeData:
        return ExchangeData(self.m, self.n, -self.sign)

    def exponent(self, direction: int) -> int:
        return self.n if direction == 1 else self.m

    def matrix(self) -> ExchangeMatrix:
        s = self.sign
        return ((0, s * self.m), (-s * self.n, 0))


def step_position(position: int, direction: int) -> int:
    """Neighbour of t_position along the edge labelled `direction`."""
    _check_direction(direction)
    even = position % 2 == 0
    if direction == 1:
        return position + 1 if even else position - 1
    return position - 1 if even else position + 1


def _check_direction(direction: int) -> None:
    if direction not in (1, 2):
        raise ValueError(f"direction must be 1 or 2, got {direction!r}")


def exchange_binomial(f: LaurentFraction, g: LaurentFraction, e: int) -> LaurentFraction:
    """(g^e + 1) / f; for e = 0 this is 2/f."""
    top = LaurentFraction.constant(2) if e == 0 else g**e + LaurentFraction.constant(1)
    return top.exact_div(f)


@dataclass(frozen=True)
class Seed:
    var1: LaurentFraction
    var2: LaurentFraction
    exchange: ExchangeData
    position: int = 0

    @classmethod
    def initial(cls, m: int, n: int) -> Seed:
        return cls(LaurentFraction.x1(), LaurentFraction.x2(), ExchangeData(m, n), 0)

    @property
    def cluster(self) -> tuple[LaurentFraction, LaurentFraction]:
        return (self.var1, self.var2)

    def labeled(self) -> tuple[LaurentFraction, LaurentFraction, int]:
        return (self.var1, self.var2, self.exchange.sign)

    def ratfuncs(self) -> tuple[RationalFunction, RationalFunction]:
        return (self.var1.to_ratfunc(), self.var2.to_ratfunc())

    def dvectors(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.var1.dvector, self.var2.dvector)


def mutate_seed(s: Seed, direction: int) -> Seed:
    _check_direction(direction)
    ex = s.exchange
    if direction == 1:
        new = exchange_binomial(s.var1, s.var2, ex.n)
        return Seed(new, s.var2, ex.mutate(), step_position(s.position, 1))
    new = exchange_binomial(s.var2, s.var1, ex.m)
    return Seed(s.var1, new, ex.mutate(), step_position(s.position, 2))


def parse_word(word: str | Iterable[int]) -> list[int]:
    if isinstance(word, str):
        out = []
        for ch in word:
            if ch not in "12":
                raise ValueError(f"mutation words use only 1 and 2, got {word!r}")
            out.append(int(ch))
        return out
    out = [int(d) for d in word]
    for d in out:
        _check_direction(d)
    return out


def walk(word, m: int, n: int, start: Seed | None = None) -> list[Seed]:
    """Apply the word left to right; returns the start seed and every step."""
    seed = start if start is not None else Seed.initial(m, n)
    seeds = [seed]
    for d in parse_word(word):
        seed = mutate_seed(seed, d)
        seeds.append(seed)
    return seeds


def alternating_word(first: int, length: int) -> list[int]:
    other = 3 - first
    return [first if i % 2 == 0 else other for i in range(length)]


@dataclass
class ClusterEnumeration:
    m: int
    n: int
    period: int | None
    seeds: list[Seed]

    @property
    def labeled_clusters(self) -> list[tuple[LaurentFraction, LaurentFraction]]:
        return [s.cluster for s in self.seeds]


def enumerate_clusters(m: int, n: int, max_steps: int) -> ClusterEnumeration:
    """Walk 1,2,1,2,... from t_0 until the labeled initial seed recurs.

    With a period p the result lists t_0..t_{p-1}.  Without one (within
    max_steps mutations) it lists t_0..t_{max_steps-1}.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    seed = Seed.initial(m, n)
    start = seed.labeled()
    seeds = [seed]
    for j in range(1, max_steps + 1):
        seed = mutate_seed(seed, 1 if j % 2 == 1 else 2)
        if seed.labeled() == start:
            return ClusterEnumeration(m, n, j, seeds)
        if j < max_steps:
            seeds.append(seed)
    return ClusterEnumeration(m, n, None, seeds)


# -- M-actions -------------------------------------------------------------


def m_substitution(direction: int, m: int, n: int) -> tuple[RationalFunction, RationalFunction]:
    """(s1, s2) such that M_direction f = f(s1, s2)."""
    _check_direction(direction)
    x1, x2 = RationalFunction.x1(), RationalFunction.x2()
    if direction == 1:
        top = RationalFunction.constant(2) if n == 0 else x2**n + 1
        return (top / x1, x2)
    top = RationalFunction.constant(2) if m == 0 else x1**m + 1
    return (x1, top / x2)


def m_action(pair, direction: int, m: int, n: int) -> tuple[RationalFunction, RationalFunction]:
    s1, s2 = m_substitution(direction, m, n)
    f, g = (RationalFunction._lift(p) for p in pair)
    return (f.substitute(s1, s2).reduce_laurent(), g.substitute(s1, s2).reduce_laurent())


def m_sequence(sequence, m: int, n: int, pair=None):
    """Apply M-actions in the listed order (first element acts first)."""
    if pair is None:
        pair = (RationalFunction.x1(), RationalFunction.x2())
    out = [tuple(pair)]
    for d in parse_word(sequence):
        pair = m_action(pair, d, m, n)
        out.append(pair)
    return out


@dataclass
class EquivalenceReport:
    ok: bool
    checked: int = 0
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def _pair_equal(a, b) -> bool:
    return ratfunc_equal(RationalFunction._lift(a[0]), RationalFunction._lift(b[0])) and ratfunc_equal(
        RationalFunction._lift(a[1]), RationalFunction._lift(b[1])
    )


def check_mutation_maction_equivalence(m: int, n: int, k_max: int, progress=None) -> EquivalenceReport:
    """Compare mutation words with M-action sequences for k = 0..k_max.

    Identity (1): the word i,j,i,...,i of length 2k+1 against the M-action
    sequence i,j,...,i.  Identity (2): the word (j,i)^k against the M-action
    sequence (i,j)^k, i.e. the order is reversed.  Walks are extended one k
    at a time so `progress(i, k)` reports how far a long check got.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    checked = 0
    for i in (1, 2):
        j = 3 - i
        mut_i = [Seed.initial(m, n)]
        mut_j = [Seed.initial(m, n)]
        act_i = [(RationalFunction.x1(), RationalFunction.x2())]
        for k in range(k_max + 1):
            # identity (1) uses odd-length prefixes, identity (2) even-length ones
            while len(mut_i) < 2 * k + 2:
                d = i if len(mut_i) % 2 == 1 else j
                mut_i.append(mutate_seed(mut_i[-1], d))
                act_i.append(m_action(act_i[-1], d, m, n))
            while len(mut_j) < 2 * k + 1:
                mut_j.append(mutate_seed(mut_j[-1], j if len(mut_j) % 2 == 1 else i))
            if not _pair_equal(mut_i[2 * k + 1].ratfuncs(), act_i[2 * k + 1]):
                return EquivalenceReport(False, checked, {"identity": 1, "i": i, "j": j, "k": k})
            checked += 1
            if not _pair_equal(mut_j[2 * k].ratfuncs(), act_i[2 * k]):
                return EquivalenceReport(False, checked, {"identity": 2, "i": i, "j": j, "k": k})
            checked += 1
            if progress is not None:
                progress(i, k)
    return EquivalenceReport(True, checked)


@dataclass
class ConstantTermReport:
    ok: bool
    checked: int
    failure: tuple[int, int, str] | None = None  # (position, variable index, numerator)

    def __bool__(self) -> bool:
        return self.ok


def check_constant_terms(m: int, n: int, length: int, progress=None) -> ConstantTermReport:
    """Numerators of cluster variables at positions |k| >= 2 have constant term 1.

    Walks `length` steps in both directions from t_0.
    """
    checked = 0
    for first in (1, 2):
        seed = Seed.initial(m, n)
        for d in alternating_word(first, length):
            seed = mutate_seed(seed, d)
            if abs(seed.position) >= 2:
                for idx, var in enumerate(seed.cluster, start=1):
                    if var.numerator.constant_term() != 1:
                        return ConstantTermReport(False, checked, (seed.position, idx, str(var.numerator)))
                    checked += 1
            if progress is not None:
                progress(seed.position)
    return ConstantTermReport(True, checked)


# -- general exchange matrices ------------------------------------------------

ExchangeMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> ExchangeMatrix:
    mat = tuple(tuple(int(v) for v in row) for row in rows)
    if not mat or any(len(r) != len(mat) for r in mat):
        raise ValueError("exchange matrix must be square and nonempty")
    return mat


def matrix_mutate(B, k: int) -> ExchangeMatrix:
    """Matrix mutation at index k (1-based)."""
    B = as_matrix(B)
    size = len(B)
    if not 1 <= k <= size:
        raise IndexOutOfRange(f"direction {k} outside 1..{size}")
    c = k - 1
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            if i == c or j == c:
                row.append(-B[i][j])
            else:
                bik, bkj = B[i][c], B[c][j]
                row.append(B[i][j] + max(bik, 0) * bkj + bik * max(-bkj, 0))
        out.append(tuple(row))
    return tuple(out)


def negate(B) -> ExchangeMatrix:
    return tuple(tuple(-v for v in row) for row in as_matrix(B))


@dataclass
class ImrReport:
    holds: bool
    depth: int
    explored: int
    witness: tuple[int, ...] | None = None
    matrix: ExchangeMatrix | None = field(default=None)

    def __bool__(self) -> bool:
        return self.holds


def check_imr(B, depth: int) -> ImrReport:
    """Breadth-first: every matrix reachable within `depth` mutations is B or -B."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    B = as_matrix(B)
    allowed = {B, negate(B)}
    queue = deque([(B, ())])
    seen = {B}
    explored = 0
    while queue:
        mat, path = queue.popleft()
        if len(path) == depth:
            continue
        for k in range(1, len(B) + 1):
            nxt = matrix_mutate(mat, k)
            explored += 1
            if nxt not in allowed:
                return ImrReport(False, depth, explored, path + (k,), nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, path + (k,)))
    return ImrReport(True, depth, explored)


def is_skew_symmetrizable(B) -> bool:
    """True iff D*B is skew-symmetric for some positive diagonal D."""
    from fractions import Fraction

    B = as_matrix(B)
    size = len(B)
    d: list[Fraction | None] = [None] * size
    for start in range(size):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(size):
                if (B[i][j] == 0) != (B[j][i] == 0):
                    return False
                if B[i][j] == 0:
                    continue
                if (B[i][j] > 0) == (B[j][i] > 0):
                    return False
                # d_i b_ij = -d_j b_ji
                want = d[i] * B[i][j] / -B[j][i]
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    return False
    return all(B[i][i] == 0 for i in range(size))
