"""Integer level sets of mutation invariants.

Solutions of T(x1, x2) = level are generated from an initial solution by
the integer form of mutation and compared against an exhaustive scan.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm

from .algebra import RationalFunction, as_ratfunc
from .errors import NonIntegral, PreconditionViolated
from .invariants import verify_invariant
from .parser import parse_ratfunc

Pair = tuple[int, int]


@dataclass(frozen=True)
class DioEquation:
    T: RationalFunction
    m: int
    n: int
    level: Fraction
    initial: Pair = (1, 1)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "T", as_ratfunc(self.T))
        object.__setattr__(self, "level", Fraction(self.level))
        object.__setattr__(self, "initial", tuple(int(v) for v in self.initial))

    @classmethod
    def build(cls, T, m: int, n: int, initial: Pair = (1, 1), level=None, name: str = "") -> DioEquation:
        """Validated constructor; the level defaults to T(initial)."""
        T = as_ratfunc(T)
        if not verify_invariant(T, m, n):
            raise ValueError(f"{T} is not a mutation invariant for (m, n) = ({m}, {n})")
        value = T.evaluate(*initial)
        if level is None:
            level = value
        elif Fraction(level) != value:
            raise ValueError(f"T{tuple(initial)} = {value}, not {level}")
        return cls(T, m, n, Fraction(level), tuple(initial), name)

    def residual_table(self) -> dict[tuple[int, int], int]:
        """Integer coefficients of q*num - p*den where level = p/q."""
        p, q = self.level.numerator, self.level.denominator
        out: dict[tuple[int, int], int] = {}
        for poly, scale in ((self.T.num, q), (self.T.den, -p)):
            for mono, c in poly.terms.items():
                out[mono] = out.get(mono, 0) + scale * c
        den = 1
        for c in out.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        return {k: int(v * den) for k, v in out.items() if v}

    def holds(self, a: int, b: int) -> bool:
        den = self.T.den.evaluate(a, b)
        if den == 0:
            return False
        return Fraction(self.T.num.evaluate(a, b)) / den == self.level


_PRESETS = {
    "a1a1": ("x1 + 2/x1 + x2 + 2/x2", 0, 0),
    "a2": ("(x1^2*x2 + x1*x2^2 + x1^2 + x2^2 + 2*x1 + 2*x2 + 1)/(x1*x2)", 1, 1),
    "b2": ("(x1^2*x2^2 + x2^4 + 2*x2^2 + x1^2 + 2*x1 + 1)/(x1*x2^2)", 1, 2),
    "g2": ("(x2^4 + x1*x2^3 + x2^3 + x1^2*x2 + 2*x1*x2 + x1^2 + x2 + 2*x1 + 1)/(x1*x2^2)", 1, 3),
    "22": ("(x1^2 + x2^2 + 1)/(x1*x2)", 2, 2),
    "14": ("(x2^4 + x1^2 + 2*x1 + 1)/(x1*x2^2)", 1, 4),
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> DioEquation:
    if name not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(_PRESETS)}")
    text, m, n = _PRESETS[name]
    return DioEquation.build(parse_ratfunc(text), m, n, (1, 1), name=name)


def dio_step(pair: Pair, direction: int, m: int, n: int) -> Pair:
    """Integer mutation: ((b^n + 1)/a, b) or (a, (a^m + 1)/b)."""
    a, b = pair
    if a < 1 or b < 1:
        raise ValueError(f"pair must be positive, got {pair}")
    if direction == 1:
        top, bot = (b**n + 1 if n else 2), a
    elif direction == 2:
        top, bot = (a**m + 1 if m else 2), b
    else:
        raise ValueError(f"direction must be 1 or 2, got {direction!r}")
    q, r = divmod(top, bot)
    if r:
        raise NonIntegral(f"{top}/{bot} is not an integer")
    return (q, b) if direction == 1 else (a, q)


@dataclass(frozen=True)
class OrbitNode:
    pair: Pair
    word: str

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "word": self.word}


@dataclass
class Orbit:
    equation: DioEquation
    bound: int
    nodes: list[OrbitNode]
    pruned: int

    @property
    def pairs(self) -> set[Pair]:
        return {node.pair for node in self.nodes}

    @property
    def closed(self) -> bool:
        return self.pruned == 0


def _walk_order(node: OrbitNode):
    # initial, then the branch starting with 1 outward, then the 2-branch back inward
    if not node.word:
        return (0, 0, "")
    if node.word[0] == "1":
        return (1, len(node.word), node.word)
    return (2, -len(node.word), node.word)


def enumerate_orbit(eq: DioEquation, bound: int) -> Orbit:
    """Breadth-first closure of the initial solution under dio_step, pruned at `bound`."""
    if bound < max(eq.initial):
        raise ValueError(f"bound {bound} is below the initial solution {eq.initial}")
    start = eq.initial
    words = {start: ""}
    queue = deque([start])
    pruned = 0
    while queue:
        pair = queue.popleft()
        for d in (1, 2):
            try:
                nxt = dio_step(pair, d, eq.m, eq.n)
            except NonIntegral as exc:
                raise AssertionError(f"integrality failed on the level set at {pair}: {exc}") from None
            if max(nxt) > bound:
                pruned += 1
                continue
            if nxt not in words:
                words[nxt] = words[pair] + str(d)
                queue.append(nxt)
    nodes = sorted((OrbitNode(p, w) for p, w in words.items()), key=_walk_order)
    for node in nodes:
        if not eq.holds(*node.pair):
            raise AssertionError(f"orbit left the level set at {node.pair}")
    return Orbit(eq, bound, nodes, pruned)


def _scan_rows(args) -> list[Pair]:
    table, a_lo, a_hi, bound = args
    by_a: dict[int, dict[int, int]] = {}
    for (i, j), c in table.items():
        by_a.setdefault(i, {})[j] = c
    deg = max(by_a)
    found = []
    for a in range(a_lo, a_hi + 1):
        # coefficients in b for this a
        coeffs: dict[int, int] = {}
        apow = 1
        for i in range(deg + 1):
            for j, c in by_a.get(i, {}).items():
                coeffs[j] = coeffs.get(j, 0) + c * apow
            apow *= a
        dmax = max(coeffs)
        poly = [coeffs.get(j, 0) for j in range(dmax, -1, -1)]
        for b in range(1, bound + 1):
            acc = 0
            for c in poly:
                acc = acc * b + c
            if acc == 0:
                found.append((a, b))
    return found


def brute_force_solutions(eq: DioEquation, bound: int, threads: int = 1) -> list[Pair]:
    """Every (a, b) in [1, bound]^2 with T(a, b) = level, sorted.

    Clears denominators and tests q*num(a, b) == p*den(a, b) in integers;
    the invariants handled here have monomial denominators, which never
    vanish on positive pairs.
    """
    if bound < 1:
        return []
    table = eq.residual_table()
    if not eq.T.den.is_monomial():
        return sorted(
            (a, b) for a in range(1, bound + 1) for b in range(1, bound + 1) if eq.holds(a, b)
        )
    threads = max(1, int(threads))
    if threads == 1:
        return sorted(_scan_rows((table, 1, bound, bound)))
    step = -(-bound // threads)
    chunks = [(table, lo, min(lo + step - 1, bound), bound) for lo in range(1, bound + 1, step)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_scan_rows, chunks))
    return sorted(p for part in parts for p in part)


def solve_by_discriminant(eq: DioEquation, bound: int) -> list[Pair]:
    """Solutions with 1 <= a, b <= bound for equations of degree <= 2 in x1.

    For each b the cleared equation is a quadratic in a, solved with an
    exact integer square root.  Independent of the orbit machinery.
    """
    table = eq.residual_table()
    if max(i for i, _ in table) > 2:
        raise ValueError("equation has degree > 2 in x1")
    found = []
    for b in range(1, bound + 1):
        c = [0, 0, 0]
        for (i, j), v in table.items():
            c[i] += v * b**j
        c0, c1, c2 = c
        roots: set[int] = set()
        if c2 == 0:
            if c1 == 0:
                if c0 == 0:
                    roots.update(range(1, bound + 1))
            elif (-c0) % c1 == 0:
                roots.add(-c0 // c1)
        else:
            disc = c1 * c1 - 4 * c2 * c0
            if disc >= 0:
                r = isqrt(disc)
                if r * r == disc:
                    for num in (-c1 + r, -c1 - r):
                        if num % (2 * c2) == 0:
                            roots.add(num // (2 * c2))
        found.extend((a, b) for a in roots if 1 <= a <= bound)
    return sorted(found)


@dataclass
class Certificate:
    equation: DioEquation
    bound: int
    complete: bool
    orbit: Orbit
    brute: list[Pair]
    missing: list[Pair] = field(default_factory=list)
    extra: list[Pair] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.complete

    @property
    def verdict(self) -> str:
        # the scan is finite, so completeness is only ever claimed within the bound
        return "complete within bound" if self.complete else "incomplete"


def certify_completeness(eq: DioEquation, bound: int, threads: int = 1) -> Certificate:
    """Orbit pairs within the bound equal the brute-force solution set."""
    orbit = enumerate_orbit(eq, bound)
    brute = brute_force_solutions(eq, bound, threads)
    orbit_pairs = orbit.pairs
    brute_set = set(brute)
    missing = sorted(brute_set - orbit_pairs)
    extra = sorted(orbit_pairs - brute_set)
    return Certificate(eq, bound, not missing and not extra, orbit, brute, missing, extra)


@dataclass
class DescentReport:
    pair: Pair
    mutated1: Pair
    mutated2: Pair
    branch: str
    holds: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.holds


def check_descent(pair: Pair, m: int = 1, n: int = 4) -> DescentReport:
    """Descent inequalities for a solution of x2^4 + x1^2 + 2x1 + 1 = 5 x1 x2^2."""
    if (m, n) != (1, 4):
        raise PreconditionViolated("descent is stated for (m, n) = (1, 4) only")
    a, b = pair
    if a == 1 or b == 1:
        raise PreconditionViolated(f"{pair} has a coordinate equal to 1")
    if b**4 + a * a + 2 * a + 1 != 5 * a * b * b:
        raise PreconditionViolated(f"{pair} does not solve the equation")
    a1, _ = dio_step(pair, 1, m, n)
    _, b2 = dio_step(pair, 2, m, n)
    sq = b * b
    failures = []
    if a > sq:
        branch = "a > b^2"
        if not a1 < sq < a:
            failures.append("mu1: a' < b^2 < a")
        if not b2 * b2 > a > sq:
            failures.append("mu2: b'^2 > a > b^2")
    elif a < sq:
        branch = "a < b^2"
        if not a1 > sq > a:
            failures.append("mu1: a' > b^2 > a")
        if not b2 * b2 < a < sq:
            failures.append("mu2: b'^2 < a < b^2")
    else:
        branch = "a = b^2"
        failures.append("a = b^2 does not occur for a, b != 1")
    return DescentReport(pair, (a1, b), (a, b2), branch, not failures, failures)
