"""Denominator vectors of rank-2 cluster variables.

Positions follow the tree layout of :mod:`rank2cluster.cluster`.  At t_0 the
cluster variables x1, x2 have d-vectors (-1, 0) and (0, -1).
"""

from __future__ import annotations

import decimal
import enum
from dataclasses import dataclass
from typing import NamedTuple

from .cluster import Seed, mutate_seed, step_position
from .errors import UnsupportedRegime


class DVector(NamedTuple):
    d1: int
    d2: int

    def __add__(self, other):  # componentwise, not tuple concatenation
        return DVector(self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other):
        return DVector(self.d1 - other.d1, self.d2 - other.d2)

    def scale(self, c: int) -> DVector:
        return DVector(c * self.d1, c * self.d2)


DPair = tuple[DVector, DVector]
INITIAL: DPair = (DVector(-1, 0), DVector(0, -1))


def _pos(v: DVector) -> DVector:
    return DVector(max(v.d1, 0), max(v.d2, 0))


def dvector_step(pair: DPair, direction: int, m: int, n: int) -> DPair:
    """d-vectors after one mutation.

    Componentwise d_k' = -d_k + max(e * d_other, 0) with e = n for
    direction 1 and e = m for direction 2.
    """
    d1, d2 = pair
    if direction == 1:
        return (_pos(d2.scale(n)) - d1, d2)
    if direction == 2:
        return (d1, _pos(d1.scale(m)) - d2)
    raise ValueError(f"direction must be 1 or 2, got {direction!r}")


def dvectors_recurrence(m: int, n: int, k_max: int) -> dict[int, DPair]:
    """d-vector pairs at positions -k_max..k_max."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    table: dict[int, DPair] = {0: INITIAL}
    for sign, first in ((1, 1), (-1, 2)):
        pair, pos, direction = INITIAL, 0, first
        for _ in range(k_max):
            pair = dvector_step(pair, direction, m, n)
            pos = step_position(pos, direction)
            table[pos] = pair
            direction = 3 - direction
    return dict(sorted(table.items()))


def dvectors_branches(m: int, n: int, k_max: int) -> dict[int, DPair]:
    """Positive positions by the four linear branches (no max).

    Valid whenever every d-vector from t_1 on is nonnegative, which holds
    for mn >= 4.
    """
    table: dict[int, DPair] = {1: (DVector(1, 0), DVector(0, -1))}
    pair = table[1]
    for pos in range(2, k_max + 1):
        d1, d2 = pair
        if pos % 2 == 0:
            pair = (d1, d1.scale(m) - d2)
        else:
            pair = (d2.scale(n) - d1, d2)
        table[pos] = pair
    return table


class Regime(enum.Enum):
    FINITE = "finite"
    AFFINE = "affine"
    NON_AFFINE = "non_affine"

    def __str__(self) -> str:
        return self.value


def classify(m: int, n: int) -> Regime:
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    mn = m * n
    if mn <= 3:
        return Regime.FINITE
    if mn == 4:
        return Regime.AFFINE
    return Regime.NON_AFFINE


# -- closed forms ----------------------------------------------------------

Mat2 = tuple[int, int, int, int]  # row-major (a11, a12, a21, a22)


def w_blocks(m: int, n: int) -> tuple[Mat2, Mat2]:
    """Diagonal 2x2 blocks of W = UV."""
    return ((-1, n, -m, m * n - 1), (m * n - 1, -n, m, -1))


def _mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def block_power(block: Mat2, k: int) -> Mat2:
    out: Mat2 = (1, 0, 0, 1)
    for _ in range(k):
        out = _mat_mul(out, block)
    return out


def alpha_beta(m: int, n: int, k_max: int) -> tuple[list[Mat2], list[Mat2]]:
    """alpha_{.,k} and beta_{.,k} for k = 0..k_max.

    Every entry sequence u satisfies u_{k+1} = (mn - 2) u_k - u_{k-1}
    (the characteristic polynomial of both blocks is L^2 - (mn-2) L + 1),
    so only the first two terms are computed by matrix product.
    """
    w1, w2 = w_blocks(m, n)
    c = m * n - 2
    out = []
    for w in (w1, w2):
        seq: list[Mat2] = [(1, 0, 0, 1), w]
        while len(seq) <= k_max:
            a, b = seq[-1], seq[-2]
            seq.append(tuple(c * x - y for x, y in zip(a, b)))
        out.append(seq[: k_max + 1])
    return out[0], out[1]


D11 = DVector(1, 0)  # d_{1;t1}
D21 = DVector(0, -1)  # d_{2;t1}


def _d12(m: int) -> DVector:
    return DVector(1, 0)  # d_{1;t2}


def _d22(m: int) -> DVector:
    return DVector(m, 1)  # d_{2;t2}


@dataclass(frozen=True)
class ClosedForm:
    k: int
    d1_even: DVector  # d_{1;t_{2k}}
    d2_even: DVector  # d_{2;t_{2k}}
    d1_odd: DVector  # d_{1;t_{2k+1}}
    d2_odd: DVector  # d_{2;t_{2k+1}}


def _from_coeffs(al: Mat2, be: Mat2, m: int, n: int, k: int) -> ClosedForm:
    a1, a2, a3, a4 = al
    b1, b2, b3, b4 = be
    d12, d22 = _d12(m), _d22(m)
    return ClosedForm(
        k,
        D11.scale(a1 + m * a2) - D21.scale(a2),
        D11.scale(a3 + m * a4) - D21.scale(a4),
        d22.scale(n * b1 + b2) - d12.scale(b1),
        d22.scale(n * b3 + b4) - d12.scale(b3),
    )


def _affine(m: int, n: int, k: int) -> ClosedForm:
    # mn = 4: W^(k-1) = I + (k-1)(W - I) since (W - I)^2 = 0
    j = k - 1
    if (m, n) == (2, 2):
        return ClosedForm(
            k,
            D11.scale(2 * k - 1) - D21.scale(2 * k - 2),
            D11.scale(2 * k) - D21.scale(2 * k - 1),
            _d22(m).scale(2 * k) - _d12(m).scale(2 * k - 1),
            _d22(m).scale(2 * k - 1) - _d12(m).scale(2 * k - 2),
        )
    if (m, n) == (1, 4):
        return ClosedForm(
            k,
            D11.scale(2 * k - 1) - D21.scale(4 * k - 4),
            D11.scale(k) - D21.scale(2 * k - 1),
            _d22(m).scale(4 * k) - _d12(m).scale(2 * k - 1),
            _d22(m).scale(2 * k - 1) - _d12(m).scale(k - 1),
        )
    # (4, 1): same unipotent expansion of W^(k-1)
    w1, w2 = w_blocks(m, n)
    al = tuple((1 if i in (0, 3) else 0) + j * (w1[i] - (1 if i in (0, 3) else 0)) for i in range(4))
    be = tuple((1 if i in (0, 3) else 0) + j * (w2[i] - (1 if i in (0, 3) else 0)) for i in range(4))
    return _from_coeffs(al, be, m, n, k)


def dvectors_closed_form(m: int, n: int, k: int) -> ClosedForm:
    """d-vectors at t_{2k}, t_{2k+1} for mn >= 4 and k >= 1."""
    if m * n <= 3:
        raise UnsupportedRegime(f"closed forms need mn >= 4, got m={m}, n={n}")
    if k < 1:
        raise ValueError("k must be at least 1")
    if m * n == 4:
        return _affine(m, n, k)
    al, be = alpha_beta(m, n, k - 1)
    return _from_coeffs(al[k - 1], be[k - 1], m, n, k)


def closed_form_table(m: int, n: int, k_max: int) -> dict[int, DPair]:
    """Positions 2..2k_max+1 from the closed forms."""
    out: dict[int, DPair] = {}
    for k in range(1, k_max + 1):
        cf = dvectors_closed_form(m, n, k)
        out[2 * k] = (cf.d1_even, cf.d2_even)
        out[2 * k + 1] = (cf.d1_odd, cf.d2_odd)
    return out


def alpha_beta_radical(m: int, n: int, k: int, digits: int = 40) -> tuple[Mat2, Mat2]:
    """alpha_{.,k}, beta_{.,k} from the radical expressions, rounded to integers.

    High-precision decimal evaluation; a redundant check on :func:`alpha_beta`.
    Raises ArithmeticError if a value is not within 1e-6 of an integer.
    """
    if m * n < 5:
        raise UnsupportedRegime("radical forms need mn >= 5")
    ctx = decimal.Context(prec=digits + 2 * k)
    D = lambda v: decimal.Decimal(v)  # noqa: E731
    with decimal.localcontext(ctx):
        mn = D(m * n)
        rmn = mn.sqrt()
        rmn4 = (mn - 4).sqrt()
        rm, rn = D(m).sqrt(), D(n).sqrt()
        a = mn / 2 - 1
        b = (mn * (mn - 4)).sqrt() / 2
        lo, hi = (a - b) ** k, (a + b) ** k
        alpha = (
            (lo + hi + (rmn * lo - rmn * hi) / rmn4) / 2,
            (-rn * lo + rn * hi) / (rm * rmn4),
            (rm * lo - rm * hi) / (rn * rmn4),
            ((-rmn + rmn4) * lo + (rmn + rmn4) * hi) / (2 * rmn4),
        )
        beta = (
            (lo + hi + (-rmn * lo + rmn * hi) / rmn4) / 2,
            (rn * lo - rn * hi) / (rm * rmn4),
            (-rm * lo + rm * hi) / (rn * rmn4),
            ((rmn + rmn4) * lo + (-rmn + rmn4) * hi) / (2 * rmn4),
        )
        tol = D("1e-6")
        out = []
        for vals in (alpha, beta):
            ints = []
            for v in vals:
                r = v.to_integral_value(rounding=decimal.ROUND_HALF_EVEN)
                if abs(v - r) > tol:
                    raise ArithmeticError(f"radical value {v} is not integral")
                ints.append(int(r))
            out.append(tuple(ints))
    return out[0], out[1]


def matrix_form(m: int, n: int, k_max: int) -> dict[int, DPair]:
    """Positions 2..2k_max+1 via B_k = W^(k-1) U A_1 (4x4 block products)."""
    u = (
        (1, 0, 0, 0),
        (m, -1, 0, 0),
        (0, 0, -1, n),
        (0, 0, 0, 1),
    )
    v = (
        (-1, n, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, m, -1),
    )

    def mul(a, b):
        return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(4)) for j in range(4)) for i in range(4))

    def apply(a, vecs):
        return [
            sum((vecs[t].scale(a[i][t]) for t in range(4)), DVector(0, 0)) for i in range(4)
        ]

    w = mul(u, v)
    # A_1 = (d_{1;t1}, d_{2;t1}, d_{1;t2}, d_{2;t2}); t2 values follow from t1
    a1 = [D11, D21, D11, DVector(m, 1)]
    b = apply(u, a1)
    out: dict[int, DPair] = {}
    for k in range(1, k_max + 1):
        out[2 * k] = (b[0], b[1])
        out[2 * k + 1] = (b[2], b[3])
        b = apply(w, b)
    return out


# -- cross-checks ------------------------------------------------------------


@dataclass
class DVectorCheck:
    ok: bool
    checked: int
    mismatch: tuple[int, DPair, DPair] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_dvector_vs_cluster(m: int, n: int, k_max: int, progress=None) -> DVectorCheck:
    """Engine denominators against the recurrence at positions -k_max..k_max."""
    table = dvectors_recurrence(m, n, k_max)
    checked = 0
    for first in (1, 2):
        seed = Seed.initial(m, n)
        direction = first
        for _ in range(k_max):
            seed = mutate_seed(seed, direction)
            got = tuple(DVector(*d) for d in seed.dvectors())
            want = table[seed.position]
            if got != want:
                return DVectorCheck(False, checked, (seed.position, got, want))
            checked += 1
            if progress is not None:
                progress(seed.position)
            direction = 3 - direction
    return DVectorCheck(True, checked)


def check_growth(m: int, n: int, k_max: int) -> bool:
    """Strict growth of every d-vector component along t_3 .. t_{k_max}.

    Each mutation changes one variable, so d_{i;t_j} is compared with
    d_{i;t_{j+2}}, the next position at which variable i changes again.
    """
    if m * n <= 3:
        raise UnsupportedRegime(f"growth needs mn >= 4, got m={m}, n={n}")
    table = dvectors_recurrence(m, n, k_max)
    for j in range(3, k_max - 1):
        for i in (0, 1):
            a, b = table[j][i], table[j + 2][i]
            if not (b.d1 > a.d1 and b.d2 > a.d2):
                return False
    return True
