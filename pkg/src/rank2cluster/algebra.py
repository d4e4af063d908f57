"""Exact sparse arithmetic in Q[x1, x2], Q[x1^±1, x2^±1] and Q(x1, x2).

Coefficients are exact rationals.  They are stored as ``int`` whenever the
value is integral and as :class:`fractions.Fraction` otherwise, which keeps
the integer-coefficient polynomials produced by cluster mutation fast.

All values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .errors import DenominatorVanishes, DivisionByZero, NotDivisible, ZeroNumerator

Monomial = tuple[int, int]
Coeff = int | Fraction


def as_coeff(value) -> Coeff:
    """Coerce an int/Fraction/str to the canonical coefficient type."""
    if type(value) is int:
        return value
    if type(value) is Fraction:
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, (Rational, str)):
        return as_coeff(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


def _div_coeff(a: Coeff, b: Coeff) -> Coeff:
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
    return as_coeff(Fraction(a) / b)


def format_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_monomial(mono: Monomial, names: tuple[str, str] = ("x1", "x2")) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    """Sparse polynomial in x1, x2 with nonnegative exponents."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Coeff] = {}
        for (e1, e2), c in (terms or {}).items():
            if e1 < 0 or e2 < 0:
                raise ValueError(f"negative exponent in polynomial term {(e1, e2)}")
            c = as_coeff(c)
            if c:
                key = (int(e1), int(e2))
                total = clean.get(key, 0) + c
                if total:
                    clean[key] = as_coeff(total)
                else:
                    clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Coeff]) -> Polynomial:
        # trusted constructor: no zero coefficients, valid exponents
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> Polynomial:
        c = as_coeff(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, e1: int, e2: int, c=1) -> Polynomial:
        return cls({(e1, e2): c})

    @classmethod
    def x1(cls) -> Polynomial:
        return cls._raw({(1, 0): 1})

    @classmethod
    def x2(cls) -> Polynomial:
        return cls._raw({(0, 1): 1})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Coeff]]:
        """Terms in descending lexicographic monomial order."""
        for mono in sorted(self._terms, reverse=True):
            yield mono, self._terms[mono]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, e1: int, e2: int) -> Coeff:
        return self._terms.get((e1, e2), 0)

    def constant_term(self) -> Coeff:
        return self._terms.get((0, 0), 0)

    def degree(self, var: int) -> int:
        """Largest exponent of x1 (var=0) or x2 (var=1); -1 for zero."""
        return max((m[var] for m in self._terms), default=-1)

    def min_degree(self, var: int) -> int:
        return min((m[var] for m in self._terms), default=0)

    def monomial_content(self) -> Monomial:
        """Exponents of the largest monomial dividing the polynomial."""
        if not self._terms:
            return (0, 0)
        return (self.min_degree(0), self.min_degree(1))

    def leading_term(self) -> tuple[Monomial, Coeff]:
        mono = max(self._terms)
        return mono, self._terms[mono]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _lift(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other)
        return NotImplemented

    def __neg__(self) -> Polynomial:
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s if type(s) is int else as_coeff(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> Polynomial:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = as_coeff(c)
        if not c:
            return Polynomial._raw({})
        if c == 1:
            return self
        return Polynomial._raw({m: as_coeff(v * c) for m, v in self._terms.items()})

    def shift(self, e1: int, e2: int) -> Polynomial:
        """Multiply by x1^e1 * x2^e2 (e1, e2 >= 0)."""
        if e1 < 0 or e2 < 0:
            raise ValueError("shift exponents must be nonnegative")
        if e1 == 0 and e2 == 0:
            return self
        return Polynomial._raw({(a + e1, b + e2): c for (a, b), c in self._terms.items()})

    def unshift(self, e1: int, e2: int) -> Polynomial:
        """Divide by x1^e1 * x2^e2; the monomial must divide every term."""
        if e1 == 0 and e2 == 0:
            return self
        out = {}
        for (a, b), c in self._terms.items():
            if a < e1 or b < e2:
                raise NotDivisible(f"x1^{e1}*x2^{e2} does not divide {self}")
            out[(a - e1, b - e2)] = c
        return Polynomial._raw(out)

    def __mul__(self, other) -> Polynomial:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial._raw({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((e1, e2), c), = b.items()
            return self._mul_term(a, e1, e2, c)
        if len(b) >= _KRONECKER_MIN and _all_int(a) and _all_int(b):
            return Polynomial._raw(_kronecker_mul(a, b))
        out: dict[Monomial, Coeff] = {}
        get = out.get
        for (i1, i2), c1 in b.items():
            for (j1, j2), c2 in a.items():
                key = (i1 + j1, i2 + j2)
                out[key] = get(key, 0) + c1 * c2
        return Polynomial._raw(
            {m: (c if type(c) is int else as_coeff(c)) for m, c in out.items() if c}
        )

    __rmul__ = __mul__

    @staticmethod
    def _mul_term(terms, e1, e2, c) -> Polynomial:
        if c == 1:
            return Polynomial._raw({(a + e1, b + e2): v for (a, b), v in terms.items()})
        return Polynomial._raw({(a + e1, b + e2): as_coeff(v * c) for (a, b), v in terms.items()})

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Return q with self == q * other, or raise NotDivisible."""
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            ((e1, e2), c), = other._terms.items()
            return self.unshift(e1, e2).scale(_div_coeff(1, c))
        return _exact_div_x1(self, other)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.exact_div(self._lift(other))

    # -- evaluation -------------------------------------------------------

    def evaluate(self, v1, v2):
        """Exact value at a point (ints/Fractions)."""
        total = 0
        p1: dict[int, object] = {}
        p2: dict[int, object] = {}
        for (a, b), c in self._terms.items():
            if a not in p1:
                p1[a] = v1**a
            if b not in p2:
                p2[b] = v2**b
            total += c * p1[a] * p2[b]
        return total

    def swap(self) -> Polynomial:
        """Exchange the roles of x1 and x2."""
        return Polynomial._raw({(b, a): c for (a, b), c in self._terms.items()})

    # -- printing ---------------------------------------------------------

    def format(self, names: tuple[str, str] = ("x1", "x2")) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (mono, c) in enumerate(self.items()):
            neg = c < 0
            body = _format_term(mono, -c if neg else c, names)
            if i == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r})"


def _format_term(mono: Monomial, c: Coeff, names) -> str:
    var = format_monomial(mono, names)
    if not var:
        return format_coeff(c)
    if c == 1:
        return var
    return f"{format_coeff(c)}*{var}"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({(0, 0): 1})


def poly_pow(a: Polynomial, k: int) -> Polynomial:
    return a**k


def poly_exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    return a.exact_div(b)


# -- exact division ------------------------------------------------------
# Dividend and divisor are viewed as univariate in x1 with coefficients in
# Q[x2]; each coefficient is a dict {e2: c}.


def _split_x1(p: Polynomial) -> dict[int, dict[int, Coeff]]:
    rows: dict[int, dict[int, Coeff]] = {}
    for (a, b), c in p._terms.items():
        rows.setdefault(a, {})[b] = c
    return rows


def _uni_div(num: dict[int, Coeff], den: dict[int, Coeff]) -> dict[int, Coeff]:
    if len(den) == 1:
        (e, c), = den.items()
        out = {}
        for k, v in num.items():
            if k < e:
                raise NotDivisible("univariate remainder")
            out[k - e] = _div_coeff(v, c)
        return out
    rem = dict(num)
    dd = max(den)
    lc = den[dd]
    quot: dict[int, Coeff] = {}
    while rem:
        dr = max(rem)
        if dr < dd:
            raise NotDivisible("univariate remainder")
        q = _div_coeff(rem[dr], lc)
        shift = dr - dd
        quot[shift] = q
        for e, c in den.items():
            k = e + shift
            v = rem.get(k, 0) - q * c
            if v:
                rem[k] = v if type(v) is int else as_coeff(v)
            else:
                rem.pop(k, None)
    return quot



# -- Kronecker substitution ----------------------------------------------
# Integer polynomials map to big integers via x2 -> 2^k, x1 -> 2^(k*S); CPython's
# bigint multiplication (Karatsuba) then does the work.  Slots hold balanced digits, so k must
# exceed the bit length of every coefficient involved by at least one.

_KRONECKER_MIN = 24


def _all_int(terms) -> bool:
    for c in terms.values():
        if type(c) is not int:
            return False
    return True


def _pack(terms, stride: int, nbytes: int) -> int:
    slots = max(e1 * stride + e2 for e1, e2 in terms) + 1
    pos = bytearray(slots * nbytes)
    neg = bytearray(slots * nbytes)
    has_neg = False
    for (e1, e2), c in terms.items():
        at = (e1 * stride + e2) * nbytes
        if c > 0:
            pos[at:at + nbytes] = c.to_bytes(nbytes, "little")
        else:
            neg[at:at + nbytes] = (-c).to_bytes(nbytes, "little")
            has_neg = True
    value = int.from_bytes(pos, "little")
    if has_neg:
        value -= int.from_bytes(neg, "little")
    return value


def _unpack(value: int, stride: int, nbytes: int) -> dict[Monomial, int]:
    sign = 1
    if value < 0:
        sign, value = -1, -value
    raw = value.to_bytes((value.bit_length() + 7) // 8 + nbytes, "little")
    full = 1 << (8 * nbytes)
    half = full >> 1
    out: dict[Monomial, int] = {}
    carry = 0
    from_bytes = int.from_bytes
    for slot in range(len(raw) // nbytes):
        v = from_bytes(raw[slot * nbytes:(slot + 1) * nbytes], "little") + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        if v:
            out[divmod(slot, stride)] = sign * v
    return out


def _coeff_bits(terms) -> int:
    return max(abs(c) for c in terms.values()).bit_length()


def _kronecker_mul(a, b) -> dict[Monomial, int]:
    stride = max(e2 for _, e2 in a) + max(e2 for _, e2 in b) + 1
    bits = _coeff_bits(a) + _coeff_bits(b) + min(len(a), len(b)).bit_length() + 1
    nbytes = (bits + 7) // 8
    return _unpack(_pack(a, stride, nbytes) * _pack(b, stride, nbytes), stride, nbytes)


def _exact_div_x1(a: Polynomial, b: Polynomial) -> Polynomial:
    rem = _split_x1(a)
    div = _split_x1(b)
    db = max(div)
    lead = div[db]
    quot: dict[Monomial, Coeff] = {}
    while rem:
        dr = max(rem)
        if dr < db:
            raise NotDivisible(f"nonzero remainder dividing by {b}")
        qc = _uni_div(rem[dr], lead)
        shift = dr - db
        for e2, c in qc.items():
            quot[(shift, e2)] = c
        for e1, row in div.items():
            k = e1 + shift
            target = rem.get(k)
            if target is None:
                target = rem[k] = {}
            for f2, c2 in row.items():
                for g2, c1 in qc.items():
                    key = f2 + g2
                    v = target.get(key, 0) - c1 * c2
                    if v:
                        target[key] = v if type(v) is int else as_coeff(v)
                    else:
                        target.pop(key, None)
            if not target:
                del rem[k]
        if dr in rem:
            raise NotDivisible(f"nonzero remainder dividing by {b}")
    return Polynomial._raw(quot)


# -- Laurent fractions ---------------------------------------------------


class LaurentFraction:
    """numerator / (x1^d1 * x2^d2) with x1, x2 not dividing the numerator."""

    __slots__ = ("numerator", "d1", "d2")

    def __init__(self, numerator: Polynomial, d1: int = 0, d2: int = 0):
        if numerator.is_zero():
            raise ZeroNumerator("Laurent fraction with zero numerator")
        a, b = numerator.monomial_content()
        self.numerator = numerator.unshift(a, b)
        self.d1 = d1 - a
        self.d2 = d2 - b

    @classmethod
    def constant(cls, c) -> LaurentFraction:
        return cls(Polynomial.constant(c))

    @classmethod
    def x1(cls) -> LaurentFraction:
        return cls(ONE, -1, 0)

    @classmethod
    def x2(cls) -> LaurentFraction:
        return cls(ONE, 0, -1)

    @property
    def dvector(self) -> tuple[int, int]:
        return (self.d1, self.d2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return (self.d1, self.d2) == (other.d1, other.d2) and self.numerator == other.numerator

    def __hash__(self) -> int:
        return hash((self.numerator, self.d1, self.d2))

    def __mul__(self, other: LaurentFraction) -> LaurentFraction:
        return LaurentFraction(self.numerator * other.numerator, self.d1 + other.d1, self.d2 + other.d2)

    def __pow__(self, k: int) -> LaurentFraction:
        if k < 0:
            raise ValueError("negative powers are not Laurent in general")
        return LaurentFraction(self.numerator**k, k * self.d1, k * self.d2)

    def __add__(self, other) -> LaurentFraction:
        if not isinstance(other, LaurentFraction):
            other = LaurentFraction.constant(other)
        e1, e2 = max(self.d1, other.d1), max(self.d2, other.d2)
        num = self.numerator.shift(e1 - self.d1, e2 - self.d2) + other.numerator.shift(
            e1 - other.d1, e2 - other.d2
        )
        return LaurentFraction(num, e1, e2)

    __radd__ = __add__

    def exact_div(self, other: LaurentFraction) -> LaurentFraction:
        """self / other, which must again be a Laurent polynomial."""
        q = self.numerator.exact_div(other.numerator)
        return LaurentFraction(q, self.d1 - other.d1, self.d2 - other.d2)

    def to_ratfunc(self) -> RationalFunction:
        num = self.numerator.shift(max(-self.d1, 0), max(-self.d2, 0))
        den = Polynomial.monomial(max(self.d1, 0), max(self.d2, 0))
        return RationalFunction(num, den)

    def __str__(self) -> str:
        return str(self.to_ratfunc())

    def __repr__(self) -> str:
        return f"LaurentFraction({self.numerator.format()!r}, {self.d1}, {self.d2})"


def laurent_normalize(num: Polynomial, d1: int, d2: int) -> LaurentFraction:
    return LaurentFraction(num, d1, d2)


# -- rational functions --------------------------------------------------


class RationalFunction:
    """num / den in Q(x1, x2), compared by cross-multiplication.

    Canonical form: the common monomial factor of num and den is removed
    and den is a primitive integer polynomial whose lexicographically
    greatest term is positive.  No
    polynomial gcd is taken, so equal functions may have different
    representations; ``==`` compares values.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Polynomial._lift(num) if not isinstance(num, Polynomial) else num
        den = ONE if den is None else (Polynomial._lift(den) if not isinstance(den, Polynomial) else den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        a1, a2 = num.monomial_content()
        b1, b2 = den.monomial_content()
        c1, c2 = min(a1, b1), min(a2, b2)
        if c1 or c2:
            num, den = num.unshift(c1, c2), den.unshift(c1, c2)
        factor = _primitive_factor(den)
        if factor != 1:
            num, den = num.scale(factor), den.scale(factor)
        self.num, self.den = num, den

    @classmethod
    def x1(cls) -> RationalFunction:
        return cls(Polynomial.x1())

    @classmethod
    def x2(cls) -> RationalFunction:
        return cls(Polynomial.x2())

    @classmethod
    def constant(cls, c) -> RationalFunction:
        return cls(Polynomial.constant(c))

    @staticmethod
    def _lift(other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, LaurentFraction):
            return other.to_ratfunc()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFunction.constant(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        # constant iff num * den' == num' * den, i.e. num = c * den
        if self.num.is_zero():
            return True
        (mono, lc) = self.den.leading_term()
        c = _div_coeff(self.num._terms.get(mono, 0), lc)
        return self.num == self.den.scale(c)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        if self.num.is_zero():
            return 0
        mono, lc = self.den.leading_term()
        return _div_coeff(self.num._terms[mono], lc)

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ratfunc_equal(self, other)

    __hash__ = None

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __add__(self, other) -> RationalFunction:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if self.den.is_monomial() and other.den.is_monomial():
            # common denominator via monomial lcm
            (m1, c1), = self.den._terms.items()
            (m2, c2), = other.den._terms.items()
            l1, l2 = max(m1[0], m2[0]), max(m1[1], m2[1])
            num = self.num.shift(l1 - m1[0], l2 - m1[1]).scale(_div_coeff(1, c1)) + other.num.shift(
                l1 - m2[0], l2 - m2[1]
            ).scale(_div_coeff(1, c2))
            return RationalFunction(num, Polynomial.monomial(l1, l2))
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> RationalFunction:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> RationalFunction:
        return (-self) + other

    def __mul__(self, other) -> RationalFunction:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RationalFunction:
        return self._lift(other) / self

    def __pow__(self, k: int) -> RationalFunction:
        if k >= 0:
            return RationalFunction(self.num**k, self.den**k)
        if self.num.is_zero():
            raise DivisionByZero("negative power of zero")
        return RationalFunction(self.den ** (-k), self.num ** (-k))

    def substitute(self, s1, s2) -> RationalFunction:
        return ratfunc_substitute(self, s1, s2)

    def evaluate(self, v1, v2) -> Fraction:
        d = self.den.evaluate(v1, v2)
        if d == 0:
            raise DivisionByZero("denominator vanishes at the point")
        return Fraction(self.num.evaluate(v1, v2)) / d

    def reduce_laurent(self) -> RationalFunction:
        """Cancel the non-monomial part of den against num when it divides.

        Returns self unchanged when the cancellation is not exact.
        """
        if self.den.is_monomial():
            return self
        b1, b2 = self.den.monomial_content()
        rest = self.den.unshift(b1, b2)
        try:
            q = self.num.exact_div(rest)
        except NotDivisible:
            return self
        return RationalFunction(q, Polynomial.monomial(b1, b2))

    def to_laurent(self) -> LaurentFraction:
        f = self.reduce_laurent()
        if not f.den.is_monomial():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        ((e1, e2), c), = f.den._terms.items()
        return LaurentFraction(f.num.scale(_div_coeff(1, c)), e1, e2)

    def laurent_terms(self) -> dict[Monomial, Coeff]:
        """Exponent -> coefficient map of a Laurent polynomial value."""
        lf = self.to_laurent()
        return {(a - lf.d1, b - lf.d2): c for (a, b), c in lf.numerator._terms.items()}

    def swap(self) -> RationalFunction:
        return RationalFunction(self.num.swap(), self.den.swap())

    def format(self, names: tuple[str, str] = ("x1", "x2")) -> str:
        num = self.num.format(names)
        if self.den == ONE:
            return num
        if len(self.num) > 1 or any(type(c) is not int for c in self.num._terms.values()):
            num = f"({num})"
        den = self.den.format(names)
        if not _is_atom(self.den):
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RationalFunction({self.format()!r})"


def _primitive_factor(den: Polynomial) -> Coeff:
    """Scalar making den an integer polynomial with content 1 and positive leading term."""
    coeffs = den._terms.values()
    scale = 1
    for c in coeffs:
        if type(c) is not int:
            scale = lcm(scale, c.denominator)
    g = gcd(*(int(c * scale) for c in coeffs)) if scale != 1 else gcd(*coeffs)
    factor = as_coeff(Fraction(scale, g))
    return -factor if den.leading_term()[1] < 0 else factor


def _is_atom(p: Polynomial) -> bool:
    if len(p) != 1:
        return False
    ((e1, e2), c), = p._terms.items()
    if e1 == 0 and e2 == 0:
        return isinstance(c, int) and c > 0
    return c == 1 and (e1 == 0 or e2 == 0)


def ratfunc_equal(f: RationalFunction, g: RationalFunction) -> bool:
    if f.den == g.den:
        return f.num == g.num
    return f.num * g.den == g.num * f.den


def _homogenized(p: Polynomial, s1: RationalFunction, s2: RationalFunction) -> tuple[Polynomial, int, int]:
    """p(s1, s2) * b1^D1 * b2^D2 as a polynomial, with (D1, D2) = degrees of p.

    Evaluated Horner-style in x1 over coefficients that are polynomials in
    x2 homogenized against b2.
    """
    a1, b1 = s1.num, s1.den
    a2, b2 = s2.num, s2.den
    d1, d2 = p.degree(0), p.degree(1)
    rows = _split_x1(p)
    pa2 = _powers(a2, d2)
    pb2 = _powers(b2, d2)
    pb1 = _powers(b1, d1)

    def row_value(row: dict[int, Coeff]) -> Polynomial:
        acc = ZERO
        for j, c in row.items():
            acc = acc + (pa2[j] * pb2[d2 - j]).scale(c)
        return acc

    acc = row_value(rows[d1])
    for i in range(d1 - 1, -1, -1):
        acc = acc * a1
        if i in rows:
            acc = acc + row_value(rows[i]) * pb1[d1 - i]
    return acc, d1, d2


def _powers(p: Polynomial, k: int) -> list[Polynomial]:
    out = [ONE]
    for _ in range(k):
        out.append(out[-1] * p)
    return out


def ratfunc_substitute(f: RationalFunction, s1, s2) -> RationalFunction:
    """f(s1, s2), exact.  Raises DenominatorVanishes if den(s1, s2) == 0."""
    s1 = RationalFunction._lift(s1)
    s2 = RationalFunction._lift(s2)
    if f.num.is_zero():
        return f
    den_val, e1, e2 = _homogenized(f.den, s1, s2)
    if den_val.is_zero():
        raise DenominatorVanishes(f"denominator {f.den} vanishes under the substitution")
    num_val, n1, n2 = _homogenized(f.num, s1, s2)
    # f = num_val / (b1^n1 b2^n2)  /  (den_val / (b1^e1 b2^e2))
    b1, b2 = s1.den, s2.den
    num, den = num_val, den_val
    if e1 >= n1:
        num = num * b1 ** (e1 - n1)
    else:
        den = den * b1 ** (n1 - e1)
    if e2 >= n2:
        num = num * b2 ** (e2 - n2)
    else:
        den = den * b2 ** (n2 - e2)
    return RationalFunction(num, den)


def as_ratfunc(value) -> RationalFunction:
    out = RationalFunction._lift(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a rational function")
    return out


def laurent_from_terms(terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]]) -> RationalFunction:
    """Build a Laurent polynomial from exponent -> coefficient pairs (exponents may be negative)."""
    items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
    if not items:
        return RationalFunction(ZERO)
    s = max(0, -min(m[0] for m, _ in items))
    t = max(0, -min(m[1] for m, _ in items))
    num = Polynomial({(a + s, b + t): c for (a, b), c in items})
    return RationalFunction(num, Polynomial.monomial(s, t))
