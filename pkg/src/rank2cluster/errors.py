"""Domain errors.

Every error carries a ``code`` (the name printed by the CLI on the first
output line).  Most also derive from a builtin so callers can catch them
the usual way.
"""

from __future__ import annotations


class ClusterError(Exception):
    code: str = ""

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if "code" not in cls.__dict__:
            cls.code = cls.__name__


class NotDivisible(ClusterError, ArithmeticError):
    pass


class ZeroNumerator(ClusterError, ValueError):
    pass


class DivisionByZero(ClusterError, ZeroDivisionError):
    pass


class DenominatorVanishes(ClusterError, ZeroDivisionError):
    pass


class ParseError(ClusterError, ValueError):
    """Raised by the expression parser.

    ``offset`` is a byte offset into the UTF-8 encoded input and
    ``expected`` the set of tokens that would have been accepted there.
    """

    code = "SyntaxError"

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class IndexOutOfRange(ClusterError, IndexError):
    pass


class UnsupportedRegime(ClusterError, ValueError):
    pass


class ConstantInput(ClusterError, ValueError):
    pass


class InfiniteType(ClusterError, ValueError):
    pass


class NotSymmetric(ClusterError, ValueError):
    pass


class NotInvariant(ClusterError, ValueError):
    pass


class MissingLaurentForm(ClusterError, ValueError):
    pass


class NonIntegral(ClusterError, ArithmeticError):
    pass


class PreconditionViolated(ClusterError, ValueError):
    pass
