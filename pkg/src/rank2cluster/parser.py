"""Expression syntax for rational functions in x1, x2.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | base ("^" signed_int)?
    base   := "x1" | "x2" | int | "(" expr ")"

Whitespace is ignored.  Multiplication must be written explicitly.
Error offsets are byte offsets into the UTF-8 encoding of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .algebra import Polynomial, RationalFunction
from .errors import DivisionByZero, ParseError


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class IntLit:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Neg:
    operand: Expr


@dataclass(frozen=True)
class Add:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: int


Expr = Union[Var, IntLit, Neg, Add, Sub, Mul, Div, Pow]

_BASE_START = frozenset({"x1", "x2", "integer", "("})


@dataclass(frozen=True)
class _Token:
    kind: str  # "x1", "x2", "integer", one of "+-*/^()", or "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    data = text.encode("utf-8")
    tokens: list[_Token] = []
    i = 0
    while i < len(data):
        ch = data[i : i + 1]
        if ch in (b" ", b"\t", b"\n", b"\r"):
            i += 1
        elif ch in (b"+", b"-", b"*", b"/", b"^", b"(", b")"):
            tokens.append(_Token(ch.decode(), ch.decode(), i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(data) and data[j : j + 1].isdigit():
                j += 1
            tokens.append(_Token("integer", data[i:j].decode(), i))
            i = j
        elif ch.isalpha() or ch == b"_" or data[i] >= 0x80:
            j = i
            while j < len(data) and (data[j : j + 1].isalnum() or data[j : j + 1] == b"_" or data[j] >= 0x80):
                j += 1
            word = data[i:j].decode("utf-8", errors="replace")
            if word not in ("x1", "x2"):
                raise ParseError(f"unknown identifier {word!r}", i, _BASE_START)
            tokens.append(_Token(word, word, i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch.decode('latin-1')!r}", i, _BASE_START)
    tokens.append(_Token("end", "", len(data)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> ParseError:
        tok = self.peek
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        return ParseError(f"unexpected {what}", tok.offset, frozenset(expected))

    def parse(self) -> Expr:
        node = self.expr()
        if self.peek.kind != "end":
            raise self.fail({"+", "-", "*", "/", "^", "end"})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek.kind in ("*", "/"):
            op = self.advance().kind
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        if self.peek.kind == "-":
            self.advance()
            return Neg(self.factor())
        node = self.base()
        if self.peek.kind == "^":
            self.advance()
            node = Pow(node, self.signed_int())
        return node

    def signed_int(self) -> int:
        sign = 1
        if self.peek.kind == "-":
            self.advance()
            sign = -1
        if self.peek.kind != "integer":
            raise self.fail({"integer"} if sign < 0 else {"integer", "-"})
        return sign * int(self.advance().text)

    def base(self) -> Expr:
        tok = self.peek
        if tok.kind in ("x1", "x2"):
            self.advance()
            return Var(int(tok.kind[1]))
        if tok.kind == "integer":
            self.advance()
            return IntLit(int(tok.text))
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            if self.peek.kind != ")":
                raise self.fail({")", "+", "-", "*", "/", "^"})
            self.advance()
            return node
        raise self.fail(_BASE_START | {"-"})


def parse(text: str) -> Expr:
    """Parse text into an expression tree; raises ParseError."""
    return _Parser(text).parse()


def to_ratfunc(ast: Expr) -> RationalFunction:
    """Evaluate an expression tree exactly."""
    if isinstance(ast, Var):
        return RationalFunction.x1() if ast.index == 1 else RationalFunction.x2()
    if isinstance(ast, IntLit):
        return RationalFunction.constant(ast.value)
    if isinstance(ast, Neg):
        return -to_ratfunc(ast.operand)
    if isinstance(ast, Add):
        return to_ratfunc(ast.left) + to_ratfunc(ast.right)
    if isinstance(ast, Sub):
        return to_ratfunc(ast.left) - to_ratfunc(ast.right)
    if isinstance(ast, Mul):
        return to_ratfunc(ast.left) * to_ratfunc(ast.right)
    if isinstance(ast, Div):
        den = to_ratfunc(ast.right)
        if den.is_zero():
            raise DivisionByZero("denominator is identically zero")
        return to_ratfunc(ast.left) / den
    if isinstance(ast, Pow):
        base = to_ratfunc(ast.base)
        if ast.exponent < 0 and base.is_zero():
            raise DivisionByZero("negative power of zero")
        return base**ast.exponent
    raise TypeError(f"not an expression node: {ast!r}")


def parse_ratfunc(text: str) -> RationalFunction:
    return to_ratfunc(parse(text))


def parse_polynomial(text: str) -> Polynomial:
    f = parse_ratfunc(text)
    if not f.den.is_constant():
        raise ValueError(f"{text!r} is not a polynomial")
    return f.num.scale(RationalFunction(1, f.den).constant_value())


def print_canonical(f) -> str:
    """Canonical text of a rational function (or anything coercible to one)."""
    return RationalFunction._lift(f).format()


def format_pair(pair) -> str:
    a, b = pair
    return f"({print_canonical(a)}, {print_canonical(b)})"
