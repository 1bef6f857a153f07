"""Parser for closed-form sequence expressions and constants in pi.

Grammar (explicit ``*`` is required; ``2n`` is a syntax error)::

    expr   = term { ("+" | "-") term } ;
    term   = unary { ("*" | "/") unary } ;
    unary  = "-" unary | power ;
    power  = atom [ "^" INTEGER ] ;
    atom   = INTEGER | "n" | "pi" | "(" expr ")" ;

Sequence expressions lower to a canonical :class:`PolyRat`; constant
expressions lower to ``pi_coeff * pi + offset``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    ExprSyntaxError,
    NonAffinePiError,
    PiNotAllowedError,
    VariableNotAllowedError,
    ZeroDenominatorError,
)
from .numerics import ConstantExpr
from .polyrat import PolyRat

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "eof"
    text: str
    pos: int


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str  # "n" or "pi"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Var, Neg, BinOp, Pow]


def tokenize(text: str) -> list:
    tokens = []
    i = 0
    while True:
        m = _TOKEN.match(text, i)
        if m is None:  # only trailing whitespace is left
            break
        start = m.start(m.lastindex)
        pos = len(text[:start].encode("utf-8"))
        if m.group(1):
            tokens.append(Token("int", m.group(1), pos))
        elif m.group(2):
            if m.group(2) not in ("n", "pi"):
                raise ExprSyntaxError(f"unknown name {m.group(2)!r}", pos, ("n", "pi"))
            tokens.append(Token("ident", m.group(2), pos))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", pos,
                                      ("number", "n", "pi", "operator", "parenthesis"))
            tokens.append(Token("op", ch, pos))
        i = m.end()
    tokens.append(Token("eof", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def fail(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {what}", t.pos, expected)

    def parse(self) -> Node:
        if self.tok.kind == "eof":
            self.fail(("expression",))
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail(("operator", "end of input"))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.at("^"):
            self.take()
            if self.tok.kind != "int":
                self.fail(("nonnegative integer exponent",))
            k = int(self.take().text)
            if self.at("^"):
                raise ExprSyntaxError("chained exponent is ambiguous; add parentheses",
                                      self.tok.pos, ("operator", "end of input"))
            return Pow(base, k)
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.take()
            return Num(int(t.text))
        if t.kind == "ident":
            self.take()
            return Var(t.text)
        if self.at("("):
            self.take()
            node = self.expr()
            if not self.at(")"):
                self.fail(("')'", "operator"))
            self.take()
            return node
        self.fail(("number", "n", "pi", "'('", "'-'"))


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def _lower_seq(node: Node) -> PolyRat:
    if isinstance(node, Num):
        return PolyRat.const(node.value)
    if isinstance(node, Var):
        if node.name == "pi":
            raise PiNotAllowedError("pi is not allowed in a sequence expression")
        return PolyRat.var()
    if isinstance(node, Neg):
        return -_lower_seq(node.operand)
    if isinstance(node, Pow):
        return _lower_seq(node.base) ** node.exponent
    left, right = _lower_seq(node.left), _lower_seq(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if right.is_zero():
        raise ZeroDenominatorError("division by an identically zero expression")
    return left / right


def parse_sequence_expr(text: str) -> PolyRat:
    """Parse a rational function of n, e.g. ``"(n-1)^2/((2*n-3)*(2*n-1))"``."""
    return _lower_seq(parse_ast(text))


def _lower_const(node: Node) -> tuple:
    # values are pairs (pi_coeff, offset)
    if isinstance(node, Num):
        return Fraction(0), Fraction(node.value)
    if isinstance(node, Var):
        if node.name == "n":
            raise VariableNotAllowedError("n is not allowed in a constant expression")
        return Fraction(1), Fraction(0)
    if isinstance(node, Neg):
        c, o = _lower_const(node.operand)
        return -c, -o
    if isinstance(node, Pow):
        c, o = _lower_const(node.base)
        if c == 0:
            return Fraction(0), o**node.exponent
        if node.exponent == 0:
            return Fraction(0), Fraction(1)
        if node.exponent == 1:
            return c, o
        raise NonAffinePiError("pi may only appear linearly")
    (c1, o1), (c2, o2) = _lower_const(node.left), _lower_const(node.right)
    if node.op == "+":
        return c1 + c2, o1 + o2
    if node.op == "-":
        return c1 - c2, o1 - o2
    if node.op == "*":
        if c1 and c2:
            raise NonAffinePiError("pi may only appear linearly")
        return c1 * o2 + c2 * o1, o1 * o2
    if c2:
        raise NonAffinePiError("cannot divide by an expression containing pi")
    if o2 == 0:
        raise ZeroDenominatorError("division by zero")
    return c1 / o2, o1 / o2


def parse_constant_expr(text: str) -> ConstantExpr:
    c, o = _lower_const(parse_ast(text))
    return ConstantExpr(c, o)


def _print_poly(coeffs) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def print_expr(p: PolyRat) -> str:
    """Text that parses back to exactly ``p``."""
    num = _print_poly(p.num)
    if p.is_polynomial():
        return num
    return f"({num})/({_print_poly(p.den)})"
