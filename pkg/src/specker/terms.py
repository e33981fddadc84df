"""Term language for presentations by idempotent generators.

Terms are polynomial expressions in named generators ``x_e`` (each bound
to a boolean-algebra element), with exact scalar literals, ``+ - *``,
unary minus, nonnegative integer powers, and binary ``meet``/``join``.

Normalization is by evaluation: generators become embedded idempotents,
and the expression is computed with exact orthogonal-form arithmetic.
Because every element has a unique full orthogonal decomposition with
distinct values, the evaluated result *is* the canonical normal form,
and all the defining relations of the presentation (products of
generators vs. the generator of the meet, complements, the zero
generator) collapse automatically.

Grammar::

    expr   := addend (("+" | "-") addend)*
    addend := factor ("*" factor)*
    factor := unary ("^" nat)*
    unary  := "-" unary | atom
    atom   := scalar | ident | "(" expr ")"
            | "meet(" expr "," expr ")" | "join(" expr "," expr ")"

Unary minus binds tighter than ``^``, which binds tighter than ``*``,
which binds tighter than binary ``+``/``-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .boolalg import Algebra, BoolElem
from .orthogonal import (
    OrthElem,
    orth_add,
    orth_const,
    orth_embed,
    orth_join,
    orth_meet,
    orth_mul,
    orth_neg,
    orth_sub,
    orth_unit,
)
from .scalars import Scalar, parse_scalar

__all__ = [
    "Term",
    "Lit",
    "Var",
    "BinOp",
    "Neg",
    "Pow",
    "ParseError",
    "parse_term",
    "normalize_term",
    "default_binding",
]


@dataclass(frozen=True)
class Lit:
    value: Scalar


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Term"


@dataclass(frozen=True)
class Pow:
    base: "Term"
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("exponents must be nonnegative")


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * meet join
    left: "Term"
    right: "Term"

    def __post_init__(self) -> None:
        if self.op not in {"+", "-", "*", "meet", "join"}:
            raise ValueError(f"unknown operator {self.op!r}")


Term = Union[Lit, Var, Neg, Pow, BinOp]


class ParseError(ValueError):
    """Syntax error with the 0-based input position where it occurred."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<number>[0-9]+(?:/[0-9]+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[()+\-*^,]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.lastgroup is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(
                f"unknown token {stripped[0]!r}", len(text) - len(stripped)
            )
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> tuple[str, str, int] | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _position(self) -> int:
        token = self._peek()
        return token[2] if token else len(self.text)

    def _take_punct(self, value: str) -> None:
        token = self._peek()
        if token is None or token[0] != "punct" or token[1] != value:
            raise ParseError(f"expected {value!r}", self._position())
        self.index += 1

    def parse(self) -> Term:
        term = self.expr()
        if self._peek() is not None:
            raise ParseError(
                f"unexpected token {self._peek()[1]!r}", self._position()
            )
        return term

    def expr(self) -> Term:
        term = self.addend()
        while True:
            token = self._peek()
            if token and token[0] == "punct" and token[1] in "+-":
                self.index += 1
                term = BinOp(token[1], term, self.addend())
            else:
                return term

    def addend(self) -> Term:
        term = self.factor()
        while True:
            token = self._peek()
            if token and token[0] == "punct" and token[1] == "*":
                self.index += 1
                term = BinOp("*", term, self.factor())
            else:
                return term

    def factor(self) -> Term:
        term = self.unary()
        while True:
            token = self._peek()
            if token and token[0] == "punct" and token[1] == "^":
                self.index += 1
                exponent_token = self._peek()
                if exponent_token is None or exponent_token[0] != "number":
                    raise ParseError("expected an exponent", self._position())
                if "/" in exponent_token[1]:
                    raise ParseError(
                        "exponent must be a nonnegative integer",
                        exponent_token[2],
                    )
                self.index += 1
                term = Pow(term, int(exponent_token[1]))
            else:
                return term

    def unary(self) -> Term:
        token = self._peek()
        if token and token[0] == "punct" and token[1] == "-":
            self.index += 1
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Term:
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of input", self._position())
        kind, value, position = token
        if kind == "number":
            self.index += 1
            return Lit(parse_scalar(value))
        if kind == "ident":
            self.index += 1
            if value in ("meet", "join"):
                self._take_punct("(")
                left = self.expr()
                self._take_punct(",")
                right = self.expr()
                self._take_punct(")")
                return BinOp(value, left, right)
            return Var(value)
        if kind == "punct" and value == "(":
            self.index += 1
            term = self.expr()
            self._take_punct(")")
            return term
        raise ParseError(f"unexpected token {value!r}", position)


def parse_term(text: str) -> Term:
    """Parse an expression into a term tree, or raise :class:`ParseError`."""
    return _Parser(text).parse()


def default_binding(algebra: Algebra) -> dict[str, BoolElem]:
    """Bind ``x_<atom>`` to each atom of the algebra."""
    return {f"x_{name}": algebra.atom(name) for name in algebra.atoms}


def normalize_term(
    term: Term,
    algebra: Algebra,
    binding: Mapping[str, BoolElem] | None = None,
) -> OrthElem:
    """Evaluate a term to its canonical orthogonal normal form."""
    if binding is None:
        binding = default_binding(algebra)

    def evaluate(node: Term) -> OrthElem:
        if isinstance(node, Lit):
            return orth_const(algebra, node.value)
        if isinstance(node, Var):
            try:
                bound = binding[node.name]
            except KeyError:
                raise ValueError(f"unbound generator name: {node.name!r}") from None
            if bound.algebra != algebra:
                raise ValueError(f"generator {node.name!r} bound in another algebra")
            return orth_embed(bound)
        if isinstance(node, Neg):
            return orth_neg(evaluate(node.operand))
        if isinstance(node, Pow):
            result = orth_unit(algebra)
            base = evaluate(node.base)
            for _ in range(node.exponent):
                result = orth_mul(result, base)
            return result
        if isinstance(node, BinOp):
            left, right = evaluate(node.left), evaluate(node.right)
            if node.op == "+":
                return orth_add(left, right)
            if node.op == "-":
                return orth_sub(left, right)
            if node.op == "*":
                return orth_mul(left, right)
            if node.op == "meet":
                return orth_meet(left, right)
            return orth_join(left, right)
        raise TypeError(f"not a term node: {node!r}")

    return evaluate(term)
