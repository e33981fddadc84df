"""Shared test utilities: a term-level oracle and random term generation.

The term oracle evaluates a term tree directly on scalars, one atom at a
time (a bound generator contributes 1 on the atoms it contains and 0
elsewhere, meet/join are min/max).  It never touches the orthogonal-form
arithmetic it is used to check.
"""

from __future__ import annotations

import random

from specker.boolalg import Algebra, BoolElem
from specker.pointwise import PointFn
from specker.scalars import Scalar
from specker.terms import BinOp, Lit, Neg, Pow, Term, Var


def term_oracle(term: Term, algebra: Algebra, binding: dict[str, BoolElem]) -> PointFn:
    """Evaluate a term pointwise at every atom."""

    def at(term: Term, bit: int) -> Scalar:
        if isinstance(term, Lit):
            return term.value
        if isinstance(term, Var):
            return 1 if binding[term.name].mask & bit else 0
        if isinstance(term, Neg):
            return -at(term.operand, bit)
        if isinstance(term, Pow):
            return at(term.base, bit) ** term.exponent
        if isinstance(term, BinOp):
            left, right = at(term.left, bit), at(term.right, bit)
            if term.op == "+":
                return left + right
            if term.op == "-":
                return left - right
            if term.op == "*":
                return left * right
            if term.op == "meet":
                return min(left, right)
            return max(left, right)
        raise TypeError(term)

    return PointFn(
        algebra, tuple(at(term, 1 << i) for i in range(len(algebra.atoms)))
    )


def random_term(
    rng: random.Random, names: list[str], depth: int = 5, coeff_bound: int = 5
) -> Term:
    """A random term of bounded depth over the given generator names."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Lit(rng.randint(-coeff_bound, coeff_bound))
        return Var(rng.choice(names))
    kind = rng.choice(["+", "-", "*", "meet", "join", "neg", "pow"])
    if kind == "neg":
        return Neg(random_term(rng, names, depth - 1, coeff_bound))
    if kind == "pow":
        return Pow(random_term(rng, names, depth - 1, coeff_bound), rng.randint(0, 3))
    return BinOp(
        kind,
        random_term(rng, names, depth - 1, coeff_bound),
        random_term(rng, names, depth - 1, coeff_bound),
    )
