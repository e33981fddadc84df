"""Exact scalars for the coefficient domain.

The coefficient domain is a totally ordered integral domain: either the
integers or the rationals.  Integers are plain ``int`` (arbitrary
precision), rationals are ``fractions.Fraction`` (kept in lowest terms
with positive denominator).  Both are exact and totally ordered, the
integers embed in the rationals without loss, and no operation used
anywhere in this package can introduce rounding.  Which domain a
computation lives in is decided by whoever constructs the scalars
(parsers, random generators, callers); arithmetic itself never mixes in
floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]

# optional sign, digits, optional "/digits"; no whitespace inside a literal
_LITERAL = re.compile(r"-?[0-9]+(?:/[0-9]+)?")


def parse_scalar(text: str) -> Scalar:
    """Parse an integer or ``p/q`` rational literal into an exact scalar.

    Rationals are normalized; a rational that reduces to an integer is
    returned as ``int``.  Raises ``ValueError`` on malformed text or a
    zero denominator.
    """
    if not isinstance(text, str) or not _LITERAL.fullmatch(text):
        raise ValueError(f"malformed scalar literal: {text!r}")
    if "/" in text:
        num_text, den_text = text.split("/")
        den = int(den_text)
        if den == 0:
            raise ValueError(f"zero denominator in scalar literal: {text!r}")
        value = Fraction(int(num_text), den)
        return int(value) if value.denominator == 1 else value
    return int(text)


def format_scalar(value: Scalar) -> str:
    """Canonical text for a scalar; inverse of :func:`parse_scalar`."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)
