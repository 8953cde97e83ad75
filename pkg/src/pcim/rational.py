"""Exact rational scalars and their "p/q" text encoding.

Every scalar in the package is a :class:`fractions.Fraction`.  Text encodings
accept ``"p/q"`` or a bare integer ``"p"``; decimal literals and floats are
rejected because they usually denote a value that is not the intended one.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_PQ = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class RationalFormatError(ValueError):
    """A value could not be read as an exact rational."""


def parse_rational(value: RationalLike) -> Fraction:
    """Read an exact rational from a Fraction, an int or a ``"p/q"`` string.

    >>> parse_rational("3/6")
    Fraction(1, 2)
    >>> parse_rational("0.5")
    Traceback (most recent call last):
    ...
    pcim.rational.RationalFormatError: '0.5' is not of the form p/q
    """
    if isinstance(value, bool):
        raise RationalFormatError(f"boolean {value!r} is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _PQ.match(value)
        if m is None:
            raise RationalFormatError(f"{value!r} is not of the form p/q")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise RationalFormatError(f"{value!r} has a zero denominator")
        return Fraction(num, den)
    raise RationalFormatError(
        f"{type(value).__name__} {value!r} is not exact; encode rationals as 'p/q' strings"
    )


def format_rational(q: Fraction) -> str:
    """Encode as ``"p/q"`` (always with an explicit denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def approx(q: Fraction, digits: int = 6) -> str:
    """Short decimal rendering for human-facing text; never parsed back."""
    return f"{float(q):.{digits}g}"
