"""Exact rational helpers shared across the package.

Everything in this library runs on ``fractions.Fraction`` (arbitrary
precision, canonical lowest terms, positive denominators), so equality is
structural and no comparison ever goes through floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class NonSquareValueError(ValueError):
    """Raised when an exact rational square root is required but absent."""


def parse_rational(text: str) -> Fraction:
    """Parse a rational written as ``p/q`` or a plain integer string."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {type(text).__name__}")
    s = text.strip()
    if "." in s or "e" in s or "E" in s:
        raise ValueError(f"rational {text!r} must be written as p/q, not a float")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {text!r}: {exc}") from None


def format_rational(value: Fraction) -> str:
    """Canonical ``p/q`` (or plain integer) string, lowest terms."""
    return str(Fraction(value))


def is_square(value: Fraction) -> bool:
    """True iff ``value`` is the square of a rational."""
    if value < 0:
        return False
    num, den = value.numerator, value.denominator
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def sqrt_rational(value: Fraction) -> Fraction:
    """Exact nonnegative square root of a rational square.

    Raises NonSquareValueError when the root is irrational; callers that
    need square roots (the tight h/k construction) enforce squared inputs
    up front so this never silently approximates.
    """
    if value < 0:
        raise NonSquareValueError(f"{value} is negative")
    num, den = value.numerator, value.denominator
    rnum, rden = isqrt(num), isqrt(den)
    if rnum * rnum != num or rden * rden != den:
        raise NonSquareValueError(f"{value} is not the square of a rational")
    return Fraction(rnum, rden)
