"""
Exact rational scalars.

Rationals are `fractions.Fraction` values, which are reduced with a
positive denominator on construction. Floats are rejected: every value
entering the exact layer must be given as an int, a Fraction or a string.
"""
from fractions import Fraction
from typing import Union

from sympy import QQ

RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerces an int, string ("3", "-2/7") or Fraction to a canonical Fraction."""
    if isinstance(value, bool):
        raise TypeError("Booleans are not rationals.")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError(f"Float {value!r} rejected by the exact layer; pass a string or Fraction.")
    # sympy / gmpy rationals expose numerator and denominator
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"Cannot interpret {value!r} as a rational.")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("Empty rational string.")
    if any(c in text for c in '.eE'):
        raise ValueError(f"Decimal notation not accepted for exact rationals: '{text}'.")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_qq(q: Fraction):
    return QQ(q.numerator, q.denominator)


def from_qq(x) -> Fraction:
    return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))
