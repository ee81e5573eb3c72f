"""
Exact scalars of the convolution algebra: Gaussian rationals a + bi from
sympy's QQ_I field. Real values have b = 0.
"""
from fractions import Fraction
from typing import Any, Dict, Tuple

from sympy.polys.domains import QQ_I

from dgl_lib.exact.rational import RationalLike, as_rational, format_rational, from_qq, parse_rational, to_qq

Scalar = Any  # a QQ_I element

ZERO = QQ_I.zero
ONE = QQ_I.one


def scalar(re: RationalLike = 0, im: RationalLike = 0) -> Scalar:
    return QQ_I(to_qq(as_rational(re)), to_qq(as_rational(im)))


def as_scalar(value: Any) -> Scalar:
    """Accepts a QQ_I element, an exact rational or a (re, im) pair."""
    if isinstance(value, type(ONE)):
        return value
    if isinstance(value, tuple):
        return scalar(*value)
    return scalar(value)


def real_part(z: Scalar) -> Fraction:
    return from_qq(z.x)


def imag_part(z: Scalar) -> Fraction:
    return from_qq(z.y)


def is_real(z: Scalar) -> bool:
    return not z.y


def conj(z: Scalar) -> Scalar:
    return z.new(z.x, -z.y)


def abs_squared(z: Scalar) -> Fraction:
    return real_part(z) ** 2 + imag_part(z) ** 2


def to_complex(z: Scalar) -> complex:
    return complex(float(real_part(z)), float(imag_part(z)))


def scalar_to_json(z: Scalar) -> Dict[str, str]:
    return {'re': format_rational(real_part(z)), 'im': format_rational(imag_part(z))}


def scalar_from_json(data: Dict[str, str]) -> Scalar:
    return scalar(parse_rational(data['re']), parse_rational(data.get('im', '0')))


def scalar_pair(z: Scalar) -> Tuple[Fraction, Fraction]:
    return real_part(z), imag_part(z)
