"""
The convolution *-algebra of finitely supported functions on an étale
groupoid fragment.

    (f * g)(x) = sum over y in G_{s(x)} of f(x y^-1) g(y)
    f*(x)      = conj(f(x^-1))
    ||f||_I    = max(sup_u sum_{x in G_u} |f(x)|, sup_u sum_{x in G^u} |f(x)|)

Convolution is evaluated as the sum of f(a) g(b) delta_{ab} over the
composable pairs (a, b) of the two supports.
"""
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Union

import numpy as np

from dgl_lib.algebra.scalars import (
    ONE, ZERO, Scalar, abs_squared, as_scalar, conj, is_real, real_part, scalar_from_json, scalar_to_json,
)
from dgl_lib.core.errors import CapabilityError, CoverageError, DomainError, OwnershipError
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment
from dgl_lib.groupoid.structure import GroupoidElement

Norm = Union[Fraction, float]


def require_etale(fragment: FiniteGroupoidFragment):
    if not fragment.pair.etale:
        raise CapabilityError(f"Pair '{fragment.pair.pair_id}' is not étale; the convolution algebra needs a discrete H.")


class ConvolutionElement:
    """
    A finitely supported function on a fragment with exact scalar values.
    Zero values are dropped, so two elements are equal iff their supports
    and values agree.
    """

    def __init__(self, fragment: FiniteGroupoidFragment, values: Optional[Mapping[GroupoidElement, Any]] = None):
        self.fragment = fragment
        support: Dict[GroupoidElement, Scalar] = {}
        for x, value in (values or {}).items():
            if x not in fragment:
                raise OwnershipError(f"{x} is not an arrow of fragment {fragment.fragment_id}.")
            value = as_scalar(value)
            if value:
                support[x] = value
        self.support = support

    # --- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, fragment: FiniteGroupoidFragment) -> "ConvolutionElement":
        return cls(fragment)

    @classmethod
    def delta(cls, fragment: FiniteGroupoidFragment, x: GroupoidElement, value: Any = 1) -> "ConvolutionElement":
        return cls(fragment, {x: value})

    @classmethod
    def unit_element(cls, fragment: FiniteGroupoidFragment) -> "ConvolutionElement":
        """Indicator of the unit space, the identity of a closed fragment's algebra."""
        return cls(fragment, {u: 1 for u in fragment.units()})

    @classmethod
    def random(cls, fragment: FiniteGroupoidFragment, rng: np.random.Generator, density: float = 0.5,
               bound: int = 3, gaussian: bool = False) -> "ConvolutionElement":
        """Integer-valued random element; each arrow is in the support with the given probability."""
        values = {}
        for x in fragment.elements:
            if rng.random() < density:
                re = int(rng.integers(-bound, bound + 1))
                im = int(rng.integers(-bound, bound + 1)) if gaussian else 0
                values[x] = (re, im)
        return cls(fragment, values)

    # --- vector space --------------------------------------------------------

    def _same_fragment(self, other: "ConvolutionElement"):
        if other.fragment is not self.fragment:
            raise DomainError("Convolution elements live on different fragments.")

    def __getitem__(self, x: GroupoidElement) -> Scalar:
        return self.support.get(x, ZERO)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConvolutionElement):
            return NotImplemented
        return other.fragment is self.fragment and other.support == self.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __add__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        self._same_fragment(other)
        values = dict(self.support)
        for x, value in other.support.items():
            values[x] = values.get(x, ZERO) + value
        return ConvolutionElement(self.fragment, values)

    def __neg__(self) -> "ConvolutionElement":
        return self.scale(-ONE)

    def __sub__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        return self + (-other)

    def scale(self, c: Any) -> "ConvolutionElement":
        c = as_scalar(c)
        return ConvolutionElement(self.fragment, {x: c * v for x, v in self.support.items()})

    def pointwise(self, multiplier: Mapping[GroupoidElement, Any]) -> "ConvolutionElement":
        """Pointwise product with a bounded function given on (part of) the fragment."""
        return ConvolutionElement(self.fragment, {
            x: v * as_scalar(multiplier[x]) for x, v in self.support.items() if x in multiplier})

    # --- algebra -------------------------------------------------------------

    def __mul__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        return convolve(self, other)

    def involution(self) -> "ConvolutionElement":
        return involution(self)

    @property
    def is_real(self) -> bool:
        return all(is_real(v) for v in self.support.values())

    def restrict(self, arrows: Iterable[GroupoidElement]) -> "ConvolutionElement":
        keep = set(arrows)
        return ConvolutionElement(self.fragment, {x: v for x, v in self.support.items() if x in keep})

    # --- serialization -------------------------------------------------------

    def to_json(self) -> List[Dict[str, Any]]:
        """[{h, k, re, im}] in fragment order."""
        ambient = self.fragment.pair.ambient
        return [{'h': ambient.to_json(x.h), 'k': ambient.to_json(x.k), **scalar_to_json(self.support[x])}
                for x in self.fragment.elements if x in self.support]

    @classmethod
    def from_json(cls, fragment: FiniteGroupoidFragment, data: List[Dict[str, Any]]) -> "ConvolutionElement":
        ambient = fragment.pair.ambient
        values = {}
        for item in data:
            x = GroupoidElement(ambient.from_json(item['h']), ambient.from_json(item['k']), fragment.pair.pair_id)
            values[x] = scalar_from_json(item)
        return cls(fragment, values)

    def __repr__(self) -> str:
        terms = ", ".join(f"{x}: {v}" for x, v in self.support.items())
        return f"ConvolutionElement({{{terms}}})"


def convolve(f: ConvolutionElement, g: ConvolutionElement) -> ConvolutionElement:
    """
    Raises:
        CapabilityError: if the pair is not étale.
        CoverageError: if a product of the two supports exits a window fragment.
    """
    f._same_fragment(g)
    fragment = f.fragment
    require_etale(fragment)
    result: Dict[GroupoidElement, Scalar] = {}
    for a, fa in f.support.items():
        for b in fragment.with_range(fragment.source(a)):
            gb = g.support.get(b)
            if gb is None:
                continue
            ab = fragment.compose(a, b)
            if ab not in fragment:
                raise CoverageError(f"Product {a} * {b} = {ab} leaves fragment {fragment.fragment_id}.")
            result[ab] = result.get(ab, ZERO) + fa * gb
    return ConvolutionElement(fragment, result)


def involution(f: ConvolutionElement) -> ConvolutionElement:
    """
    Raises:
        CoverageError: if the inverse of a support arrow is not in the fragment.
    """
    fragment = f.fragment
    result = {}
    for x, v in f.support.items():
        x_inv = fragment.invert(x)
        if x_inv not in fragment:
            raise CoverageError(f"Inverse of {x} leaves fragment {fragment.fragment_id}.")
        result[x_inv] = conj(v)
    return ConvolutionElement(fragment, result)


def _absolute(v: Scalar) -> Norm:
    if is_real(v):
        return abs(real_part(v))
    return math.sqrt(abs_squared(v))


def fiber_sums(f: ConvolutionElement) -> Dict[str, Dict[GroupoidElement, Norm]]:
    """l1 sums of |f| along source fibers ('source') and range fibers ('range')."""
    fragment = f.fragment
    sums: Dict[str, Dict[GroupoidElement, Norm]] = {'source': {}, 'range': {}}
    for x, v in f.support.items():
        a = _absolute(v)
        s, r = fragment.source(x), fragment.range(x)
        sums['source'][s] = sums['source'].get(s, 0) + a
        sums['range'][r] = sums['range'].get(r, 0) + a
    return sums


def i_norm(f: ConvolutionElement) -> Norm:
    """
    The I-norm. Exact (a Fraction) when f is real-valued; a float when some
    value has a nonzero imaginary part, since |a + bi| is then irrational
    in general.
    """
    sums = fiber_sums(f)
    values = list(sums['source'].values()) + list(sums['range'].values())
    return max(values, default=Fraction(0))
