"""
Atomic measures on the unit space of a fragment.

A unit measure mu induces the arrow measures nu(f) = sum_x mu(r(x)) f(x)
and nu^-1(f) = sum_x mu(s(x)) f(x). mu is quasi-invariant when nu and
nu^-1 have the same null sets; for atomic measures this says that mu is
either positive or zero along each arrow, i.e. on each unit orbit. The
modular function is Delta(x) = mu(r(x)) / mu(s(x)).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional

from dgl_lib.algebra.convolution import ConvolutionElement
from dgl_lib.algebra.scalars import ZERO, Scalar, scalar
from dgl_lib.core.errors import DomainError, SupportError
from dgl_lib.core.report import VerificationReport
from dgl_lib.exact.rational import RationalLike, as_rational
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment, isotropy
from dgl_lib.groupoid.structure import GroupoidElement


@dataclass
class UnitMeasure:
    """
    Attributes:
        fragment: The fragment whose units carry the weights.
        weights: Non-negative rational weight per unit; missing units weigh 0.
    """
    fragment: FiniteGroupoidFragment
    weights: Dict[GroupoidElement, Fraction]

    def __post_init__(self):
        units = set(self.fragment.units())
        weights = {}
        for u, w in self.weights.items():
            if u not in units:
                raise DomainError(f"{u} is not a unit of fragment {self.fragment.fragment_id}.")
            w = as_rational(w)
            if w < 0:
                raise DomainError(f"Negative weight {w} at unit {u}.")
            weights[u] = w
        self.weights = weights

    def weight(self, u: GroupoidElement) -> Fraction:
        return self.weights.get(u, Fraction(0))

    @property
    def full_support(self) -> bool:
        return all(self.weight(u) > 0 for u in self.fragment.units())

    def require_full_support(self):
        for u in self.fragment.units():
            if self.weight(u) == 0:
                raise SupportError(f"The measure vanishes at unit {u}.")


def counting_measure(fragment: FiniteGroupoidFragment) -> UnitMeasure:
    return UnitMeasure(fragment, {u: 1 for u in fragment.units()})


def measure_from_labels(fragment: FiniteGroupoidFragment, weights: Mapping[object, RationalLike]) -> UnitMeasure:
    """Builds a measure from weights keyed by unit labels (elements of K or H)."""
    groupoid, tag = fragment.groupoid, fragment.structure
    by_label = {groupoid.unit_label(tag, u): u for u in fragment.units()}
    return UnitMeasure(fragment, {by_label[label]: w for label, w in weights.items()})


def normalized_measure(fragment: FiniteGroupoidFragment,
                       base: Optional[UnitMeasure] = None) -> UnitMeasure:
    """
    Rescales a full-support measure (default: uniform) so that the unit e
    has weight 1.

    Raises:
        DomainError: if e is not a unit of the fragment.
        SupportError: if the base measure vanishes somewhere.
    """
    groupoid, tag = fragment.groupoid, fragment.structure
    e_unit = groupoid.unit(tag, fragment.pair.e)
    if e_unit not in fragment:
        raise DomainError(f"Fragment {fragment.fragment_id} does not contain the unit e.")
    base = base or counting_measure(fragment)
    base.require_full_support()
    scale = base.weight(e_unit)
    return UnitMeasure(fragment, {u: w / scale for u, w in base.weights.items()})


def is_quasi_invariant(mu: UnitMeasure) -> bool:
    fragment = mu.fragment
    return all((mu.weight(fragment.range(x)) > 0) == (mu.weight(fragment.source(x)) > 0)
               for x in fragment.elements)


def modular_function(mu: UnitMeasure) -> Dict[GroupoidElement, Fraction]:
    """
    Raises:
        SupportError: if mu vanishes on some unit.
    """
    mu.require_full_support()
    fragment = mu.fragment
    return {x: mu.weight(fragment.range(x)) / mu.weight(fragment.source(x)) for x in fragment.elements}


def nu(mu: UnitMeasure, f: ConvolutionElement) -> Scalar:
    fragment = mu.fragment
    total = ZERO
    for x, v in f.support.items():
        total = total + scalar(mu.weight(fragment.range(x))) * v
    return total


def nu_inverse(mu: UnitMeasure, f: ConvolutionElement) -> Scalar:
    fragment = mu.fragment
    total = ZERO
    for x, v in f.support.items():
        total = total + scalar(mu.weight(fragment.source(x))) * v
    return total


def verify_measure(mu: UnitMeasure) -> VerificationReport:
    """
    Full support, mu({e}) = 1 when e is a unit, quasi-invariance, Delta
    multiplicative, Delta = 1 on isotropy and nu(delta_x) = nu^-1(Delta delta_x).
    """
    fragment = mu.fragment
    report = VerificationReport(title=f"measure: {fragment.fragment_id}")
    report.record('full support', mu.full_support)
    e_unit = fragment.groupoid.unit(fragment.structure, fragment.pair.e)
    if e_unit in fragment:
        report.record('mu({e}) = 1', mu.weight(e_unit) == 1, lambda: {'mu(e)': str(mu.weight(e_unit))})
    else:
        report.record('mu({e}) = 1', None)
    report.record('quasi-invariant', is_quasi_invariant(mu))
    if not mu.full_support:
        return report
    delta = modular_function(mu)
    for x in fragment.elements:
        for y in fragment.with_range(fragment.source(x)):
            xy = fragment.compose(x, y)
            if xy not in delta:
                report.record('Delta multiplicative', None)
                continue
            report.record('Delta multiplicative', delta[xy] == delta[x] * delta[y],
                          lambda x=x, y=y: {'x': str(x), 'y': str(y)})
        d = ConvolutionElement.delta(fragment, x)
        report.record('nu = nu^-1 o Delta', nu(mu, d) == nu_inverse(mu, d.scale(delta[x])),
                      lambda x=x: {'x': str(x)})
    for u in fragment.units():
        for x in isotropy(fragment, u):
            report.record('Delta = 1 on isotropy', delta[x] == 1, lambda x=x: {'x': str(x)})
    return report
