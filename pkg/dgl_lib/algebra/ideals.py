"""
Membership in the ideal D_mu of bounded functions on the groupoid:

    f in D_mu  <=>  f|H in D  and  f off H is in L2(nu_mu).

D is an ideal of bounded functions on H containing the finitely supported
ones, given as a predicate. For finitely supported f both clauses are
finite sums, which the certificate reports.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Sequence, Union

from dgl_lib.algebra.convolution import ConvolutionElement
from dgl_lib.algebra.measures import UnitMeasure
from dgl_lib.algebra.restriction import identity_unit
from dgl_lib.algebra.scalars import abs_squared, is_real, real_part
from dgl_lib.core.errors import ParameterError
from dgl_lib.core.report import VerificationReport
from dgl_lib.groupoid.fragment import isotropy
from dgl_lib.groupoid.structure import GroupoidElement

Number = Union[Fraction, float]


@dataclass(frozen=True)
class IdealSpec:
    """
    Attributes:
        name: 'all-functions', 'finitely-supported' or 'p-summable'.
        predicate: Decides membership of a function on H (arrow -> scalar).
        p: The exponent of the p-summable ideal.
    """
    name: str
    predicate: Callable[[Mapping[GroupoidElement, Any]], bool] = field(compare=False)
    p: Optional[Number] = None


def all_functions() -> IdealSpec:
    return IdealSpec('all-functions', lambda values: True)


def finitely_supported(window: Iterable[GroupoidElement]) -> IdealSpec:
    """
    Functions on H supported inside a declared finite window of arrows. On
    a closed fragment the isotropy group at e is the natural window.
    """
    allowed = frozenset(window)

    def predicate(values: Mapping[GroupoidElement, Any]) -> bool:
        return all(x in allowed for x, v in values.items() if v)
    return IdealSpec('finitely-supported', predicate)


def p_summable(p: Number) -> IdealSpec:
    if p <= 0:
        raise ParameterError(f"p must be positive, got {p}.")
    return IdealSpec('p-summable', lambda values: math.isfinite(float(lp_sum(values, p))), p)


def lp_sum(values: Mapping[GroupoidElement, Any], p: Number) -> Number:
    """sum |f(x)|^p; exact for real values and integer p, float otherwise."""
    total: Number = Fraction(0)
    for v in values.values():
        if is_real(v) and isinstance(p, int):
            total += abs(real_part(v)) ** p
        else:
            total += float(abs_squared(v)) ** (float(p) / 2)
    return total


@dataclass
class IdealMembership:
    member: bool
    certificate: Dict[str, Any]

    def __bool__(self) -> bool:
        return self.member


def ideal_membership(f: ConvolutionElement, spec: IdealSpec, mu: UnitMeasure) -> IdealMembership:
    """
    Evaluates both clauses. The certificate records the l^p sum of f|H (for
    p-summable specs) and the weighted sum of |f|^2 off H under nu_mu.
    """
    fragment = f.fragment
    on_h = set(isotropy(fragment, identity_unit(fragment)))
    restricted = {x: v for x, v in f.support.items() if x in on_h}
    off_h = {x: v for x, v in f.support.items() if x not in on_h}
    first = spec.predicate(restricted)
    l2 = sum((mu.weight(fragment.range(x)) * abs_squared(v) for x, v in off_h.items()), Fraction(0))
    certificate: Dict[str, Any] = {'spec': spec.name, 'restriction-support': len(restricted), 'off-H-l2-squared': str(l2)}
    if spec.p is not None:
        certificate['restriction-lp'] = str(lp_sum(restricted, spec.p))
    return IdealMembership(first and math.isfinite(float(l2)), certificate)


def verify_ideal_laws(spec: IdealSpec, mu: UnitMeasure, elements: Sequence[ConvolutionElement],
                      multipliers: Sequence[Mapping[GroupoidElement, Any]]) -> VerificationReport:
    """
    Deltas on H are members, and members are closed under addition (over
    consecutive pairs of the sample) and under pointwise multiplication by
    bounded functions.
    """
    report = VerificationReport(title=f"ideal laws: {spec.name}")
    fragment = mu.fragment
    for x in isotropy(fragment, identity_unit(fragment)):
        report.record('contains finitely supported on H',
                      ideal_membership(ConvolutionElement.delta(fragment, x), spec, mu).member,
                      lambda x=x: {'x': str(x)})
    members = [f for f in elements if ideal_membership(f, spec, mu).member]
    for i, f in enumerate(members):
        g = members[(i + 1) % len(members)]
        report.record('closed under addition', ideal_membership(f + g, spec, mu).member,
                      lambda f=f, g=g: {'f': f.to_json(), 'g': g.to_json()})
        for m in multipliers:
            report.record('absorbs bounded multipliers', ideal_membership(f.pointwise(m), spec, mu).member,
                          lambda f=f: {'f': f.to_json()})
    return report
