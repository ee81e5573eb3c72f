"""
Subgroup specifications.

A SubgroupSpec knows how to decide membership, optionally how to build
elements from parameters, and optionally how to enumerate itself: fully
when finite, or through a declared window when infinite.
"""
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence, Tuple

from dgl_lib.core.errors import CapabilityError
from dgl_lib.core.interfaces import AmbientGroup, GroupElement
from dgl_lib.core.report import VerificationReport


@dataclass(frozen=True)
class SubgroupSpec:
    """
    Attributes:
        name: Display name ('H', 'K', ...).
        contains: Membership predicate on ambient elements.
        parametrize: Optional map from parameters to elements.
        parameters_of: Optional inverse of parametrize.
        elements: Full enumeration (finite) or window (infinite), if any.
        is_window: True when elements is only a window into an infinite subgroup.
    """
    name: str
    contains: Callable[[GroupElement], bool]
    parametrize: Optional[Callable[..., GroupElement]] = None
    parameters_of: Optional[Callable[[GroupElement], Any]] = None
    elements: Optional[Tuple[GroupElement, ...]] = None
    is_window: bool = False

    def enumerate(self) -> Tuple[GroupElement, ...]:
        if self.elements is None:
            raise CapabilityError(f"Subgroup {self.name} has no enumeration or window.")
        return self.elements

    @property
    def is_enumerable(self) -> bool:
        return self.elements is not None

    @property
    def is_exhaustive(self) -> bool:
        """True when the enumeration is the whole (finite) subgroup."""
        return self.elements is not None and not self.is_window

    def with_window(self, elements: Sequence[GroupElement]) -> "SubgroupSpec":
        return SubgroupSpec(self.name, self.contains, self.parametrize, self.parameters_of,
                            tuple(elements), is_window=True)

    def check_closure(self, ambient: AmbientGroup) -> VerificationReport:
        """
        Membership must hold for the identity and every enumerated element,
        and be closed under products and inverses of enumerated elements.
        """
        report = VerificationReport(title=f"subgroup closure: {self.name}")
        report.record('identity member', self.contains(ambient.identity()))
        elements = self.enumerate()
        for a in elements:
            report.record('enumerated member', self.contains(a), lambda a=a: {'a': str(a)})
            report.record('closed under inverse', self.contains(ambient.inv(a)), lambda a=a: {'a': str(a)})
        for a in elements:
            for b in elements:
                report.record('closed under product', self.contains(ambient.op(a, b)),
                              lambda a=a, b=b: {'a': str(a), 'b': str(b)})
        return report
