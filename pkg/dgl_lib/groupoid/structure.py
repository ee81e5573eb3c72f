"""
The two groupoid structures on Omega(H, K).

G-structure (units (e, k), identified with K):
    (h1, h2 |> k2)(h2, k2) = (h1 h2, k2)
    (h, k)^-1 = (h^-1, h |> k),  r(h, k) = (e, h |> k),  s(h, k) = (e, k)

Ghat-structure (units (h, e), identified with H):
    (h1, k1)(h1 <| k1, k2) = (h1, k1 k2)
    (h, k)^-1 = (h <| k, k^-1),  r(h, k) = (h, e),  s(h, k) = (h <| k, e)

gamma(h, k) = (h <| k, k^-1) is an involutive automorphism of the G-structure.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from dgl_lib.core.errors import OutOfDomainError, OwnershipError
from dgl_lib.core.interfaces import GroupElement
from dgl_lib.pair.admissible_pair import AdmissiblePair


class StructureTag(Enum):
    G = 'G-structure'
    GHAT = 'Ghat-structure'


@dataclass(frozen=True)
class GroupoidElement:
    """An arrow (h, k) in Omega of the pair named pair_id."""
    h: GroupElement
    k: GroupElement
    pair_id: str

    def __str__(self) -> str:
        return f"({self.h}, {self.k})"


class DoubleGroupoid:
    """
    Operations of both groupoid structures over one admissible pair.

    Non-composability is reported as None, never as an error.
    """

    def __init__(self, pair: AdmissiblePair):
        self.pair = pair

    @property
    def pair_id(self) -> str:
        return self.pair.pair_id

    def element(self, h: GroupElement, k: GroupElement) -> GroupoidElement:
        """
        Raises:
            OutOfDomainError: if (h, k) is not in Omega.
        """
        if not self.pair.in_omega(h, k):
            raise OutOfDomainError(f"({h}, {k}) is not in Omega of pair '{self.pair_id}'.")
        return GroupoidElement(h, k, self.pair_id)

    def _own(self, a: GroupoidElement):
        if a.pair_id != self.pair_id:
            raise OwnershipError(f"Arrow {a} belongs to pair '{a.pair_id}', not '{self.pair_id}'.")

    # --- units ---------------------------------------------------------------

    def unit(self, tag: StructureTag, x: GroupElement) -> GroupoidElement:
        """The unit (e, k) for k in K (G) or (h, e) for h in H (Ghat)."""
        e = self.pair.e
        if tag is StructureTag.G:
            return GroupoidElement(e, x, self.pair_id)
        return GroupoidElement(x, e, self.pair_id)

    def unit_label(self, tag: StructureTag, u: GroupoidElement) -> GroupElement:
        """The element of K (G) or H (Ghat) a unit is identified with."""
        return u.k if tag is StructureTag.G else u.h

    def is_unit(self, tag: StructureTag, a: GroupoidElement) -> bool:
        e = self.pair.e
        return a.h == e if tag is StructureTag.G else a.k == e

    # --- structure maps ------------------------------------------------------

    def compose(self, tag: StructureTag, a: GroupoidElement, b: GroupoidElement) -> Optional[GroupoidElement]:
        self._own(a)
        self._own(b)
        p = self.pair
        if tag is StructureTag.G:
            if a.k != p.act_right(b.h, b.k):
                return None
            return GroupoidElement(p.op(a.h, b.h), b.k, self.pair_id)
        if b.h != p.act_left(a.h, a.k):
            return None
        return GroupoidElement(a.h, p.op(a.k, b.k), self.pair_id)

    def invert(self, tag: StructureTag, a: GroupoidElement) -> GroupoidElement:
        self._own(a)
        p = self.pair
        right, left = p.actions(a.h, a.k)
        if tag is StructureTag.G:
            return GroupoidElement(p.inv(a.h), right, self.pair_id)
        return GroupoidElement(left, p.inv(a.k), self.pair_id)

    def range(self, tag: StructureTag, a: GroupoidElement) -> GroupoidElement:
        self._own(a)
        if tag is StructureTag.G:
            return self.unit(tag, self.pair.act_right(a.h, a.k))
        return self.unit(tag, a.h)

    def source(self, tag: StructureTag, a: GroupoidElement) -> GroupoidElement:
        self._own(a)
        if tag is StructureTag.G:
            return self.unit(tag, a.k)
        return self.unit(tag, self.pair.act_left(a.h, a.k))

    def gamma(self, a: GroupoidElement) -> GroupoidElement:
        """(h, k) -> (h <| k, k^-1)."""
        self._own(a)
        return GroupoidElement(self.pair.act_left(a.h, a.k), self.pair.inv(a.k), self.pair_id)
