"""
Core Interfaces (Abstract Base Classes)

This module defines the abstract base classes every construction of the
workbench runs on: ambient groups with exact, canonical element payloads,
and factorization oracles that decide membership in KH and produce the
witnesses (k, h) of a factorization g = kh, and verifiable units of work
for the verification harness.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Any, Hashable, List, Optional, Tuple

from dgl_lib.core.errors import OwnershipError

if TYPE_CHECKING:
    from dgl_lib.core.report import VerificationReport

# Type alias for canonical element payloads (matrices, residue tuples, table indices, pairs)
Payload = Hashable
# Type alias for JSON-ready payload encodings
JsonPayload = Any


class GroupKind(Enum):
    FINITE_TABLE = 'finite-table'
    MATRIX_RATIONAL = 'matrix-over-rationals'
    MATRIX_MOD_N = 'matrix-over-Z/n'
    SEMIDIRECT = 'semidirect-product'
    QUOTIENT_BY_CENTER = 'quotient-by-center'


def format_payload(payload: Any) -> str:
    if isinstance(payload, tuple):
        return "(" + ", ".join(format_payload(p) for p in payload) + ")"
    return str(payload)


@dataclass(frozen=True)
class GroupElement:
    """
    An element g of an ambient group.

    The payload is always in canonical form, so equality of elements is
    equality of payloads within the same owning group.
    """
    payload: Payload
    group_id: str

    def __str__(self) -> str:
        return format_payload(self.payload)


class AmbientGroup(ABC):
    """
    An interface for a group given by exact element representations.

    Subclasses implement the payload-level arithmetic; the public methods
    wrap it with ownership checks so that elements of different groups are
    never mixed silently.
    """

    def __init__(self, group_id: str, kind: GroupKind):
        self.group_id = group_id
        self.kind = kind
        self._identity = None

    @abstractmethod
    def canonical(self, payload: Any) -> Payload:
        """
        Bring a raw payload into canonical form.

        Raises:
            ValidationError: if the payload does not describe a group element.
        """
        pass

    @abstractmethod
    def _multiply(self, p: Payload, q: Payload) -> Payload:
        pass

    @abstractmethod
    def _invert(self, p: Payload) -> Payload:
        pass

    @abstractmethod
    def _identity_payload(self) -> Payload:
        pass

    @abstractmethod
    def payload_to_json(self, payload: Payload) -> JsonPayload:
        pass

    @abstractmethod
    def payload_from_json(self, data: JsonPayload) -> Payload:
        pass

    def enumerate(self) -> Optional[List[GroupElement]]:
        """Returns every element when the group is finite, otherwise None."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.enumerate() is not None

    def element(self, payload: Any) -> GroupElement:
        return GroupElement(self.canonical(payload), self.group_id)

    def owns(self, a: GroupElement) -> bool:
        return isinstance(a, GroupElement) and a.group_id == self.group_id

    def _require(self, a: GroupElement):
        if not self.owns(a):
            raise OwnershipError(f"Element {a!r} does not belong to group '{self.group_id}'.")

    def op(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._require(a)
        self._require(b)
        return GroupElement(self._multiply(a.payload, b.payload), self.group_id)

    def inv(self, a: GroupElement) -> GroupElement:
        self._require(a)
        return GroupElement(self._invert(a.payload), self.group_id)

    def identity(self) -> GroupElement:
        if self._identity is None:
            self._identity = GroupElement(self._identity_payload(), self.group_id)
        return self._identity

    def is_identity(self, a: GroupElement) -> bool:
        return a == self.identity()

    def to_json(self, a: GroupElement) -> JsonPayload:
        self._require(a)
        return self.payload_to_json(a.payload)

    def from_json(self, data: JsonPayload) -> GroupElement:
        return self.element(self.payload_from_json(data))

    def __repr__(self) -> str:
        return f"{type(self).__name__}('{self.group_id}')"


# A factorization g = k h, returned as the pair (k, h)
Factorization = Tuple[GroupElement, GroupElement]


class OracleKind(Enum):
    CLOSED_FORM = 'closed-form'
    BRUTE_FORCE = 'brute-force'
    HYBRID = 'hybrid'


class FactorizationOracle(ABC):
    """
    An interface for deciding g in KH and returning its witnesses.
    """
    kind: OracleKind

    @abstractmethod
    def factor(self, g: GroupElement) -> Optional[Factorization]:
        """
        Factor g as k h with k in K and h in H.

        Args:
            g: An element of the ambient group.

        Returns:
            The pair (k, h), or None when g is not in KH.

        Raises:
            CoverageError: if the oracle cannot decide (e.g. a brute-force
                search over a window that does not contain the witnesses).
        """
        pass


class Verifiable(ABC):
    """
    An interface for anything the verification harness can run: a unit of
    work with a stable name that produces a VerificationReport.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """A stable identifier used in logs, events and report headers."""
        pass

    @abstractmethod
    def verify(self) -> "VerificationReport":
        """
        Run every check of this unit.

        Returns:
            The consolidated report. Failures are recorded, not raised.
        """
        pass
