"""
Admissible pairs (H, K) and the mutual local actions.

For (h, k) in Omega = {(h, k) : hk in KH} the unique factorization
hk = (h |> k)(h <| k) defines the action h |> k in K of H on K and the
action h <| k in H of K on H.
"""
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

from dgl_lib.core.errors import CapabilityError, CoverageError, DomainError, OutOfDomainError
from dgl_lib.core.interfaces import AmbientGroup, Factorization, FactorizationOracle, GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.pair.factorization import BruteForceOracle, compare_oracles
from dgl_lib.pair.subgroup import SubgroupSpec

FACTOR_CACHE_SIZE = 1 << 17


@dataclass(frozen=True, eq=False)
class AdmissiblePair:
    """
    Attributes:
        name: Identifier of the pair; also the pair id of its groupoid elements.
        ambient: The group G.
        H: The subgroup acting on K.
        K: The subgroup acting on H.
        factorizer: Decision procedure for KH with witnesses.
        etale: True when H is discrete, which the convolution algebra requires.
    """
    name: str
    ambient: AmbientGroup
    H: SubgroupSpec
    K: SubgroupSpec
    factorizer: FactorizationOracle
    etale: bool = True
    _factor: object = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, '_factor', lru_cache(maxsize=FACTOR_CACHE_SIZE)(self.factorizer.factor))

    @property
    def pair_id(self) -> str:
        return self.name

    @property
    def e(self) -> GroupElement:
        return self.ambient.identity()

    @property
    def is_finite(self) -> bool:
        return self.H.is_exhaustive and self.K.is_exhaustive

    def op(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.ambient.op(a, b)

    def inv(self, a: GroupElement) -> GroupElement:
        return self.ambient.inv(a)

    def factor_kh(self, g: GroupElement) -> Optional[Factorization]:
        """
        Factors g = k h.

        Returns:
            (k, h) with k in K and h in H, or None when g is not in KH.

        Raises:
            CoverageError: when the oracle cannot decide.
        """
        self.ambient._require(g)
        return self._factor(g)

    def _require_members(self, h: GroupElement, k: GroupElement):
        if not self.H.contains(h):
            raise DomainError(f"{h} is not in {self.H.name} of pair '{self.name}'.")
        if not self.K.contains(k):
            raise DomainError(f"{k} is not in {self.K.name} of pair '{self.name}'.")

    def in_omega(self, h: GroupElement, k: GroupElement) -> bool:
        self._require_members(h, k)
        return self.factor_kh(self.op(h, k)) is not None

    def actions(self, h: GroupElement, k: GroupElement) -> Tuple[GroupElement, GroupElement]:
        """Returns (h |> k, h <| k)."""
        self._require_members(h, k)
        found = self.factor_kh(self.op(h, k))
        if found is None:
            raise OutOfDomainError(f"({h}, {k}) is not in Omega of pair '{self.name}'.")
        return found

    def act_right(self, h: GroupElement, k: GroupElement) -> GroupElement:
        """h |> k in K."""
        return self.actions(h, k)[0]

    def act_left(self, h: GroupElement, k: GroupElement) -> GroupElement:
        """h <| k in H."""
        return self.actions(h, k)[1]

    def omega_window(self, hs: Sequence[GroupElement], ks: Sequence[GroupElement]) -> List[Tuple[GroupElement, GroupElement]]:
        """Pairs of the window that lie in Omega; undecided pairs are left out."""
        result = []
        for h in hs:
            for k in ks:
                try:
                    if self.in_omega(h, k):
                        result.append((h, k))
                except CoverageError:
                    continue
        return result

    @cached_property
    def omega(self) -> Tuple[Tuple[GroupElement, GroupElement], ...]:
        """Omega for a finite pair, computed once."""
        if not self.is_finite:
            raise CapabilityError(f"Omega of the infinite pair '{self.name}' is not materialized; use in_omega.")
        return tuple(self.omega_window(self.H.enumerate(), self.K.enumerate()))

    def check_admissibility(self) -> VerificationReport:
        """
        H and K are subgroups, H meet K = {e} on the enumerations, and (for
        enumerable pairs) the factorization oracle matches brute force.
        """
        report = VerificationReport(title=f"admissibility: {self.name}")
        for spec in (self.H, self.K):
            if spec.is_enumerable:
                report = report.merge(spec.check_closure(self.ambient))
        e = self.e
        if self.H.is_enumerable:
            for h in self.H.enumerate():
                report.record('H meet K = {e}', h == e or not self.K.contains(h), lambda h=h: {'h': str(h)})
        if self.K.is_enumerable:
            for k in self.K.enumerate():
                report.record('H meet K = {e}', k == e or not self.H.contains(k), lambda k=k: {'k': str(k)})
        if self.H.is_enumerable and self.K.is_enumerable and not isinstance(self.factorizer, BruteForceOracle):
            brute = BruteForceOracle(self.ambient, self.H, self.K)
            sample = list(brute.table)
            for h in self.H.enumerate():
                for k in self.K.enumerate():
                    sample.append(self.op(h, k))
            report = report.merge(compare_oracles(self.factorizer, brute, sample))
        return report
