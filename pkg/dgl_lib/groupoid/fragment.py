"""
Finite groupoid fragments and their axiom checks.

A fragment is the set of arrows of Omega inside a window H_w x K_w, viewed
under one of the two structures. Its closure status is computed: a window
whose units, inverses and composable products all stay inside is promoted
to a closed fragment, i.e. a genuine finite groupoid.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from dgl_lib.core.errors import CoverageError, DomainError
from dgl_lib.core.interfaces import GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.core_engine.workers import batched, run_batches
from dgl_lib.groupoid.structure import DoubleGroupoid, GroupoidElement, StructureTag
from dgl_lib.pair.admissible_pair import AdmissiblePair

BATCH_SIZE = 8


class ClosureStatus(Enum):
    CLOSED = 'closed'
    WINDOW = 'window'


def _describe(a: Optional[GroupoidElement]) -> Optional[str]:
    return None if a is None else str(a)


@dataclass(frozen=True, eq=False)
class FiniteGroupoidFragment:
    """
    Attributes:
        groupoid: The double groupoid the arrows belong to.
        structure: Which of the two structures the fragment is read in.
        elements: The arrows, in window order.
        closure_status: CLOSED when the fragment is a finite groupoid.
        window: The (H, K) window it was enumerated from.
    """
    groupoid: DoubleGroupoid
    structure: StructureTag
    elements: Tuple[GroupoidElement, ...]
    closure_status: ClosureStatus
    window: Tuple[Tuple[GroupElement, ...], Tuple[GroupElement, ...]]
    _members: frozenset = field(init=False, repr=False)
    _by_range: Dict[GroupoidElement, List[GroupoidElement]] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, '_members', frozenset(self.elements))
        by_range: Dict[GroupoidElement, List[GroupoidElement]] = {}
        for x in self.elements:
            by_range.setdefault(self.groupoid.range(self.structure, x), []).append(x)
        object.__setattr__(self, '_by_range', by_range)

    @property
    def pair(self) -> AdmissiblePair:
        return self.groupoid.pair

    @property
    def fragment_id(self) -> str:
        return f"{self.pair.pair_id}/{self.structure.value}"

    @property
    def is_closed(self) -> bool:
        return self.closure_status is ClosureStatus.CLOSED

    def __contains__(self, a: GroupoidElement) -> bool:
        return a in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def units(self) -> List[GroupoidElement]:
        return [x for x in self.elements if self.groupoid.is_unit(self.structure, x)]

    def with_range(self, u: GroupoidElement) -> List[GroupoidElement]:
        """Arrows x of the fragment with r(x) = u."""
        return list(self._by_range.get(u, ()))

    def compose(self, a: GroupoidElement, b: GroupoidElement) -> Optional[GroupoidElement]:
        return self.groupoid.compose(self.structure, a, b)

    def invert(self, a: GroupoidElement) -> GroupoidElement:
        return self.groupoid.invert(self.structure, a)

    def range(self, a: GroupoidElement) -> GroupoidElement:
        return self.groupoid.range(self.structure, a)

    def source(self, a: GroupoidElement) -> GroupoidElement:
        return self.groupoid.source(self.structure, a)


def _is_closed(groupoid: DoubleGroupoid, tag: StructureTag, elements: Sequence[GroupoidElement]) -> bool:
    members = set(elements)
    by_range: Dict[GroupoidElement, List[GroupoidElement]] = {}
    for x in elements:
        if groupoid.range(tag, x) not in members or groupoid.source(tag, x) not in members:
            return False
        if groupoid.invert(tag, x) not in members:
            return False
        by_range.setdefault(groupoid.range(tag, x), []).append(x)
    for a in elements:
        for b in by_range.get(groupoid.source(tag, a), ()):
            if groupoid.compose(tag, a, b) not in members:
                return False
    return True


def enumerate_fragment(pair: AdmissiblePair, tag: StructureTag,
                       h_window: Optional[Sequence[GroupElement]] = None,
                       k_window: Optional[Sequence[GroupElement]] = None) -> FiniteGroupoidFragment:
    """
    Collects the arrows of Omega inside h_window x k_window.

    Args:
        pair: The admissible pair.
        tag: The structure to read the fragment in.
        h_window: Elements of H; defaults to the enumeration of H.
        k_window: Elements of K; defaults to the enumeration of K.

    Raises:
        CapabilityError: if a default window is requested from a subgroup
            without enumeration.
        DomainError: if the window contains no arrow.
    """
    hs = tuple(pair.H.enumerate() if h_window is None else h_window)
    ks = tuple(pair.K.enumerate() if k_window is None else k_window)
    groupoid = DoubleGroupoid(pair)
    elements = tuple(GroupoidElement(h, k, pair.pair_id) for h, k in pair.omega_window(hs, ks))
    if not elements:
        raise DomainError(f"The window of pair '{pair.pair_id}' contains no arrow of Omega.")
    try:
        closed = _is_closed(groupoid, tag, elements)
    except CoverageError:
        closed = False
    status = ClosureStatus.CLOSED if closed else ClosureStatus.WINDOW
    logging.info(f"Enumerated {tag.value} fragment of '{pair.pair_id}': "
                 f"{len(elements)} arrows, {status.value}.")
    return FiniteGroupoidFragment(groupoid, tag, elements, status, (hs, ks))


def _check_elementwise(fragment: FiniteGroupoidFragment) -> VerificationReport:
    report = VerificationReport(title="groupoid axioms: elementwise")
    window = not fragment.is_closed
    for x in fragment.elements:
        case = lambda x=x: {'x': str(x)}
        inverse = fragment.invert(x)
        r, s = fragment.range(x), fragment.source(x)
        try:
            in_omega = fragment.pair.in_omega(inverse.h, inverse.k)
        except CoverageError:
            in_omega = None
        report.record('inverse in Omega', in_omega, case)
        report.record('inverse involution', fragment.invert(inverse) == x, case)
        report.record('r(x) = x x^-1', fragment.compose(x, inverse) == r, case)
        report.record('s(x) = x^-1 x', fragment.compose(inverse, x) == s, case)
        report.record('left unit', fragment.compose(r, x) == x, case)
        report.record('right unit', fragment.compose(x, s) == x, case)
        if window and inverse not in fragment:
            report.record_skip('inverse in fragment')
        else:
            report.record('inverse in fragment', inverse in fragment, case)
    return report


def _check_pairs(fragment: FiniteGroupoidFragment, batch: Sequence[GroupoidElement]) -> VerificationReport:
    report = VerificationReport(title="groupoid axioms: pairs and triples")
    elements = fragment.elements
    for a in batch:
        s_a = fragment.source(a)
        for b in elements:
            ab = fragment.compose(a, b)
            case = lambda a=a, b=b, ab=ab: {'a': str(a), 'b': str(b), 'ab': _describe(ab)}
            report.record('composable iff s(a) = r(b)', (ab is not None) == (s_a == fragment.range(b)), case)
            if ab is None:
                continue
            report.record('r(ab) = r(a), s(ab) = s(b)',
                          fragment.range(ab) == fragment.range(a) and fragment.source(ab) == fragment.source(b),
                          case)
            if ab not in fragment:
                # a window lets composites exit
                report.record_skip('associativity', len(fragment.with_range(fragment.source(b))))
                continue
            for c in fragment.with_range(fragment.source(b)):
                bc = fragment.compose(b, c)
                if bc not in fragment:
                    report.record('associativity', None)
                    continue
                try:
                    left = fragment.compose(ab, c)
                    right = fragment.compose(a, bc)
                except CoverageError:
                    report.record('associativity', None)
                    continue
                report.record('associativity', left is not None and left == right,
                              lambda a=a, b=b, c=c, left=left, right=right: {
                                  'a': str(a), 'b': str(b), 'c': str(c),
                                  '(ab)c': _describe(left), 'a(bc)': _describe(right)})
    return report


def verify_groupoid_axioms(fragment: FiniteGroupoidFragment) -> VerificationReport:
    """
    Checks the groupoid axioms over the fragment: composability iff
    s(a) = r(b), range and source of products, r(x) = x x^-1, s(x) = x^-1 x,
    unit laws, inverse laws and associativity on composable triples.

    Triples whose composites exit a window fragment are skips.
    """
    report = _check_elementwise(fragment)
    report = report.merge(run_batches(
        "groupoid axioms", batched(fragment.elements, BATCH_SIZE),
        lambda batch: _check_pairs(fragment, batch)))
    report.title = f"groupoid axioms: {fragment.fragment_id}"
    report.header.update({'structure': fragment.structure.value,
                          'closure-status': fragment.closure_status.value,
                          'arrows': len(fragment)})
    return report


def isotropy(fragment: FiniteGroupoidFragment, u: GroupoidElement) -> List[GroupoidElement]:
    """
    The isotropy group at u: arrows x with r(x) = s(x) = u.

    Raises:
        DomainError: if u is not a unit of the fragment.
    """
    if u not in fragment or not fragment.groupoid.is_unit(fragment.structure, u):
        raise DomainError(f"{u} is not a unit of fragment {fragment.fragment_id}.")
    return [x for x in fragment.with_range(u) if fragment.source(x) == u]


def verify_isotropy_at_identity(fragment: FiniteGroupoidFragment) -> VerificationReport:
    """
    At the unit e the isotropy is a copy of the other factor: h -> (h, e)
    is an isomorphism of H onto the G-isotropy, k -> (e, k) of K onto the
    Ghat-isotropy.
    """
    report = VerificationReport(title=f"isotropy at e: {fragment.fragment_id}")
    pair, groupoid, tag = fragment.pair, fragment.groupoid, fragment.structure
    e = pair.e
    unit = groupoid.unit(tag, e)
    group = isotropy(fragment, unit)
    hs, ks = fragment.window
    if tag is StructureTag.G:
        expected = [GroupoidElement(h, e, pair.pair_id) for h in hs]
        embed = lambda x: GroupoidElement(x, e, pair.pair_id)
        factor = hs
    else:
        expected = [GroupoidElement(e, k, pair.pair_id) for k in ks]
        embed = lambda x: GroupoidElement(e, x, pair.pair_id)
        factor = ks
    report.record('isotropy at e is the embedded factor', set(group) == set(expected),
                  lambda: {'isotropy': sorted(str(x) for x in group)})
    members = set(group)
    for a in factor:
        for b in factor:
            ab = pair.op(a, b)
            if embed(ab) not in members:
                report.record('embedding multiplicative', None)
                continue
            product = fragment.compose(embed(a), embed(b))
            report.record('embedding multiplicative', product == embed(ab),
                          lambda a=a, b=b: {'a': str(a), 'b': str(b)})
    return report


def verify_gamma(fragment: FiniteGroupoidFragment) -> VerificationReport:
    """
    gamma(h, k) = (h <| k, k^-1) over a G-structure fragment: result in
    Omega, gamma o gamma = id, gamma preserves composability and products,
    (h |> k)^-1 = (h <| k) |> k^-1, and gamma restricted to the isotropy
    at k is h -> h <| k onto the isotropy at k^-1.

    Raises:
        DomainError: if the fragment is not read in the G-structure.
    """
    if fragment.structure is not StructureTag.G:
        raise DomainError("gamma is an automorphism of the G-structure; enumerate a G-structure fragment.")
    report = VerificationReport(title=f"gamma: {fragment.fragment_id}")
    pair, groupoid = fragment.pair, fragment.groupoid
    for x in fragment.elements:
        case = lambda x=x: {'x': str(x)}
        gx = groupoid.gamma(x)
        report.record('gamma in Omega', pair.in_omega(gx.h, gx.k), case)
        report.record('gamma o gamma = id', groupoid.gamma(gx) == x, case)
        report.record('(h |> k)^-1 = (h <| k) |> k^-1',
                      pair.inv(pair.act_right(x.h, x.k)) == pair.act_right(gx.h, gx.k), case)
        report.record('gamma r = r gamma', groupoid.range(StructureTag.G, gx)
                      == groupoid.gamma(groupoid.range(StructureTag.G, x)), case)
    for a in fragment.elements:
        for b in fragment.with_range(fragment.source(a)):
            ab = fragment.compose(a, b)
            ga, gb = groupoid.gamma(a), groupoid.gamma(b)
            gab = fragment.compose(ga, gb)
            report.record('gamma homomorphism', gab is not None and gab == groupoid.gamma(ab),
                          lambda a=a, b=b, gab=gab: {'a': str(a), 'b': str(b), 'gamma(a)gamma(b)': _describe(gab)})
    for u in fragment.units():
        k = u.k
        target = groupoid.unit(StructureTag.G, pair.inv(k))
        if target not in fragment:
            report.record_skip('gamma on isotropy')
            continue
        image = {groupoid.gamma(x).h for x in isotropy(fragment, u)}
        expected = {x.h for x in isotropy(fragment, target)}
        report.record('gamma on isotropy', image == expected, lambda k=k: {'k': str(k)})
    return report
