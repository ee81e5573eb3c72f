"""
Invariant unit subsets, orbits and the principal / minimal properties.

A subset A of the unit space is invariant when s(x) in A <=> r(x) in A for
every arrow x. For the G-structure (units = K) this agrees with the set
criterion HA n KH = HA n AH = HK n AH; for the Ghat-structure (units = H)
with AK n KH = AK n KA = HK n KA.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from dgl_lib.core.errors import DomainError
from dgl_lib.core.interfaces import GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment, isotropy
from dgl_lib.groupoid.structure import StructureTag


@dataclass
class InvarianceResult:
    """
    Attributes:
        invariant: Pointwise invariance over the fragment.
        criterion: The three-set equation over the window products, or
            None when the window is not exhaustive.
        report: The check 'criteria agree' plus an 'escape' finding
            naming an arrow that leaves the subset.
    """
    invariant: bool
    criterion: Optional[bool]
    report: VerificationReport

    def __bool__(self) -> bool:
        return self.invariant


def _products(fragment: FiniteGroupoidFragment, left: Iterable[GroupElement],
              right: Iterable[GroupElement]) -> Set[GroupElement]:
    right = list(right)
    return {fragment.pair.op(a, b) for a in left for b in right}


def _set_criterion(fragment: FiniteGroupoidFragment, subset: FrozenSet[GroupElement]) -> bool:
    hs, ks = fragment.window
    if fragment.structure is StructureTag.G:
        ha = _products(fragment, hs, subset)
        kh = _products(fragment, ks, hs)
        ah = _products(fragment, subset, hs)
        hk = _products(fragment, hs, ks)
        return (ha & kh) == (ha & ah) == (hk & ah)
    ak = _products(fragment, subset, ks)
    kh = _products(fragment, ks, hs)
    ka = _products(fragment, ks, subset)
    hk = _products(fragment, hs, ks)
    return (ak & kh) == (ak & ka) == (hk & ka)


def unit_labels(fragment: FiniteGroupoidFragment) -> List[GroupElement]:
    return [fragment.groupoid.unit_label(fragment.structure, u) for u in fragment.units()]


def is_invariant(fragment: FiniteGroupoidFragment, subset: Iterable[GroupElement]) -> InvarianceResult:
    """
    Decides invariance of a set of units, given by their labels (elements
    of K for the G-structure, of H for the Ghat-structure). On a window
    fragment, arrows with an end outside the window are not looked at.

    Raises:
        DomainError: if some label is not a unit of the fragment.
    """
    subset = frozenset(subset)
    groupoid, tag = fragment.groupoid, fragment.structure
    known = set(unit_labels(fragment))
    stray = [str(a) for a in subset if a not in known]
    if stray:
        raise DomainError(f"Not units of fragment {fragment.fragment_id}: {', '.join(sorted(stray))}.")

    report = VerificationReport(title=f"invariance: {fragment.fragment_id}")
    report.header['subset'] = sorted(str(a) for a in subset)
    invariant = True
    for x in fragment.elements:
        r, s = fragment.range(x), fragment.source(x)
        if r not in fragment or s not in fragment:
            # the arrow leaves a window; its far end is undecided
            continue
        r_in = groupoid.unit_label(tag, r) in subset
        s_in = groupoid.unit_label(tag, s) in subset
        if r_in != s_in:
            invariant = False
            report.add_finding('escape', f"arrow {x} joins a unit inside the subset to one outside", arrow=str(x))
            break

    exhaustive = fragment.is_closed and fragment.pair.is_finite
    criterion = _set_criterion(fragment, subset) if exhaustive else None
    report.record('criteria agree', None if criterion is None else criterion == invariant,
                  lambda: {'pointwise': invariant, 'set criterion': criterion})
    return InvarianceResult(invariant, criterion, report)


def unit_orbits(fragment: FiniteGroupoidFragment) -> List[List[GroupElement]]:
    """Orbits of the unit space: connected components of r(x) ~ s(x)."""
    labels = unit_labels(fragment)
    index: Dict[GroupElement, int] = {a: i for i, a in enumerate(labels)}
    rows, cols = [], []
    groupoid, tag = fragment.groupoid, fragment.structure
    for x in fragment.elements:
        r = index.get(groupoid.unit_label(tag, fragment.range(x)))
        s = index.get(groupoid.unit_label(tag, fragment.source(x)))
        if r is not None and s is not None:
            rows.append(r)
            cols.append(s)
    n = len(labels)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, component = connected_components(graph, directed=True, connection='weak')
    orbits: List[List[GroupElement]] = [[] for _ in range(count)]
    for i, label in enumerate(labels):
        orbits[component[i]].append(label)
    return orbits


def is_principal(fragment: FiniteGroupoidFragment) -> bool:
    """Every isotropy group is trivial."""
    return all(len(isotropy(fragment, u)) == 1 for u in fragment.units())


def is_minimal(fragment: FiniteGroupoidFragment) -> bool:
    """The only invariant unit subsets are empty or everything, i.e. one orbit."""
    return len(unit_orbits(fragment)) == 1


# Units with trivial isotropy are dense. On a discrete fragment the only
# dense set is the whole unit space, so this coincides with is_principal.
is_topologically_principal = is_principal


def verify_invariance_properties(fragment: FiniteGroupoidFragment) -> VerificationReport:
    """
    {e} is invariant, the unit space is invariant, every orbit is
    invariant, and principal <=> the acting factor is trivial, minimal <=>
    the unit space is a point.
    """
    report = VerificationReport(title=f"invariance properties: {fragment.fragment_id}")
    e = fragment.pair.e
    labels = unit_labels(fragment)
    subsets = [('unit space', labels)] + [('orbit', orbit) for orbit in unit_orbits(fragment)]
    if e in labels:
        subsets.insert(0, ('{e}', [e]))
    for label, subset in subsets:
        result = is_invariant(fragment, subset)
        report.record(f'invariant ({label})', result.invariant,
                      lambda subset=subset: {'subset': sorted(str(a) for a in subset)})
        report = report.merge(_named(result.report, label))
    if fragment.is_closed and fragment.pair.is_finite:
        acting, units = ((fragment.pair.H, fragment.pair.K) if fragment.structure is StructureTag.G
                         else (fragment.pair.K, fragment.pair.H))
        report.record('principal iff acting factor trivial',
                      is_principal(fragment) == (len(acting.enumerate()) == 1))
        report.record('minimal iff unit space trivial',
                      is_minimal(fragment) == (len(units.enumerate()) == 1))
    report.title = f"invariance properties: {fragment.fragment_id}"
    return report


def _named(report: VerificationReport, label: str) -> VerificationReport:
    renamed = VerificationReport(title=report.title, findings=report.findings)
    for check_id, result in report.checks.items():
        result.check_id = f"{check_id} ({label})"
        renamed.checks[result.check_id] = result
    return renamed
