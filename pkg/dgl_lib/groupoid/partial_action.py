"""
The partial action of H on K.

Each h in H gives a partial bijection theta_h: D_h -> D_{h^-1},
k -> h |> k, on the domain D_h = {k in K : hk in KH} = h^-1 KH n K.
"""
from typing import List, Optional, Sequence

from dgl_lib.core.errors import CoverageError, OutOfDomainError
from dgl_lib.core.interfaces import GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.pair.admissible_pair import AdmissiblePair


def _decided(pair: AdmissiblePair, h: GroupElement, k: GroupElement) -> Optional[bool]:
    try:
        return pair.in_omega(h, k)
    except CoverageError:
        return None


def partial_domain(pair: AdmissiblePair, h: GroupElement,
                   window: Optional[Sequence[GroupElement]] = None) -> List[GroupElement]:
    """
    The part of D_h inside the window (default: the enumeration of K).
    Elements the oracle cannot decide are left out.
    """
    ks = pair.K.enumerate() if window is None else window
    return [k for k in ks if _decided(pair, h, k)]


def partial_map(pair: AdmissiblePair, h: GroupElement, k: GroupElement) -> GroupElement:
    """
    theta_h(k) = h |> k.

    Raises:
        OutOfDomainError: if k is not in D_h.
    """
    if not pair.in_omega(h, k):
        raise OutOfDomainError(f"{k} is not in the domain D_h of h = {h}.")
    return pair.act_right(h, k)


def closed_domain(pair: AdmissiblePair, h: GroupElement) -> List[GroupElement]:
    """D_h computed as the set h^-1 KH n K, for a finite pair."""
    kh = {pair.op(k, x) for k in pair.K.enumerate() for x in pair.H.enumerate()}
    return [k for k in pair.K.enumerate() if pair.op(h, k) in kh]


def verify_partial_action(pair: AdmissiblePair, hs: Sequence[GroupElement],
                          ks: Sequence[GroupElement]) -> VerificationReport:
    """
    Over the window: theta_h is injective, maps D_h into D_{h^-1} with
    theta_{h^-1} o theta_h = id, and theta_g o theta_h is contained in
    theta_{gh}. On finite pairs D_h also equals h^-1 KH n K.
    """
    report = VerificationReport(title=f"partial action: {pair.name}")
    report.header.update({'h-window': len(hs), 'k-window': len(ks)})
    domains = {h: partial_domain(pair, h, ks) for h in hs}

    for h, domain in domains.items():
        images = {}
        h_inv = pair.inv(h)
        for k in domain:
            case = lambda h=h, k=k: {'h': str(h), 'k': str(k)}
            image = pair.act_right(h, k)
            report.record('injective', images.setdefault(image, k) == k,
                          lambda h=h, k=k, image=image: {'h': str(h), 'k': str(k), 'other': str(images[image])})
            back = _decided(pair, h_inv, image)
            report.record('image in D_{h^-1}', back, case)
            if back:
                report.record('theta_{h^-1} theta_h = id', pair.act_right(h_inv, image) == k, case)
            else:
                report.record('theta_{h^-1} theta_h = id', None)

    for g in hs:
        for h, domain in domains.items():
            gh = pair.op(g, h)
            for k in domain:
                image = pair.act_right(h, k)
                inner = _decided(pair, g, image)
                if not inner:
                    report.record('theta_g theta_h in theta_gh', None)
                    continue
                outer = _decided(pair, gh, k)
                if outer is None:
                    report.record('theta_g theta_h in theta_gh', None)
                    continue
                report.record('theta_g theta_h in theta_gh',
                              outer and pair.act_right(gh, k) == pair.act_right(g, image),
                              lambda g=g, h=h, k=k: {'g': str(g), 'h': str(h), 'k': str(k)})

    if pair.is_finite:
        for h in hs:
            report.record('D_h = h^-1 KH n K', set(domains[h]) == set(closed_domain(pair, h)) & set(ks),
                          lambda h=h: {'h': str(h)})
    return report
