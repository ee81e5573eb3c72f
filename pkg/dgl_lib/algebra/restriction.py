"""
Restriction to the isotropy group at e.

The unit e is invariant, so every convolution witness of an arrow of the
isotropy group G_e (a copy of H in the G-structure) again lies in G_e, and
psi(f) = f|G_e is a *-homomorphism onto the group algebra of G_e whose
kernel is spanned by the arrows off G_e.
"""
from typing import List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from dgl_lib.algebra.convolution import ConvolutionElement
from dgl_lib.algebra.representation import TOLERANCE, reduced_norm
from dgl_lib.core.errors import CoverageError
from dgl_lib.core.report import VerificationReport
from dgl_lib.groupoid.fragment import ClosureStatus, FiniteGroupoidFragment, isotropy
from dgl_lib.groupoid.structure import GroupoidElement


def identity_unit(fragment: FiniteGroupoidFragment) -> GroupoidElement:
    """
    Raises:
        CoverageError: if the fragment does not contain the unit e.
    """
    u = fragment.groupoid.unit(fragment.structure, fragment.pair.e)
    if u not in fragment:
        raise CoverageError(f"Fragment {fragment.fragment_id} does not contain the unit e.")
    return u


def isotropy_fragment(fragment: FiniteGroupoidFragment) -> FiniteGroupoidFragment:
    """The isotropy group at e as a closed fragment of its own."""
    u = identity_unit(fragment)
    arrows = tuple(isotropy(fragment, u))
    for a in arrows:
        if fragment.invert(a) not in arrows:
            raise CoverageError(f"The e-isotropy of {fragment.fragment_id} is not closed under inverses.")
        for b in arrows:
            if fragment.compose(a, b) not in arrows:
                raise CoverageError(f"The e-isotropy of {fragment.fragment_id} is not closed under products.")
    hs, ks = fragment.window
    return FiniteGroupoidFragment(fragment.groupoid, fragment.structure, arrows, ClosureStatus.CLOSED, (hs, ks))


def restrict_to_H(f: ConvolutionElement, target: FiniteGroupoidFragment) -> ConvolutionElement:
    """psi(f) = f restricted to the isotropy fragment at e."""
    return ConvolutionElement(target, {x: v for x, v in f.support.items() if x in target})


def _psi_rank(fragment: FiniteGroupoidFragment, target: FiniteGroupoidFragment) -> Tuple[int, List[GroupoidElement]]:
    """Rank of psi in the delta bases, and the arrows psi kills."""
    images = [restrict_to_H(ConvolutionElement.delta(fragment, y), target) for y in fragment.elements]
    rows = [[QQ(1) if image[x] else QQ(0) for image in images] for x in target.elements]
    matrix = DomainMatrix(rows, (len(target), len(fragment)), QQ)
    killed = [y for y, image in zip(fragment.elements, images) if not image.support]
    return matrix.rank(), killed


def exactness_check(fragment: FiniteGroupoidFragment,
                    samples: Sequence[Tuple[ConvolutionElement, ConvolutionElement]]) -> VerificationReport:
    """
    psi multiplicative and *-preserving on the samples, kernel of psi equal
    to the span of the arrows off G_e (and an ideal), psi surjective,
    dim ker + dim im = number of arrows, and ||psi(f)||_r <= ||f||_r.
    """
    report = VerificationReport(title=f"restriction to H: {fragment.fragment_id}")
    target = isotropy_fragment(fragment)
    for f, g in samples:
        pf, pg = restrict_to_H(f, target), restrict_to_H(g, target)
        report.record('psi multiplicative', restrict_to_H(f * g, target) == pf * pg,
                      lambda f=f, g=g: {'f': f.to_json(), 'g': g.to_json()})
        report.record('psi *-preserving', restrict_to_H(f.involution(), target) == pf.involution(),
                      lambda f=f: {'f': f.to_json()})
        if fragment.is_closed:
            big, small = reduced_norm(f), reduced_norm(pf)
            report.record('||psi(f)|| <= ||f||', small.value <= big.value + TOLERANCE,
                          lambda f=f, big=big, small=small: {'f': f.to_json(), 'norm': big.value, 'psi-norm': small.value})

    rank, killed = _psi_rank(fragment, target)
    off_h = [x for x in fragment.elements if x not in target]
    kernel_dim = len(fragment) - rank
    report.record('kernel = off-H span', set(killed) == set(off_h) and kernel_dim == len(off_h),
                  lambda: {'kernel-dim': kernel_dim, 'off-H': len(off_h)})
    report.record('psi surjective', rank == len(target), lambda: {'rank': rank, 'target': len(target)})
    report.record('dim ker + dim im = |fragment|', kernel_dim + rank == len(fragment))
    if fragment.is_closed:
        for x in off_h:
            for y in fragment.elements:
                for left, right in ((x, y), (y, x)):
                    xy = fragment.compose(left, right)
                    if xy is None:
                        continue
                    report.record('kernel is an ideal', xy not in target,
                                  lambda left=left, right=right: {'a': str(left), 'b': str(right)})
    return report
