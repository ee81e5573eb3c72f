"""
Group algebra of a finite group, built directly from its left regular
permutation action. It serves as an independent oracle for the convolution
algebra of a double groupoid with trivial K, whose arrows (h, e) form a
copy of H.
"""
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from dgl_lib.algebra.convolution import ConvolutionElement, i_norm
from dgl_lib.algebra.representation import TOLERANCE, reduced_norm
from dgl_lib.algebra.scalars import ZERO, abs_squared, as_scalar, conj, is_real, real_part, to_complex
from dgl_lib.core.errors import DomainError
from dgl_lib.core.interfaces import AmbientGroup, GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment
from dgl_lib.groupoid.structure import GroupoidElement, StructureTag


class GroupAlgebra:
    """Functions on a finite group as coefficient vectors in enumeration order."""

    def __init__(self, group: AmbientGroup, elements: Sequence[GroupElement] = None):
        self.group = group
        self.elements: List[GroupElement] = list(group.enumerate() if elements is None else elements)
        self.index: Dict[GroupElement, int] = {g: i for i, g in enumerate(self.elements)}
        # pullback[g][i] = index of g^-1 a_i, so (L_g b)[i] = b[pullback[g][i]]
        self.pullback = {
            g: np.array([self.index[group.op(group.inv(g), a)] for a in self.elements])
            for g in self.elements
        }

    def vector(self, values: Mapping[GroupElement, object]) -> np.ndarray:
        v = np.array([ZERO] * len(self.elements), dtype=object)
        for g, value in values.items():
            v[self.index[g]] = as_scalar(value)
        return v

    def convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        result = np.array([ZERO] * len(self.elements), dtype=object)
        for g, i in self.index.items():
            if a[i]:
                result = result + np.array([a[i] * c for c in b[self.pullback[g]]], dtype=object)
        return result

    def involution(self, a: np.ndarray) -> np.ndarray:
        return np.array([conj(a[self.index[self.group.inv(g)]]) for g in self.elements], dtype=object)

    def l1_norm(self, a: np.ndarray):
        if all(is_real(c) for c in a):
            return sum((abs(real_part(c)) for c in a), Fraction(0))
        return float(sum(np.sqrt(float(abs_squared(c))) for c in a))

    def operator(self, a: np.ndarray) -> np.ndarray:
        n = len(self.elements)
        m = np.zeros((n, n), dtype=complex)
        for g, i in self.index.items():
            if a[i]:
                m[np.arange(n), self.pullback[g]] += to_complex(a[i])
        return m

    def reduced_norm(self, a: np.ndarray) -> float:
        return float(np.linalg.norm(self.operator(a), 2))


def _as_group_case(fragment: FiniteGroupoidFragment) -> Tuple[GroupAlgebra, Dict[GroupoidElement, GroupElement]]:
    if fragment.structure is not StructureTag.G or len(fragment.units()) != 1:
        raise DomainError("The group-algebra comparison needs a G-structure fragment over trivial K.")
    pair = fragment.pair
    hs = [x.h for x in fragment.elements]
    return GroupAlgebra(pair.ambient, hs), {x: x.h for x in fragment.elements}


def compare_with_group_algebra(fragment: FiniteGroupoidFragment,
                               samples: Sequence[Tuple[ConvolutionElement, ConvolutionElement]]) -> VerificationReport:
    """
    Convolution, involution and I-norm agree exactly, reduced norms within
    TOLERANCE, between the groupoid algebra and the group algebra of H.
    """
    algebra, to_h = _as_group_case(fragment)
    report = VerificationReport(title=f"group-algebra oracle: {fragment.fragment_id}")

    def vec(f: ConvolutionElement) -> np.ndarray:
        return algebra.vector({to_h[x]: v for x, v in f.support.items()})

    for f, g in samples:
        case = lambda f=f, g=g: {'f': f.to_json(), 'g': g.to_json()}
        vf, vg = vec(f), vec(g)
        report.record('convolution', list(vec(f * g)) == list(algebra.convolve(vf, vg)), case)
        report.record('involution', list(vec(f.involution())) == list(algebra.involution(vf)), case)
        mine, theirs = i_norm(f), algebra.l1_norm(vf)
        if isinstance(mine, Fraction) and isinstance(theirs, Fraction):
            report.record('I-norm', mine == theirs, case)
        else:
            report.record('I-norm', abs(float(mine) - float(theirs)) <= TOLERANCE, case)
        report.record('reduced norm', abs(reduced_norm(f).value - algebra.reduced_norm(vf)) <= TOLERANCE, case)
    return report
