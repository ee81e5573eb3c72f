"""
SL2 and the positive scalars inside GL2.

G = GL2(Q), H = SL2(Q), K = {xI : x > 0}. A matrix g lies in KH iff det g is
the square of a positive rational x, and then g = (xI)(g/x). Scalars are
central, so both actions are trivial and each structure is a product of a
group with a space.
"""
import logging
from fractions import Fraction
from math import isqrt
from typing import Any, Dict, Optional

import numpy as np

from dgl_lib.core.errors import OutOfDomainError
from dgl_lib.core.interfaces import Factorization, GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.examples.base import ClaimedActions, ExampleInstance, int_param, reject_unknown
from dgl_lib.examples.windows import random_sl2
from dgl_lib.exact.groups import RationalMatrixGroup
from dgl_lib.exact.matrix import ExactMatrix
from dgl_lib.groupoid.fragment import enumerate_fragment
from dgl_lib.groupoid.structure import GroupoidElement, StructureTag
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import ClosedFormOracle
from dgl_lib.pair.identities import SamplePlan
from dgl_lib.pair.subgroup import SubgroupSpec

# finite subgroup of SL2(Z) of order 6
ORDER_SIX = ExactMatrix.from_rows([[0, -1], [1, 1]])


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """The positive square root of q when q is the square of a rational, else None."""
    if q <= 0:
        return None
    p, d = isqrt(q.numerator), isqrt(q.denominator)
    if p * p != q.numerator or d * d != q.denominator:
        return None
    return Fraction(p, d)


def build_gl2_scalars(params: Dict[str, Any]) -> ExampleInstance:
    """
    Parameters: samples (random SL2 window elements on top of the cyclic
    subgroup of order 6, default 6), seed (default 0), bound (default 3).
    """
    params = dict(params)
    samples = int_param(params, 'samples', 6, minimum=0)
    seed = int_param(params, 'seed', 0, minimum=0)
    bound = int_param(params, 'bound', 3, minimum=1)
    reject_unknown('gl2-scalars', params)
    group = RationalMatrixGroup("GL2(Q)", 2, special=False)

    def k_of(x) -> GroupElement:
        x = Fraction(x)
        if x <= 0:
            raise OutOfDomainError(f"K = positive scalars needs x > 0, got {x}.")
        return group.element(ExactMatrix.identity(2).scaled(x))

    def k_contains(g: GroupElement) -> bool:
        m = g.payload
        return m[0, 1] == 0 and m[1, 0] == 0 and m[0, 0] == m[1, 1] and m[0, 0] > 0

    cyclic = [group.identity()]
    generator = group.element(ORDER_SIX)
    while len(cyclic) < 6:
        cyclic.append(group.op(cyclic[-1], generator))
    rng = np.random.default_rng(seed)
    hs = list(cyclic)
    while len(hs) < len(cyclic) + samples:
        candidate = group.element(random_sl2(rng, bound))
        if candidate not in hs:
            hs.append(candidate)
    ks = [k_of(x) for x in (1, 2, Fraction(1, 2), 3, 4)]

    h_spec = SubgroupSpec('H', contains=lambda g: g.payload.determinant() == 1, parametrize=group.element,
                          parameters_of=lambda g: g.payload, elements=tuple(hs), is_window=True)
    k_spec = SubgroupSpec('K', contains=k_contains, parametrize=k_of,
                          parameters_of=lambda g: g.payload[0, 0], elements=tuple(ks), is_window=True)

    def factor(g: GroupElement) -> Optional[Factorization]:
        x = rational_sqrt(g.payload.determinant())
        if x is None:
            return None
        return k_of(x), group.element(g.payload.scaled(1 / x))

    oracle = ClosedFormOracle(factor, "g = (xI)(g/x) with x = sqrt(det g)")
    pair = AdmissiblePair(f"gl2-scalars(samples={samples},seed={seed})", group, h_spec, k_spec, oracle, etale=False)
    claimed = ClaimedActions(right=lambda h, k: k, left=lambda h, k: h, omega=lambda h, k: True)

    def check_product_structure(instance: ExampleInstance) -> VerificationReport:
        """Both structures compose as products: (h1, k)(h2, k) = (h1 h2, k) and (h, k1)(h, k2) = (h, k1 k2)."""
        report = VerificationReport(title=f"product groupoids: {instance.pair.name}")
        p = instance.pair
        for tag in (StructureTag.G, StructureTag.GHAT):
            fragment = enumerate_fragment(p, tag, cyclic, ks)
            for a in fragment.elements:
                for b in fragment.elements:
                    product = fragment.compose(a, b)
                    if tag is StructureTag.G:
                        expected = GroupoidElement(p.op(a.h, b.h), b.k, p.pair_id) if a.k == b.k else None
                    else:
                        expected = GroupoidElement(a.h, p.op(a.k, b.k), p.pair_id) if a.h == b.h else None
                    report.record(f'product composition ({tag.value})', product == expected,
                                  lambda a=a, b=b: {'a': str(a), 'b': str(b)})
        report.record('non-square determinant outside KH',
                      p.factor_kh(group.element(ExactMatrix.from_rows([[2, 0], [0, 1]]))) is None)
        report.record('negative determinant outside KH',
                      p.factor_kh(group.element(ExactMatrix.from_rows([[-1, 0], [0, 1]]))) is None)
        return report

    logging.info(f"Built gl2-scalars model with windows of {len(hs)} x {len(ks)}.")
    return ExampleInstance(
        name='gl2-scalars', parameters={'samples': samples, 'seed': seed, 'bound': bound},
        pair=pair, claimed=claimed, plan=SamplePlan(tuple(hs), tuple(ks), seed=seed),
        fragment_window=(tuple(cyclic), (ks[0],)),
        extra_checks=[check_product_structure])
