"""
The free group acting on the lattice Z^2 by matrix multiplication.

Inside SL3(Z), H is Sanov's free subgroup in the top-left block and K the
translations T(w) = [[I, w], [0, 1]]. Since A T(w) = T(Aw) A, the group they
generate is the semidirect product H x| Z^2, Omega = H x K, A |> T(w) = T(Aw)
and <| is trivial: the G-structure is the transformation groupoid of the
lattice action, the Ghat-structure the product H x Z^2.
"""
import logging
from typing import Any, Dict, Optional, Tuple

from dgl_lib.core.errors import DomainError
from dgl_lib.core.interfaces import Factorization, GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.examples.base import ClaimedActions, ExampleInstance, int_param, reject_unknown
from dgl_lib.examples.sanov import integral_sl3, is_sanov_block, word_ball
from dgl_lib.exact.matrix import ExactMatrix
from dgl_lib.groupoid.partial_action import partial_domain
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import ClosedFormOracle
from dgl_lib.pair.identities import SamplePlan
from dgl_lib.pair.subgroup import SubgroupSpec


def translation(w1: int, w2: int) -> ExactMatrix:
    return ExactMatrix.from_rows([[1, 0, w1], [0, 1, w2], [0, 0, 1]])


def build_free_transformation(params: Dict[str, Any]) -> ExampleInstance:
    """
    Parameters: L (word-length radius of the H window, default 2), M (K window
    is max(|w1|, |w2|) <= M, default 1).

    Raises:
        DomainError: if L or M is not positive.
    """
    params = dict(params)
    radius = int_param(params, 'L', 2)
    bound = int_param(params, 'M', 1)
    reject_unknown('free-transformation', params)
    if radius < 1 or bound < 1:
        raise DomainError(f"Windows need L >= 1 and M >= 1, got L = {radius}, M = {bound}.")
    group = integral_sl3()
    hs = tuple(element for _, element in word_ball(group, radius))
    ks = tuple(group.element(translation(w1, w2))
               for w1 in range(-bound, bound + 1) for w2 in range(-bound, bound + 1))

    def vector(k: GroupElement) -> Tuple[int, int]:
        return int(k.payload[0, 2]), int(k.payload[1, 2])

    def k_contains(g: GroupElement) -> bool:
        return g.payload.with_entry(0, 2, 0).with_entry(1, 2, 0) == ExactMatrix.identity(3)

    h_spec = SubgroupSpec('H', contains=lambda g: is_sanov_block(g.payload), parametrize=group.element,
                          parameters_of=lambda g: g.payload, elements=hs, is_window=True)
    k_spec = SubgroupSpec('K', contains=k_contains, parametrize=lambda w1, w2: group.element(translation(w1, w2)),
                          parameters_of=vector, elements=ks, is_window=True)

    def factor(g: GroupElement) -> Optional[Factorization]:
        m = g.payload
        block = m.with_entry(0, 2, 0).with_entry(1, 2, 0)
        if not is_sanov_block(block):
            return None
        return group.element(translation(int(m[0, 2]), int(m[1, 2]))), group.element(block)

    oracle = ClosedFormOracle(factor, "[[A, w], [0, 1]] = T(w) A")
    pair = AdmissiblePair(f"free-transformation(L={radius},M={bound})", group, h_spec, k_spec, oracle, etale=True)

    def act(h: GroupElement, k: GroupElement) -> GroupElement:
        m = h.payload
        w1, w2 = vector(k)
        return group.element(translation(int(m[0, 0] * w1 + m[0, 1] * w2), int(m[1, 0] * w1 + m[1, 1] * w2)))

    claimed = ClaimedActions(right=act, left=lambda h, k: h, omega=lambda h, k: True)

    def check_full_domains(instance: ExampleInstance) -> VerificationReport:
        report = VerificationReport(title=f"lattice action: {instance.pair.name}")
        for h in hs:
            report.record('D_h = K', partial_domain(instance.pair, h, ks) == list(ks), lambda h=h: {'h': str(h)})
        return report

    logging.info(f"Built free-transformation model: {len(hs)} group elements, {len(ks)} translations.")
    return ExampleInstance(
        name='free-transformation', parameters={'L': radius, 'M': bound}, pair=pair, claimed=claimed,
        plan=SamplePlan(hs, ks), fragment_window=(hs[:5], ks),
        extra_checks=[check_full_domains])
