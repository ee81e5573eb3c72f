"""
Sanov's free subgroup of SL2(Z) acting partially on Z inside SL3(Z).

H = <[[1, 2], [0, 1]], [[1, 0], [2, 1]]> is free of rank two and equals the
set of matrices A_n = [[4n1 + 1, 2n2], [2n3, 4n4 + 1]] of determinant one,
embedded as the top-left block. K = {B_x : x in Z} with B_x the identity
plus x at position (2, 3). A_n B_x = B_y A_m iff m = n, y = (4n4 + 1)x and
n2 x = 0.
"""
import logging
from collections import deque
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from dgl_lib.core.errors import DomainError, FreenessViolation
from dgl_lib.core.interfaces import Factorization, GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.examples.base import ClaimedActions, ExampleInstance, int_param, reject_unknown
from dgl_lib.exact.groups import RationalMatrixGroup
from dgl_lib.exact.matrix import ExactMatrix, block_embed
from dgl_lib.groupoid.partial_action import partial_domain
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import ClosedFormOracle
from dgl_lib.pair.identities import SamplePlan
from dgl_lib.pair.subgroup import SubgroupSpec

GENERATORS = {
    'a': ExactMatrix.from_rows([[1, 2], [0, 1]]),
    'A': ExactMatrix.from_rows([[1, -2], [0, 1]]),
    'b': ExactMatrix.from_rows([[1, 0], [2, 1]]),
    'B': ExactMatrix.from_rows([[1, 0], [-2, 1]]),
}
INVERSE_LETTER = {'a': 'A', 'A': 'a', 'b': 'B', 'B': 'b'}


def ball_size(radius: int) -> int:
    """Number of reduced words of length at most radius in a free group of rank two."""
    return 2 * 3 ** radius - 1


def integral_sl3() -> RationalMatrixGroup:
    return RationalMatrixGroup("SL3(Z)", 3, special=True,
                               shape_predicate=lambda m: all(e.denominator == 1 for e in m.entries))


def is_sanov_block(m: ExactMatrix) -> bool:
    """Top-left block in Sanov's form, rest of the identity untouched."""
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if any(v.denominator != 1 for v in (a, b, c, d)):
        return False
    outside = (m[0, 2], m[1, 2], m[2, 0], m[2, 1], m[2, 2])
    return (outside == (0, 0, 0, 0, 1) and a.numerator % 4 == 1 and d.numerator % 4 == 1
            and b.numerator % 2 == 0 and c.numerator % 2 == 0 and a * d - b * c == 1)


def sanov_parameters(m: ExactMatrix) -> Tuple[int, int, int, int]:
    """(n1, n2, n3, n4) of A_n."""
    return (int((m[0, 0] - 1) / 4), int(m[0, 1] / 2), int(m[1, 0] / 2), int((m[1, 1] - 1) / 4))


def b_matrix(x: int) -> ExactMatrix:
    return ExactMatrix.from_rows([[1, 0, 0], [0, 1, x], [0, 0, 1]])


def word_ball(group: RationalMatrixGroup, radius: int) -> List[Tuple[str, GroupElement]]:
    """
    The ball of the given radius in the Sanov generators, breadth first over
    reduced words, as (word, element) in order of word length.

    Raises:
        FreenessViolation: if two distinct reduced words give the same matrix.
    """
    identity = group.identity()
    ball: List[Tuple[str, GroupElement]] = [('', identity)]
    seen: Dict[GroupElement, str] = {identity: ''}
    queue = deque([('', identity)])
    while queue:
        word, element = queue.popleft()
        if len(word) == radius:
            continue
        for letter, generator in GENERATORS.items():
            if word and INVERSE_LETTER[word[-1]] == letter:
                continue
            product = group.op(element, group.element(block_embed(generator, 3)))
            longer = word + letter
            if product in seen:
                raise FreenessViolation(f"Reduced words '{seen[product]}' and '{longer}' give the same matrix {product}.")
            seen[product] = longer
            ball.append((longer, product))
            queue.append((longer, product))
    return ball


def build_sanov(params: Dict[str, Any]) -> ExampleInstance:
    """
    Parameters: L (word-length radius of the H window, default 3), M (K
    window is |x| <= M, default 5), max_cases (triple-sweep subsample,
    default 0 for exhaustive).

    Raises:
        DomainError: if L or M is not positive.
    """
    params = dict(params)
    radius = int_param(params, 'L', 3)
    bound = int_param(params, 'M', 5)
    max_cases = int_param(params, 'max_cases', 0, minimum=0)
    reject_unknown('sanov', params)
    if radius < 1 or bound < 1:
        raise DomainError(f"Sanov windows need L >= 1 and M >= 1, got L = {radius}, M = {bound}.")
    group = integral_sl3()
    ball = word_ball(group, radius)
    hs = tuple(element for _, element in ball)
    ks = tuple(group.element(b_matrix(x)) for x in range(-bound, bound + 1))

    def k_contains(g: GroupElement) -> bool:
        m = g.payload
        return m.with_entry(1, 2, 0) == ExactMatrix.identity(3)

    def k_param(g: GroupElement) -> int:
        return int(g.payload[1, 2])

    h_spec = SubgroupSpec('H', contains=lambda g: is_sanov_block(g.payload), parametrize=group.element,
                          parameters_of=lambda g: sanov_parameters(g.payload), elements=hs, is_window=True)
    k_spec = SubgroupSpec('K', contains=k_contains, parametrize=lambda x: group.element(b_matrix(x)),
                          parameters_of=k_param, elements=ks, is_window=True)

    def factor(g: GroupElement) -> Optional[Factorization]:
        m = g.payload
        if m[0, 2] != 0:
            return None
        h = m.with_entry(1, 2, 0)
        if not is_sanov_block(h):
            return None
        return group.element(b_matrix(int(m[1, 2]))), group.element(h)

    oracle = ClosedFormOracle(factor, "g = B_y A_m iff g[1][3] = 0 and the block is in Sanov form")
    pair = AdmissiblePair(f"sanov(L={radius},M={bound})", group, h_spec, k_spec, oracle, etale=True)

    def claimed_right(h: GroupElement, k: GroupElement) -> GroupElement:
        n4 = sanov_parameters(h.payload)[3]
        return group.element(b_matrix((4 * n4 + 1) * k_param(k)))

    claimed = ClaimedActions(
        right=claimed_right,
        left=lambda h, k: h,
        omega=lambda h, k: sanov_parameters(h.payload)[1] * k_param(k) == 0,
    )

    def check_window(instance: ExampleInstance) -> VerificationReport:
        report = VerificationReport(title=f"Sanov window: {instance.pair.name}")
        report.record('ball size 2*3^L - 1', len(hs) == ball_size(radius),
                      {'ball': len(hs), 'expected': ball_size(radius)})
        for word, h in ball:
            report.record('Sanov congruences', is_sanov_block(h.payload), lambda word=word, h=h: {'word': word, 'h': str(h)})
        return report

    def check_domains(instance: ExampleInstance) -> VerificationReport:
        report = VerificationReport(title=f"Sanov domains: {instance.pair.name}")
        p = instance.pair
        b0 = group.element(b_matrix(0))
        for h in hs:
            n = sanov_parameters(h.payload)
            expected = list(ks) if n[1] == 0 else [b0]
            report.record('D_{A_n} dichotomy', partial_domain(p, h, ks) == expected,
                          lambda h=h: {'h': str(h), 'n': list(n)})
            if n[1] == 0:
                report.record('n2 = 0 forces n1 = n4 = 0', n[0] == 0 and n[3] == 0, lambda h=h: {'h': str(h)})
                report.record('trivial action on full domain', all(p.act_right(h, k) == k for k in ks),
                              lambda h=h: {'h': str(h)})
        for k in ks:
            x = k_param(k)
            domain = [h for h in hs if p.in_omega(h, k)]
            expected = list(hs) if x == 0 else [h for h in hs if sanov_parameters(h.payload)[1] == 0]
            report.record('D_{B_x} dichotomy', domain == expected, {'x': x})
        full = [h for h in hs if sanov_parameters(h.payload)[1] == 0]
        report.add_finding(
            'sharpening',
            "n2 = 0 forces n1 = n4 = 0 by the determinant, so A_n |> B_x = B_{(4n4+1)x} is B_x wherever D_{A_n} = K",
            full_domain_elements=[str(h) for h in full])
        return report

    logging.info(f"Built Sanov model: ball of radius {radius} ({len(hs)} elements), |x| <= {bound}.")
    return ExampleInstance(
        name='sanov', parameters={'L': radius, 'M': bound, 'max_cases': max_cases}, pair=pair, claimed=claimed,
        plan=SamplePlan(hs, ks, max_cases=max_cases or None),
        fragment_window=(hs[:ball_size(1)], ks[bound - 1:bound + 2]),
        extra_checks=[check_window, check_domains])
