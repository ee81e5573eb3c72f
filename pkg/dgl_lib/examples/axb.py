"""
The ax+b group and the real line inside PSL2.

G = SL2(Q)/{I, -I}, H = {i(a, b) = [[a, b], [0, 1/a]] : a > 0} with
(a, b)(c, d) = (ac, ad + b/c), and K = {j(x) = [[1, 0], [x, 1]]}.
A canonical g = [[p, q], [r, s]] lies in KH iff p != 0, and then
g = j(r/p) i(p, q). The published actions are

    (a, b) |> x = x / (a(a + bx))
    (a, b) <| x = (a + bx, b) if a + bx > 0, (-a - bx, -b) if a + bx < 0

on Omega = {a + bx != 0}.
"""
import logging
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import numpy as np

from dgl_lib.core.errors import OutOfDomainError
from dgl_lib.core.interfaces import Factorization, GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.examples.base import ClaimedActions, ExampleInstance, int_param, reject_unknown
from dgl_lib.examples.windows import random_rational, rational_grid
from dgl_lib.exact.groups import ProjectiveMatrixGroup
from dgl_lib.exact.matrix import ExactMatrix
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import ClosedFormOracle
from dgl_lib.pair.identities import SamplePlan
from dgl_lib.pair.subgroup import SubgroupSpec


def i_matrix(a: Fraction, b: Fraction) -> ExactMatrix:
    return ExactMatrix.from_rows([[a, b], [0, 1 / a]])


def j_matrix(x: Fraction) -> ExactMatrix:
    return ExactMatrix.from_rows([[1, 0], [x, 1]])


def h_law(p: Tuple[Fraction, Fraction], q: Tuple[Fraction, Fraction]) -> Tuple[Fraction, Fraction]:
    """(a, b)(c, d) = (ac, ad + b/c)."""
    (a, b), (c, d) = p, q
    return a * c, a * d + b / c


def published_right(a: Fraction, b: Fraction, x: Fraction) -> Fraction:
    return x / (a * (a + b * x))


def published_left(a: Fraction, b: Fraction, x: Fraction) -> Tuple[Fraction, Fraction]:
    w = a + b * x
    if w == 0:
        raise OutOfDomainError(f"a + bx = 0 at (a, b) = ({a}, {b}), x = {x}.")
    return (w, b) if w > 0 else (-w, -b)


def build_axb(params: Dict[str, Any]) -> ExampleInstance:
    """
    Parameters: bound (grid bound, default 3), samples (random branch sweep,
    default 1000), seed (default 0), max_cases (triple-sweep subsample,
    default 8).
    """
    params = dict(params)
    bound = int_param(params, 'bound', 3, minimum=2)
    samples = int_param(params, 'samples', 1000, minimum=0)
    seed = int_param(params, 'seed', 0, minimum=0)
    max_cases = int_param(params, 'max_cases', 8, minimum=1)
    reject_unknown('axb-psl2', params)
    group = ProjectiveMatrixGroup("PSL2(Q)", 2)

    def h_of(a, b) -> GroupElement:
        a, b = Fraction(a), Fraction(b)
        if a <= 0:
            raise OutOfDomainError(f"H = ax+b group needs a > 0, got a = {a}.")
        return group.element(i_matrix(a, b))

    def k_of(x) -> GroupElement:
        return group.element(j_matrix(Fraction(x)))

    def h_params(g: GroupElement) -> Tuple[Fraction, Fraction]:
        return g.payload[0, 0], g.payload[0, 1]

    def k_param(g: GroupElement) -> Fraction:
        return g.payload[1, 0]

    grid = rational_grid(bound)
    positive = [v for v in grid if v > 0]
    hs = tuple(h_of(a, b) for a in positive for b in rational_grid(bound - 1, (1,)))
    ks = tuple(k_of(x) for x in grid)
    h_spec = SubgroupSpec('H', contains=lambda g: g.payload[1, 0] == 0, parametrize=h_of,
                          parameters_of=h_params, elements=hs, is_window=True)
    k_spec = SubgroupSpec('K', contains=lambda g: g.payload[0, 0] == 1 and g.payload[0, 1] == 0 and g.payload[1, 1] == 1,
                          parametrize=k_of, parameters_of=k_param, elements=ks, is_window=True)

    def factor(g: GroupElement) -> Optional[Factorization]:
        m = g.payload
        p, q, r = m[0, 0], m[0, 1], m[1, 0]
        if p == 0:
            return None
        # canonical representatives have p > 0 whenever p != 0
        return k_of(r / p), h_of(p, q)

    oracle = ClosedFormOracle(factor, "[[p, q], [r, s]] = j(r/p) i(p, q) for p != 0")
    pair = AdmissiblePair(f"axb-psl2(bound={bound})", group, h_spec, k_spec, oracle, etale=False)

    claimed = ClaimedActions(
        right=lambda h, k: k_of(published_right(*h_params(h), k_param(k))),
        left=lambda h, k: h_of(*published_left(*h_params(h), k_param(k))),
        omega=lambda h, k: h_params(h)[0] + h_params(h)[1] * k_param(k) != 0,
    )

    def check_spot_values(instance: ExampleInstance) -> VerificationReport:
        report = VerificationReport(title=f"spot values: {instance.pair.name}")
        p = instance.pair
        report.record('(2,1) |> 1 = 1/6', k_param(p.act_right(h_of(2, 1), k_of(1))) == Fraction(1, 6))
        report.record('(2,1) <| 1 = (3,1)', h_params(p.act_left(h_of(2, 1), k_of(1))) == (3, 1))
        report.record('(1,1) <| -2 = (1,-1)', h_params(p.act_left(h_of(1, 1), k_of(-2))) == (1, -1))
        report.record('(1,0) |> x = x', all(p.act_right(h_of(1, 0), k) == k for k in ks))
        report.record('a + bx = 0 outside Omega', not p.in_omega(h_of(1, 1), k_of(-1)))
        return report

    def check_random_branches(instance: ExampleInstance) -> VerificationReport:
        report = VerificationReport(title=f"random branches: {instance.pair.name}")
        rng = np.random.default_rng(seed)
        p = instance.pair
        branches = {'a + bx > 0': 0, 'a + bx < 0': 0}
        for _ in range(samples):
            a = abs(random_rational(rng, bound, nonzero=True))
            b, x = random_rational(rng, bound), random_rational(rng, bound)
            h, k = h_of(a, b), k_of(x)
            w = a + b * x
            if w == 0:
                report.record('Omega iff a + bx != 0', not p.in_omega(h, k), {'a': str(a), 'b': str(b), 'x': str(x)})
                continue
            branch = 'a + bx > 0' if w > 0 else 'a + bx < 0'
            branches[branch] += 1
            right, left = p.actions(h, k)
            case = {'a': str(a), 'b': str(b), 'x': str(x)}
            report.record('published |>', k_param(right) == published_right(a, b, x), case)
            report.record(f'published <| ({branch})', h_params(left) == published_left(a, b, x), case)
        report.header.update({'samples': samples, 'seed': seed, 'branches': branches})
        return report

    def check_h_law(instance: ExampleInstance) -> VerificationReport:
        report = VerificationReport(title=f"H multiplication law: {instance.pair.name}")
        for g in hs:
            for h in hs:
                ok = h_params(group.op(g, h)) == h_law(h_params(g), h_params(h))
                report.record('i((a,b)(c,d)) = i(a,b) i(c,d)', ok, lambda g=g, h=h: {'g': str(g), 'h': str(h)})
        return report

    logging.info(f"Built axb-psl2 model with windows of {len(hs)} x {len(ks)}.")
    return ExampleInstance(
        name='axb-psl2', parameters={'bound': bound, 'samples': samples, 'seed': seed, 'max_cases': max_cases},
        pair=pair, claimed=claimed, plan=SamplePlan(hs, ks, max_cases=max_cases, seed=seed),
        fragment_window=(hs[:6], ks[:6]),
        extra_checks=[check_spot_values, check_random_branches, check_h_law])
