"""
Semidirect products H x|_phi K.

With H = {(h, e)} and K = {(e, k)} one has (h, e)(e, k) = (e, phi_h(k))(h, e),
so KH = HK = G, h |> k = phi_h(k) and h <| k = h. The G-structure is the
transformation groupoid of phi, the Ghat-structure the product H x K.
"""
import logging
from math import gcd
from typing import Any, Dict, Optional

from dgl_lib.core.errors import ValidationError
from dgl_lib.core.interfaces import AmbientGroup, Factorization, GroupElement
from dgl_lib.examples.base import ClaimedActions, ExampleInstance, int_param, reject_unknown
from dgl_lib.exact.finite_groups import cyclic_group
from dgl_lib.exact.groups import SemidirectGroup, check_action
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import ClosedFormOracle
from dgl_lib.pair.identities import SamplePlan
from dgl_lib.pair.subgroup import SubgroupSpec


def semidirect_pair(name: str, group: SemidirectGroup, h_elements=None, k_elements=None,
                    h_window: bool = False, k_window: bool = False) -> AdmissiblePair:
    """The pair (H x {e}, {e} x K) in a semidirect product, with its closed-form factorization."""
    e_h, e_k = group.h_group.identity(), group.k_group.identity()
    if h_elements is None:
        h_elements = group.h_group.enumerate()
    if k_elements is None:
        k_elements = group.k_group.enumerate()
    h_spec = SubgroupSpec(
        'H', contains=lambda g: g.group_id == group.group_id and g.payload[1] == e_k,
        parametrize=group.embed_h, parameters_of=lambda g: g.payload[0],
        elements=None if h_elements is None else tuple(group.embed_h(h) for h in h_elements), is_window=h_window)
    k_spec = SubgroupSpec(
        'K', contains=lambda g: g.group_id == group.group_id and g.payload[0] == e_h,
        parametrize=group.embed_k, parameters_of=lambda g: g.payload[1],
        elements=None if k_elements is None else tuple(group.embed_k(k) for k in k_elements), is_window=k_window)

    def factor(g: GroupElement) -> Optional[Factorization]:
        h, k = g.payload
        return group.embed_k(k), group.embed_h(h)

    oracle = ClosedFormOracle(factor, "(h, k) = (e, k)(h, e)")
    return AdmissiblePair(name, group, h_spec, k_spec, oracle)


def semidirect_claims(group: SemidirectGroup) -> ClaimedActions:
    return ClaimedActions(
        right=lambda h, k: group.embed_k(group.action(h.payload[0], k.payload[1])),
        left=lambda h, k: h,
        omega=lambda h, k: True,
    )


def cyclic_multiplier_action(h_group: AmbientGroup, k_group: AmbientGroup, n: int, multiplier: int):
    """Z/m acting on Z/n by h . k = multiplier^h k."""
    def action(h: GroupElement, k: GroupElement) -> GroupElement:
        return k_group.element((pow(multiplier, h.payload, n) * k.payload) % n)
    return action


def build_semidirect(params: Dict[str, Any]) -> ExampleInstance:
    """
    Z/m x| Z/n with Z/m acting by multiplication with a unit a of Z/n whose
    order divides m. The default a = n - 1 is inversion.

    Parameters: m (default 2), n (default 3), a (default n - 1).

    Raises:
        ValidationError: if the action is not a homomorphism Z/m -> Aut(Z/n).
    """
    params = dict(params)
    m = int_param(params, 'm', 2, minimum=1)
    n = int_param(params, 'n', 3, minimum=2)
    a = int_param(params, 'a', n - 1) % n
    reject_unknown('semidirect', params)
    if gcd(a, n) != 1:
        raise ValidationError(f"Multiplier {a} is not a unit modulo {n}.")
    h_group, k_group = cyclic_group(m), cyclic_group(n)
    action = cyclic_multiplier_action(h_group, k_group, n, a)
    check = check_action(h_group, k_group, action, h_group.enumerate(), k_group.enumerate())
    if not check.passed:
        raise ValidationError(f"Multiplication by {a} does not define an action of Z/{m} on Z/{n}: "
                              f"{check.failures} failed checks.")
    group = SemidirectGroup(f"Z/{m} x| Z/{n}", h_group, k_group, action)
    pair = semidirect_pair(f"semidirect(m={m},n={n},a={a})", group)
    logging.info(f"Built semidirect product {group.group_id} with multiplier {a}.")
    return ExampleInstance(
        name='semidirect', parameters={'m': m, 'n': n, 'a': a}, pair=pair,
        claimed=semidirect_claims(group), plan=SamplePlan.exhaustive(pair),
        fragment_window=(pair.H.enumerate(), pair.K.enumerate()))
