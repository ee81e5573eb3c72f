"""
The degenerate pair (H, {e}).

With K trivial, Omega = H x {e}, the G-structure is the group H over a
single unit and the Ghat-structure is the space H with only identities.
Its convolution algebra is the group algebra of H.
"""
import logging
from typing import Any, Dict

from dgl_lib.core.errors import ParameterError
from dgl_lib.core.interfaces import AmbientGroup
from dgl_lib.examples.base import ClaimedActions, ExampleInstance, reject_unknown, str_param
from dgl_lib.exact.finite_groups import named_group
from dgl_lib.exact.groups import FiniteTableGroup
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import ClosedFormOracle
from dgl_lib.pair.identities import SamplePlan
from dgl_lib.pair.subgroup import SubgroupSpec


def group_case_pair(group: AmbientGroup) -> AdmissiblePair:
    """(H, {e}) for a finite group H, factoring every g as e * g."""
    e = group.identity()
    h_spec = SubgroupSpec('H', contains=group.owns, parameters_of=lambda g: g.payload,
                          elements=tuple(group.enumerate()))
    k_spec = SubgroupSpec('K', contains=lambda g: g == e, elements=(e,))
    oracle = ClosedFormOracle(lambda g: (e, g), "g = e g")
    return AdmissiblePair(f"group-case({group.group_id})", group, h_spec, k_spec, oracle)


def group_case_instance(group: AmbientGroup) -> ExampleInstance:
    pair = group_case_pair(group)
    claimed = ClaimedActions(right=lambda h, k: k, left=lambda h, k: h, omega=lambda h, k: True)
    return ExampleInstance(
        name='group-case', parameters={'group': group.group_id}, pair=pair, claimed=claimed,
        plan=SamplePlan.exhaustive(pair), fragment_window=(pair.H.enumerate(), pair.K.enumerate()))


def build_group_case(params: Dict[str, Any]) -> ExampleInstance:
    """
    Parameters: group (a named finite group: z2, z5, s3, d4, zN, sN, dN;
    default z2).
    """
    params = dict(params)
    name = str_param(params, 'group', 'z2')
    reject_unknown('group-case', params)
    try:
        group = named_group(name)
    except (KeyError, ValueError) as e:
        raise ParameterError(f"Parameter 'group': {e}") from e
    logging.info(f"Built group case over {group.group_id} of order {len(group.enumerate())}.")
    return group_case_instance(group)


# Z/3 with a broken product: every element is its own inverse and the
# identity is intact, but (1 * 2) * 1 != 1 * (2 * 1).
CORRUPTED_TABLE = ((0, 1, 2),
                   (1, 0, 2),
                   (2, 1, 0))


def corrupted_group() -> FiniteTableGroup:
    return FiniteTableGroup("Z3-corrupted", CORRUPTED_TABLE)


def fault_injection_instance() -> ExampleInstance:
    """The group case over a table that is not associative; verification must fail."""
    instance = group_case_instance(corrupted_group())
    instance.name = 'fault-injection'
    return instance
