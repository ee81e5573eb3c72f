# -*- coding: utf-8 -*-

"""
The model catalog: example admissible pairs with their published actions,
the name registry and the uniform verification driver.
"""

from .base import ClaimedActions, ExampleInstance
from .semidirect import build_semidirect, semidirect_pair
from .unital_ring import build_unital_ring
from .sl2_heisenberg import build_sl2_heisenberg
from .axb import build_axb
from .gl2_scalars import build_gl2_scalars
from .sanov import build_sanov, word_ball
from .free_transformation import build_free_transformation
from .group_case import build_group_case, fault_injection_instance, group_case_instance, group_case_pair
from .registry import EXAMPLE_MAP, build_example, example_names, parse_params
from .verify import SUITES, select_suites, verify_claimed_actions, verify_example
