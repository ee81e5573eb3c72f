# -*- coding: utf-8 -*-

"""
The two groupoid structures on Omega(H, K), their finite fragments,
invariance, isotropy and the partial action of H on K.
"""

from .structure import DoubleGroupoid, GroupoidElement, StructureTag
from .fragment import (ClosureStatus, FiniteGroupoidFragment, enumerate_fragment, isotropy,
                       verify_gamma, verify_groupoid_axioms, verify_isotropy_at_identity)
from .invariance import (InvarianceResult, is_invariant, is_minimal, is_principal,
                         is_topologically_principal, unit_orbits, verify_invariance_properties)
from .partial_action import closed_domain, partial_domain, partial_map, verify_partial_action
from .export import fragment_from_json, fragment_to_dot, fragment_to_json
