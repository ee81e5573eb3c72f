# -*- coding: utf-8 -*-

"""
The convolution *-algebra of an étale fragment: norms, representations,
measures, the restriction to H and the ideal predicates.
"""

from .scalars import as_scalar, conj, scalar
from .convolution import ConvolutionElement, convolve, i_norm, involution
from .measures import (UnitMeasure, counting_measure, is_quasi_invariant, measure_from_labels,
                       modular_function, normalized_measure, nu, nu_inverse, verify_measure)
from .representation import (FiniteRepresentation, NormResult, integrated_form, integrated_norm,
                             lift_representation, reduced_norm, regular_rep, trivial_rep)
from .restriction import exactness_check, isotropy_fragment, restrict_to_H
from .ideals import IdealSpec, all_functions, finitely_supported, ideal_membership, p_summable, verify_ideal_laws
from .group_algebra import GroupAlgebra, compare_with_group_algebra
from .laws import random_elements, verify_algebra_laws
