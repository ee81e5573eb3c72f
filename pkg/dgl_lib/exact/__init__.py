# -*- coding: utf-8 -*-

"""
Exact arithmetic substrate: rationals, rational matrices and ambient groups.
"""

from .matrix import ExactMatrix, mat_product, mat_inverse
from .groups import (
    FiniteTableGroup,
    RationalMatrixGroup,
    ProjectiveMatrixGroup,
    ModularMatrixGroup,
    SemidirectGroup,
    group_op,
    group_inv,
    group_id,
    check_group_axioms,
)
