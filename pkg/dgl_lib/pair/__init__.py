# -*- coding: utf-8 -*-

"""
Admissible pairs (H, K), KH-factorization oracles and the identities of the
mutual local actions.
"""

from .subgroup import SubgroupSpec
from .factorization import ClosedFormOracle, BruteForceOracle, HybridOracle, compare_oracles
from .admissible_pair import AdmissiblePair
from .identities import SamplePlan, verify_identities, verify_factorization
