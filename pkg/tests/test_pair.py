import unittest
import sys
from pathlib import Path

from hypothesis import given, settings
from hypothesis import strategies as st

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.core.errors import (AdmissibilityError, CoverageError, DomainError, OracleDisagreement,
                                 OutOfDomainError)
from dgl_lib.examples.semidirect import build_semidirect
from dgl_lib.examples.unital_ring import build_unital_ring
from dgl_lib.exact.finite_groups import cyclic_group
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import BruteForceOracle, ClosedFormOracle, HybridOracle, compare_oracles
from dgl_lib.pair.identities import SamplePlan, verify_factorization, verify_identities
from dgl_lib.pair.subgroup import SubgroupSpec


class TestSemidirectPair(unittest.TestCase):
    """Z/2 acting on Z/3 by inversion."""

    @classmethod
    def setUpClass(cls):
        cls.instance = build_semidirect({'m': 2, 'n': 3})
        cls.pair = cls.instance.pair
        cls.group = cls.pair.ambient
        cls.flip = cls.pair.H.parametrize(cls.group.h_group.enumerate()[1])
        cls.one = cls.pair.K.parametrize(cls.group.k_group.element(1))

    def test_omega_is_everything(self):
        self.assertEqual(len(self.pair.omega), 6)

    def test_actions(self):
        right, left = self.pair.actions(self.flip, self.one)
        self.assertEqual(right, self.pair.K.parametrize(self.group.k_group.element(2)))
        self.assertEqual(left, self.flip)

    def test_admissibility_and_identities(self):
        self.assertTrue(self.pair.check_admissibility().passed)
        report = verify_identities(self.pair, self.instance.plan)
        self.assertTrue(report.passed, report.to_text())
        for check in ('factorization', 'eq1', 'eq2', 'eq3', 'eq4', 'eq5'):
            self.assertGreater(report.checks[check].tested, 0, check)

    def test_membership_is_checked(self):
        with self.assertRaises(DomainError):
            self.pair.in_omega(self.one, self.one)


class TestUnitalRingPair(unittest.TestCase):
    """The ring model over Z/5 and Z/7."""

    @classmethod
    def setUpClass(cls):
        cls.z5 = build_unital_ring({'n': 5}).pair
        cls.z7 = build_unital_ring({'n': 7}).pair

    def _h(self, pair, a):
        return pair.H.parametrize((a,))

    def _k(self, pair, b):
        return pair.K.parametrize((b,))

    def test_right_action_over_z7(self):
        # 3 (2 - 1) + 1 = 4 is a unit of Z/7
        self.assertEqual(self.z7.act_right(self._h(self.z7, 3), self._k(self.z7, 2)), self._k(self.z7, 4))

    def test_identity_acts_trivially(self):
        for b in range(1, 7):
            k = self._k(self.z7, b)
            right, left = self.z7.actions(self._h(self.z7, 1), k)
            self.assertEqual(right, k)
            self.assertEqual(left, self.z7.e)

    def test_omega_sizes(self):
        self.assertEqual(len(self.z5.omega), 13)
        self.assertEqual(len(self.z7.omega), 31)

    def test_outside_omega(self):
        # 4 (2 - 1) + 1 = 0 in Z/5
        h, k = self._h(self.z5, 4), self._k(self.z5, 2)
        self.assertFalse(self.z5.in_omega(h, k))
        with self.assertRaises(OutOfDomainError):
            self.z5.actions(h, k)

    def test_closed_form_matches_brute_force(self):
        pair = self.z5
        brute = BruteForceOracle(pair.ambient, pair.H, pair.K)
        report = compare_oracles(pair.factorizer, brute, pair.ambient.enumerate())
        self.assertTrue(report.passed)
        self.assertEqual(report.checks['oracle agreement'].tested, len(pair.ambient.enumerate()))
        self.assertTrue(pair.check_admissibility().passed)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
    def test_factorization_identity(self, a, b):
        pair = self.z7
        h, k = self._h(pair, a), self._k(pair, b)
        if pair.in_omega(h, k):
            right, left = pair.actions(h, k)
            self.assertEqual(pair.op(right, left), pair.op(h, k))
            self.assertTrue(pair.K.contains(right) and pair.H.contains(left))


class TestOracles(unittest.TestCase):

    def setUp(self):
        self.z3 = cyclic_group(3)
        self.everything = SubgroupSpec('all', contains=self.z3.owns, elements=tuple(self.z3.enumerate()))
        self.trivial = SubgroupSpec('e', contains=lambda g: g == self.z3.identity(),
                                    elements=(self.z3.identity(),))

    def test_intersecting_subgroups_are_rejected(self):
        with self.assertRaises(AdmissibilityError):
            BruteForceOracle(self.z3, self.everything, self.everything)

    def test_window_brute_force_is_undecided_outside(self):
        window = self.everything.with_window(self.z3.enumerate()[:2])
        brute = BruteForceOracle(self.z3, window, self.trivial)
        self.assertIsNotNone(brute.factor(self.z3.element(1)))
        with self.assertRaises(CoverageError):
            brute.factor(self.z3.element(2))

    def test_hybrid_oracle_detects_wrong_closed_form(self):
        brute = BruteForceOracle(self.z3, self.everything, self.trivial)
        wrong = ClosedFormOracle(lambda g: (self.z3.identity(), self.z3.identity()))
        hybrid = HybridOracle(wrong, brute)
        self.assertEqual(hybrid.factor(self.z3.identity()), (self.z3.identity(), self.z3.identity()))
        with self.assertRaises(OracleDisagreement):
            hybrid.factor(self.z3.element(1))

    def test_group_case_pair_factorization(self):
        oracle = ClosedFormOracle(lambda g: (self.z3.identity(), g))
        pair = AdmissiblePair("group-case(Z/3)", self.z3, self.everything, self.trivial, oracle)
        report = verify_factorization(pair, SamplePlan.exhaustive(pair))
        self.assertTrue(report.passed)
        self.assertEqual(report.checks['factorization'].tested, 3)


class TestSamplePlan(unittest.TestCase):

    def test_subsample_is_seeded(self):
        items = list(range(20))
        plan = SamplePlan(items, items, max_cases=5, seed=3)
        first = plan.subsample(items, 1)
        self.assertEqual(first, plan.subsample(items, 1))
        self.assertEqual(len(first), 5)
        self.assertEqual(first, sorted(first))
        self.assertEqual(SamplePlan(items, items).subsample(items, 1), items)


if __name__ == '__main__':
    unittest.main()
