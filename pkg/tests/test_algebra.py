import unittest
import sys
from fractions import Fraction
from pathlib import Path

from numpy.testing import assert_allclose

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.algebra.convolution import ConvolutionElement, i_norm, require_etale
from dgl_lib.algebra.group_algebra import compare_with_group_algebra
from dgl_lib.algebra.ideals import finitely_supported, ideal_membership, p_summable, verify_ideal_laws
from dgl_lib.algebra.laws import random_elements, verify_algebra_laws
from dgl_lib.algebra.measures import (counting_measure, measure_from_labels, modular_function, normalized_measure, nu,
                                      nu_inverse, verify_measure)
from dgl_lib.algebra.representation import (NormResult, integrated_norm, lift_representation, reduced_norm,
                                            regular_rep, trivial_rep)
from dgl_lib.algebra.restriction import exactness_check, isotropy_fragment
from dgl_lib.algebra.scalars import scalar
from dgl_lib.core.errors import (CapabilityError, CoverageError, InvarianceError, ParameterError, SupportError)
from dgl_lib.examples.group_case import group_case_pair
from dgl_lib.examples.semidirect import build_semidirect
from dgl_lib.examples.unital_ring import build_unital_ring
from dgl_lib.exact.finite_groups import named_group
from dgl_lib.groupoid.fragment import enumerate_fragment
from dgl_lib.groupoid.structure import StructureTag
from dgl_lib.pair.admissible_pair import AdmissiblePair


def _pairs(elements):
    return list(zip(elements, elements[1:] + elements[:1]))


class TestGroupCase(unittest.TestCase):
    """With K trivial the algebra is the group algebra of H."""

    def setUp(self):
        self.pair = group_case_pair(named_group('z2'))
        self.fragment = enumerate_fragment(self.pair, StructureTag.G)
        e, h = self.pair.H.enumerate()
        self.e_arrow = self.fragment.groupoid.element(e, self.pair.e)
        self.h_arrow = self.fragment.groupoid.element(h, self.pair.e)

    def test_sum_of_deltas(self):
        f = ConvolutionElement(self.fragment, {self.e_arrow: 1, self.h_arrow: 1})
        self.assertEqual(i_norm(f), Fraction(2))
        self.assertAlmostEqual(reduced_norm(f).value, 2.0)
        self.assertEqual(f * f, f.scale(2))
        self.assertEqual(ConvolutionElement.unit_element(self.fragment), ConvolutionElement.delta(self.fragment, self.e_arrow))

    def test_gaussian_values(self):
        f = ConvolutionElement.delta(self.fragment, self.h_arrow, (3, 4))
        self.assertIsInstance(i_norm(f), float)
        self.assertAlmostEqual(i_norm(f), 5.0)
        self.assertEqual(f.involution()[self.h_arrow], scalar(3, -4))
        self.assertAlmostEqual(reduced_norm(f).value, 5.0)

    def test_zero_values_are_dropped(self):
        f = ConvolutionElement(self.fragment, {self.e_arrow: 0})
        self.assertEqual(f, ConvolutionElement.zero(self.fragment))
        self.assertEqual(i_norm(f), 0)

    def test_matches_group_algebra(self):
        fragment = enumerate_fragment(group_case_pair(named_group('s3')), StructureTag.G)
        samples = _pairs(list(random_elements(fragment, 6, seed=11)))
        report = compare_with_group_algebra(fragment, samples)
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.checks['convolution'].tested, 6)

    def test_requires_etale_pair(self):
        pair = self.pair
        continuous = AdmissiblePair("continuous", pair.ambient, pair.H, pair.K, pair.factorizer, etale=False)
        fragment = enumerate_fragment(continuous, StructureTag.G)
        with self.assertRaises(CapabilityError):
            require_etale(fragment)
        with self.assertRaises(CapabilityError):
            reduced_norm(ConvolutionElement.unit_element(fragment))


class TestConvolutionLaws(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.fragment = enumerate_fragment(build_unital_ring({'n': 5}).pair, StructureTag.G)
        cls.elements = list(random_elements(cls.fragment, 5, seed=3))

    def test_unit_element_is_identity(self):
        one = ConvolutionElement.unit_element(self.fragment)
        for f in self.elements:
            self.assertEqual(one * f, f)
            self.assertEqual(f * one, f)

    def test_laws(self):
        reps = [regular_rep(self.fragment)]
        report = verify_algebra_laws(self.fragment, self.elements, representations=reps)
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.checks['associativity'].tested, 5)

    def test_regular_representation(self):
        lam = regular_rep(self.fragment)
        self.assertEqual(lam.total_dim, len(self.fragment))
        self.assertTrue(lam.verify().passed)
        mu = counting_measure(self.fragment)
        f = self.elements[0]
        assert_allclose(integrated_norm(lam, mu, f).value, reduced_norm(f).value, rtol=1e-9)

    def test_norm_result_dict(self):
        self.assertEqual(NormResult(1.23456, 1e-12).to_dict(precision=2), {'value': 1.23, 'certified-radius': 1e-12})


class TestWindowsAndMeasures(unittest.TestCase):
    """Z/2 acting on Z/3: orbits {0} and {1, 2}."""

    @classmethod
    def setUpClass(cls):
        cls.pair = build_semidirect({}).pair
        group = cls.pair.ambient
        cls.e = cls.pair.e
        cls.flip = group.embed_h(group.h_group.element(1))
        cls.one = group.embed_k(group.k_group.element(1))
        cls.two = group.embed_k(group.k_group.element(2))
        cls.fragment = enumerate_fragment(cls.pair, StructureTag.G)

    def test_window_fragment_is_rejected(self):
        window = enumerate_fragment(self.pair, StructureTag.G, k_window=[self.e, self.one])
        x = window.groupoid.element(self.flip, self.one)
        f = ConvolutionElement.delta(window, x)
        with self.assertRaises(CoverageError):
            f.involution()
        with self.assertRaises(CoverageError):
            reduced_norm(f)

    def test_modular_function(self):
        mu = measure_from_labels(self.fragment, {self.e: 1, self.one: 2, self.two: 3})
        delta = modular_function(mu)
        x = self.fragment.groupoid.element(self.flip, self.one)
        self.assertEqual(delta[x], Fraction(3, 2))
        f = ConvolutionElement.delta(self.fragment, x)
        self.assertEqual(nu(mu, f), scalar(3))
        self.assertEqual(nu_inverse(mu, f), scalar(2))
        self.assertTrue(verify_measure(mu).passed)

    def test_normalization_and_support(self):
        base = measure_from_labels(self.fragment, {self.e: 2, self.one: 4, self.two: 6})
        mu = normalized_measure(self.fragment, base)
        self.assertEqual(mu.weight(self.fragment.groupoid.unit(StructureTag.G, self.two)), 3)
        holes = measure_from_labels(self.fragment, {self.e: 1, self.one: 1})
        with self.assertRaises(SupportError):
            modular_function(holes)
        report = verify_measure(holes)
        self.assertFalse(report.passed)
        self.assertEqual(report.checks['quasi-invariant'].failed, 1)

    def test_restriction_to_isotropy(self):
        target = isotropy_fragment(self.fragment)
        self.assertEqual(len(target), 2)
        samples = _pairs(list(random_elements(self.fragment, 4, seed=5)))
        report = exactness_check(self.fragment, samples)
        self.assertTrue(report.passed, report.to_text())

    def test_ideal_membership(self):
        mu = counting_measure(self.fragment)
        spec = p_summable(2)
        elements = list(random_elements(self.fragment, 4, seed=9))
        membership = ideal_membership(elements[0], spec, mu)
        self.assertTrue(membership)
        self.assertEqual(membership.certificate['spec'], 'p-summable')
        multipliers = [{x: (1, 1) for x in self.fragment.elements}]
        self.assertTrue(verify_ideal_laws(spec, mu, elements, multipliers).passed)
        with self.assertRaises(ParameterError):
            p_summable(0)

    def test_finitely_supported_ideal_uses_its_window(self):
        mu = counting_measure(self.fragment)
        groupoid = self.fragment.groupoid
        at_e = groupoid.element(self.e, self.e)
        flip_at_e = groupoid.element(self.flip, self.e)
        off_h = groupoid.element(self.flip, self.one)
        elements = list(random_elements(self.fragment, 4, seed=9))
        multipliers = [{x: 3 for x in self.fragment.elements}]

        whole = finitely_supported(isotropy_fragment(self.fragment).elements)
        self.assertTrue(ideal_membership(ConvolutionElement.delta(self.fragment, flip_at_e), whole, mu))
        self.assertTrue(verify_ideal_laws(whole, mu, elements, multipliers).passed)

        narrow = finitely_supported([at_e])
        self.assertFalse(ideal_membership(ConvolutionElement.delta(self.fragment, flip_at_e), narrow, mu))
        self.assertTrue(ideal_membership(ConvolutionElement.delta(self.fragment, off_h), narrow, mu))
        report = verify_ideal_laws(narrow, mu, elements, multipliers)
        self.assertFalse(report.passed)
        self.assertEqual(report.checks['contains finitely supported on H'].failed, 1)

    def test_lift_representation(self):
        groupoid = self.fragment.groupoid
        inside = {groupoid.unit(StructureTag.G, self.e)}
        outside = set(self.fragment.units()) - inside
        sigma = lift_representation(trivial_rep(self.fragment, inside), trivial_rep(self.fragment, outside), inside)
        self.assertEqual(sigma.total_dim, 3)
        self.assertTrue(sigma.verify().passed)

        not_invariant = {groupoid.unit(StructureTag.G, self.one)}
        rest = set(self.fragment.units()) - not_invariant
        with self.assertRaises(InvarianceError):
            lift_representation(trivial_rep(self.fragment, not_invariant), trivial_rep(self.fragment, rest),
                                not_invariant)


if __name__ == '__main__':
    unittest.main()
