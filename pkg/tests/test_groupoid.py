import unittest
import sys
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.core.errors import DomainError, OutOfDomainError, ValidationError
from dgl_lib.examples.semidirect import build_semidirect
from dgl_lib.examples.unital_ring import build_unital_ring
from dgl_lib.groupoid.export import fragment_from_json, fragment_to_dot, fragment_to_json
from dgl_lib.groupoid.fragment import (ClosureStatus, enumerate_fragment, isotropy, verify_gamma,
                                       verify_groupoid_axioms, verify_isotropy_at_identity)
from dgl_lib.groupoid.invariance import (is_invariant, is_minimal, is_principal, is_topologically_principal,
                                         unit_orbits, verify_invariance_properties)
from dgl_lib.groupoid.partial_action import partial_domain, partial_map, verify_partial_action
from dgl_lib.groupoid.structure import DoubleGroupoid, GroupoidElement, StructureTag


class TestTransformationGroupoid(unittest.TestCase):
    """
    Z/2 acting on Z/3 by inversion: the G-structure is the transformation
    groupoid with orbits {0} and {1, 2}.
    """

    @classmethod
    def setUpClass(cls):
        cls.pair = build_semidirect({}).pair
        group = cls.pair.ambient
        cls.e = cls.pair.e
        cls.flip = group.embed_h(group.h_group.element(1))
        cls.one = group.embed_k(group.k_group.element(1))
        cls.two = group.embed_k(group.k_group.element(2))
        cls.g_fragment = enumerate_fragment(cls.pair, StructureTag.G)
        cls.ghat_fragment = enumerate_fragment(cls.pair, StructureTag.GHAT)

    def test_fragment_shape(self):
        self.assertTrue(self.g_fragment.is_closed)
        self.assertEqual(len(self.g_fragment), 6)
        self.assertEqual(len(self.g_fragment.units()), 3)
        self.assertEqual(len(self.ghat_fragment.units()), 2)
        self.assertEqual(self.g_fragment.fragment_id, f"{self.pair.pair_id}/G-structure")

    def test_structure_maps(self):
        groupoid = DoubleGroupoid(self.pair)
        x = groupoid.element(self.flip, self.one)
        self.assertEqual(groupoid.range(StructureTag.G, x), groupoid.unit(StructureTag.G, self.two))
        self.assertEqual(groupoid.source(StructureTag.G, x), groupoid.unit(StructureTag.G, self.one))
        self.assertEqual(groupoid.invert(StructureTag.G, x), GroupoidElement(self.flip, self.two, self.pair.pair_id))
        self.assertIsNone(groupoid.compose(StructureTag.G, x, x))
        self.assertEqual(groupoid.gamma(groupoid.gamma(x)), x)

    def test_axioms_hold_in_both_structures(self):
        for fragment in (self.g_fragment, self.ghat_fragment):
            report = verify_groupoid_axioms(fragment)
            self.assertTrue(report.passed, report.to_text())
            self.assertGreater(report.checks['associativity'].tested, 0)
            self.assertTrue(verify_isotropy_at_identity(fragment).passed)
        self.assertTrue(verify_gamma(self.g_fragment).passed)

    def test_gamma_needs_g_structure(self):
        with self.assertRaises(DomainError):
            verify_gamma(self.ghat_fragment)

    def test_isotropy(self):
        groupoid = self.g_fragment.groupoid
        at_e = isotropy(self.g_fragment, groupoid.unit(StructureTag.G, self.e))
        self.assertEqual(len(at_e), 2)
        at_one = isotropy(self.g_fragment, groupoid.unit(StructureTag.G, self.one))
        self.assertEqual(at_one, [groupoid.unit(StructureTag.G, self.one)])
        with self.assertRaises(DomainError):
            isotropy(self.g_fragment, GroupoidElement(self.flip, self.one, self.pair.pair_id))

    def test_orbits_and_invariance(self):
        orbits = sorted(unit_orbits(self.g_fragment), key=len)
        self.assertEqual([len(o) for o in orbits], [1, 2])
        self.assertEqual(orbits[0], [self.e])
        self.assertFalse(is_principal(self.g_fragment))
        self.assertFalse(is_topologically_principal(self.g_fragment))
        self.assertFalse(is_minimal(self.g_fragment))

        self.assertTrue(is_invariant(self.g_fragment, [self.e]))
        self.assertTrue(is_invariant(self.g_fragment, [self.one, self.two]))
        result = is_invariant(self.g_fragment, [self.one])
        self.assertFalse(result)
        self.assertFalse(result.criterion)
        self.assertEqual(result.report.findings[0]['kind'], 'escape')
        self.assertTrue(result.report.passed)
        with self.assertRaises(DomainError):
            is_invariant(self.g_fragment, [self.flip])

        report = verify_invariance_properties(self.g_fragment)
        self.assertTrue(report.passed, report.to_text())

    def test_ghat_structure_is_a_bundle_of_groups(self):
        # h <| k = h, so every arrow is an isotropy arrow
        self.assertEqual(len(unit_orbits(self.ghat_fragment)), 2)
        for u in self.ghat_fragment.units():
            self.assertEqual(len(isotropy(self.ghat_fragment, u)), 3)

    def test_window_fragment(self):
        fragment = enumerate_fragment(self.pair, StructureTag.G, k_window=[self.e, self.one])
        self.assertEqual(fragment.closure_status, ClosureStatus.WINDOW)
        self.assertEqual(len(fragment), 4)
        report = verify_groupoid_axioms(fragment)
        self.assertEqual(report.failures, 0)
        self.assertGreater(report.skipped, 0)


class TestRingGroupoid(unittest.TestCase):
    """Both structures of the Z/5 ring model and its partial action."""

    @classmethod
    def setUpClass(cls):
        cls.pair = build_unital_ring({'n': 5}).pair

    def _h(self, a):
        return self.pair.H.parametrize((a,))

    def _k(self, b):
        return self.pair.K.parametrize((b,))

    def test_axioms_and_invariance(self):
        for tag in (StructureTag.G, StructureTag.GHAT):
            fragment = enumerate_fragment(self.pair, tag)
            self.assertTrue(fragment.is_closed)
            self.assertEqual(len(fragment), 13)
            self.assertTrue(verify_groupoid_axioms(fragment).passed)
            self.assertTrue(verify_invariance_properties(fragment).passed)

    def test_empty_window(self):
        with self.assertRaises(DomainError):
            enumerate_fragment(self.pair, StructureTag.G, [self._h(4)], [self._k(2)])

    def test_partial_action(self):
        domain = partial_domain(self.pair, self._h(4))
        self.assertNotIn(self._k(2), domain)
        self.assertEqual(len(domain), 3)
        with self.assertRaises(OutOfDomainError):
            partial_map(self.pair, self._h(4), self._k(2))
        self.assertEqual(partial_map(self.pair, self._h(1), self._k(3)), self._k(3))
        report = verify_partial_action(self.pair, self.pair.H.enumerate(), self.pair.K.enumerate())
        self.assertTrue(report.passed, report.to_text())
        self.assertGreater(report.checks['D_h = h^-1 KH n K'].tested, 0)


class TestFragmentExport(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.pair = build_semidirect({}).pair
        cls.fragment = enumerate_fragment(cls.pair, StructureTag.G)

    def test_json_round_trip(self):
        data = fragment_to_json(self.fragment, {'seed': 0})
        self.assertEqual(data['header'], {'seed': 0})
        self.assertEqual(len(data['arrows']), 6)
        restored = fragment_from_json(data, self.pair)
        self.assertEqual(restored.elements, self.fragment.elements)
        self.assertEqual(fragment_to_json(restored, {'seed': 0}), data)

    def test_foreign_or_tampered_data(self):
        data = fragment_to_json(self.fragment)
        other = build_semidirect({'n': 5}).pair
        with self.assertRaises(ValidationError):
            fragment_from_json(data, other)
        data['composable'] = data['composable'][1:]
        with self.assertRaises(ValidationError):
            fragment_from_json(data, self.pair)

    def test_dot(self):
        dot = fragment_to_dot(self.fragment)
        self.assertTrue(dot.startswith('digraph'))
        self.assertEqual(dot.count('->'), len(self.fragment))


if __name__ == '__main__':
    unittest.main()
