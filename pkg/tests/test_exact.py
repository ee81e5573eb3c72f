import unittest
import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import assume, given, settings
from hypothesis import strategies as st

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.core.errors import OwnershipError, ShapeError, SingularMatrixError, ValidationError
from dgl_lib.exact.finite_groups import cyclic_group, dihedral_group, named_group, symmetric_group
from dgl_lib.exact.groups import (FiniteTableGroup, ModularMatrixGroup, ProjectiveMatrixGroup, RationalMatrixGroup,
                                  SemidirectGroup, check_action, check_group_axioms)
from dgl_lib.exact.matrix import ExactMatrix, mat_inverse, mat_product
from dgl_lib.exact.rational import as_rational, format_rational

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def invertible_2x2(draw):
    entries = [draw(small_rationals) for _ in range(4)]
    assume(entries[0] * entries[3] - entries[1] * entries[2] != 0)
    return ExactMatrix(2, 2, tuple(entries))


class TestRationals(unittest.TestCase):
    """Coercion rules of the exact layer."""

    def test_strings_and_ints_are_canonical(self):
        self.assertEqual(as_rational("-2/4"), Fraction(-1, 2))
        self.assertEqual(as_rational(3), Fraction(3))
        self.assertEqual(format_rational(Fraction(6, 3)), "2")
        self.assertEqual(format_rational(Fraction(-1, 2)), "-1/2")

    def test_floats_and_decimals_are_rejected(self):
        with self.assertRaises(TypeError):
            as_rational(0.5)
        with self.assertRaises(ValueError):
            as_rational("0.5")
        with self.assertRaises(TypeError):
            as_rational(True)


class TestExactMatrix(unittest.TestCase):
    """Unit tests for ExactMatrix and its DomainMatrix-backed arithmetic."""

    def test_product_and_inverse(self):
        a = ExactMatrix.from_rows([[2, 1], [1, 1]])
        a_inv = mat_inverse(a)
        self.assertEqual(a_inv, ExactMatrix.from_rows([[1, -1], [-1, 2]]))
        self.assertEqual(mat_product(a, a_inv), ExactMatrix.identity(2))

    def test_singular_and_shape_errors(self):
        with self.assertRaises(SingularMatrixError):
            mat_inverse(ExactMatrix.from_rows([[1, 2], [2, 4]]))
        with self.assertRaises(ShapeError):
            mat_product(ExactMatrix.identity(2), ExactMatrix.identity(3))
        with self.assertRaises(ShapeError):
            ExactMatrix.from_rows([[1, 2], [3]])

    def test_json_round_trip_keeps_fractions(self):
        m = ExactMatrix.from_rows([["1/2", 0], [3, 2]])
        self.assertEqual(m.to_json(), [["1/2", "0"], ["3", "2"]])
        self.assertEqual(ExactMatrix.from_json(m.to_json()), m)

    def test_with_entry_and_determinant(self):
        m = ExactMatrix.identity(3).with_entry(0, 2, 5)
        self.assertEqual(m[0, 2], 5)
        self.assertEqual(m.determinant(), 1)
        self.assertEqual(m.scaled(2).determinant(), 8)

    @settings(max_examples=50, deadline=None)
    @given(invertible_2x2(), invertible_2x2())
    def test_inverse_of_product_reverses_order(self, a, b):
        lhs = mat_inverse(mat_product(a, b))
        rhs = mat_product(mat_inverse(b), mat_inverse(a))
        self.assertEqual(lhs, rhs)


class TestAmbientGroups(unittest.TestCase):
    """Group constructions and the axiom checker."""

    def test_named_groups_pass_axioms(self):
        for name, order in (('z2', 2), ('z5', 5), ('s3', 6), ('d4', 8)):
            group = named_group(name)
            self.assertEqual(len(group.enumerate()), order)
            self.assertTrue(check_group_axioms(group).passed, name)

    def test_unknown_group_name(self):
        with self.assertRaises(KeyError):
            named_group('q8x')

    def test_symmetric_group_is_not_abelian(self):
        s3 = symmetric_group(3)
        elements = s3.enumerate()
        self.assertTrue(any(s3.op(a, b) != s3.op(b, a) for a in elements for b in elements))
        z4 = cyclic_group(4)
        self.assertTrue(all(z4.op(a, b) == z4.op(b, a) for a in z4.enumerate() for b in z4.enumerate()))
        self.assertEqual(len(dihedral_group(3).enumerate()), 6)

    def test_corrupted_table_fails_associativity(self):
        bad = FiniteTableGroup("bad", [[0, 1, 2], [1, 0, 2], [2, 1, 0]])
        report = check_group_axioms(bad)
        self.assertFalse(report.passed)
        self.assertGreater(report.checks['associativity'].failed, 0)
        self.assertIsNotNone(report.checks['associativity'].first_counterexample)

    def test_table_without_identity_is_rejected(self):
        with self.assertRaises(ValidationError):
            FiniteTableGroup("no-identity", [[1, 0], [0, 0]])

    def test_ownership_is_enforced(self):
        z2, z3 = cyclic_group(2), cyclic_group(3)
        with self.assertRaises(OwnershipError):
            z2.op(z2.identity(), z3.identity())

    def test_special_linear_membership(self):
        sl2 = RationalMatrixGroup("SL2(Q)", 2)
        with self.assertRaises(ValidationError):
            sl2.element([[2, 0], [0, 1]])
        g = sl2.element([[2, 0], [0, "1/2"]])
        self.assertEqual(sl2.op(g, sl2.inv(g)), sl2.identity())

    def test_projective_sign_normalization(self):
        psl2 = ProjectiveMatrixGroup("PSL2(Q)")
        a = psl2.element([[-1, 0], [0, -1]])
        self.assertEqual(a, psl2.identity())
        b = psl2.element([[0, -1], [1, 0]])
        self.assertEqual(b.payload, ExactMatrix.from_rows([[0, 1], [-1, 0]]))
        self.assertEqual(psl2.op(b, b), psl2.identity())

    def test_unit_group_of_z7(self):
        units = ModularMatrixGroup("(Z/7)*", 7)
        self.assertEqual(len(units.enumerate()), 6)
        three = units.element(3)
        self.assertEqual(units.inv(three).payload, (5,))
        with self.assertRaises(ValidationError):
            units.element(0)

    def test_gl2_mod_2_has_order_six(self):
        gl2 = ModularMatrixGroup("GL2(Z/2)", 2, dim=2)
        self.assertEqual(len(gl2.enumerate()), 6)
        self.assertTrue(check_group_axioms(gl2).passed)

    def test_products_modulo_a_large_prime_are_exact(self):
        n = 2 ** 61 - 1
        units = ModularMatrixGroup("(Z/p)*", n)
        a, b = units.element(n - 2), units.element(n - 3)
        self.assertEqual(units.op(a, b).payload, (6,))
        self.assertEqual(units.op(a, units.inv(a)), units.identity())

        gl2 = ModularMatrixGroup("GL2(Z/p)", n, dim=2)
        m = gl2.element((n - 1, n - 2, 0, 1))
        self.assertEqual(gl2.op(m, m).payload, (1, 0, 0, 1))
        self.assertEqual(gl2.scalar_product(m.payload, m.payload), (1, 0, 0, 1))

    def test_semidirect_product_by_inversion(self):
        z2, z3 = cyclic_group(2), cyclic_group(3)
        flip = z2.enumerate()[1]

        def action(h, k):
            return z3.inv(k) if h == flip else k

        self.assertTrue(check_action(z2, z3, action, z2.enumerate(), z3.enumerate()).passed)
        g = SemidirectGroup("Z2 x| Z3", z2, z3, action)
        self.assertEqual(len(g.enumerate()), 6)
        self.assertTrue(check_group_axioms(g).passed)
        h, k = g.embed_h(flip), g.embed_k(z3.enumerate()[1])
        self.assertNotEqual(g.op(h, k), g.op(k, h))


if __name__ == '__main__':
    unittest.main()
