import unittest
import sys
from fractions import Fraction
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.core.errors import DomainError, ParameterError, UnknownExampleError, ValidationError
from dgl_lib.examples.gl2_scalars import rational_sqrt
from dgl_lib.examples.group_case import fault_injection_instance
from dgl_lib.examples.registry import build_example, example_names, parse_params, resolve
from dgl_lib.examples.sanov import ball_size, integral_sl3, word_ball
from dgl_lib.examples.verify import select_suites, verify_example


class TestRegistry(unittest.TestCase):

    def test_names_and_aliases(self):
        names = example_names()
        for name in ('semidirect', 'unital-ring', 'sanov', 'semidirect-z2-z3', 'axb'):
            self.assertIn(name, names)
        self.assertEqual(resolve('axb'), ('axb-psl2', {}))
        with self.assertRaises(UnknownExampleError):
            resolve('nosuch')

    def test_parameters(self):
        self.assertEqual(parse_params(['n=7', ' d = 1 ']), {'n': '7', 'd': '1'})
        with self.assertRaises(ParameterError):
            parse_params(['n7'])
        with self.assertRaises(ParameterError):
            build_example('unital-ring', {'n': 'seven'})
        with self.assertRaises(ParameterError):
            build_example('unital-ring', {'q': 3})

    def test_alias_defaults_can_be_overridden(self):
        self.assertEqual(build_example('semidirect-z2-z5').pair.name, "semidirect(m=2,n=5,a=4)")
        self.assertEqual(build_example('semidirect-z2-z5', {'a': 1}).pair.name, "semidirect(m=2,n=5,a=1)")
        with self.assertRaises(ValidationError):
            build_example('semidirect', {'n': 4, 'a': 2})

    def test_run_seed_reaches_sampled_examples(self):
        seeded = build_example('gl2-scalars', {'samples': 2}, seed=5)
        self.assertEqual(seeded.parameters['seed'], 5)
        self.assertEqual(build_example('gl2-scalars', {'samples': 2, 'seed': 1}, seed=5).parameters['seed'], 1)
        self.assertEqual(build_example('axb', {'samples': 10}, seed=7).parameters['seed'], 7)
        self.assertNotIn('seed', build_example('semidirect', {}, seed=5).parameters)

    def test_suite_selection(self):
        self.assertEqual(select_suites(['algebra', 'identities']), ('identities', 'algebra'))
        self.assertEqual(len(select_suites(['all'])), 4)
        with self.assertRaises(ParameterError):
            select_suites(['speed'])


class TestFiniteExamples(unittest.TestCase):
    """Every suite passes on the finite models."""

    def test_unital_ring(self):
        report = verify_example(build_example('unital-ring', {'n': '5'}))
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.discrepancies, 0)
        self.assertEqual(report.checks['|Omega| = invertibility count'].failed, 0)
        self.assertEqual(report.header['suites'], ['identities', 'examples', 'axioms', 'algebra'])

    def test_matrix_ring(self):
        report = verify_example(build_example('unital-ring', {'n': 2, 'd': 2}), ('identities', 'examples'))
        self.assertTrue(report.passed, report.to_text())

    def test_semidirect(self):
        report = verify_example(build_example('semidirect-z2-z3'), seed=4, algebra_samples=6)
        self.assertTrue(report.passed, report.to_text())
        self.assertGreater(report.checks['associativity'].tested, 0)

    def test_group_case(self):
        report = verify_example(build_example('group-case', {'group': 's3'}), algebra_samples=6)
        self.assertTrue(report.passed, report.to_text())
        self.assertIn('convolution', report.checks)

    def test_fault_injection_fails(self):
        report = verify_example(fault_injection_instance(), ('identities', 'axioms'))
        self.assertFalse(report.passed)
        self.assertGreater(report.checks['associativity'].failed, 0)


class TestAxbModel(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.instance = build_example('axb', {'samples': 200})
        cls.pair = cls.instance.pair

    def test_spot_values(self):
        h = self.pair.H.parametrize(2, 1)
        k = self.pair.K.parametrize(1)
        self.assertEqual(self.pair.act_right(h, k).payload[1, 0], Fraction(1, 6))
        self.assertEqual(self.pair.act_left(h, k), self.pair.H.parametrize(3, 1))
        self.assertEqual(self.pair.act_left(self.pair.H.parametrize(1, 1), self.pair.K.parametrize(-2)),
                         self.pair.H.parametrize(1, -1))
        self.assertFalse(self.pair.in_omega(self.pair.H.parametrize(1, 1), self.pair.K.parametrize(-1)))

    def test_published_formulas_hold(self):
        report = verify_example(self.instance, ('identities', 'examples'))
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.discrepancies, 0)
        self.assertGreater(report.checks['published |>'].tested, 0)

    def test_algebra_is_skipped_for_continuous_h(self):
        report = verify_example(self.instance, ('algebra',))
        self.assertTrue(report.passed)
        self.assertEqual(report.checks['algebra on closed étale fragment'].skipped, 1)
        self.assertEqual(report.findings[0]['kind'], 'coverage')


class TestSl2HeisenbergModel(unittest.TestCase):

    def test_published_first_component_disagrees(self):
        instance = build_example('sl2-heisenberg', {'samples': 6})
        report = verify_example(instance, ('identities', 'examples'))
        self.assertTrue(report.passed, report.to_text())
        self.assertGreater(report.discrepancies, 0)
        self.assertEqual(report.checks['A |> (x, y) = (ax + b(y - x^2/2), ...)'].failed, 0)
        minimal = [f for f in report.findings if 'minimal_counterexample' in f]
        self.assertEqual(len(minimal), 1)
        self.assertEqual(minimal[0]['minimal_counterexample']['published'], ['1/2', '0'])
        self.assertEqual(minimal[0]['minimal_counterexample']['oracle'], ['1', '0'])


class TestSanovModel(unittest.TestCase):

    def test_ball_sizes(self):
        self.assertEqual(ball_size(3), 53)
        self.assertEqual(ball_size(4), 161)
        self.assertEqual(len(word_ball(integral_sl3(), 2)), ball_size(2))

    def test_domains(self):
        report = verify_example(build_example('sanov', {'L': 2, 'M': 3}), ('identities', 'examples'))
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.discrepancies, 0)
        self.assertEqual(report.checks['D_{A_n} dichotomy'].tested, ball_size(2))
        self.assertIn('sharpening', [f['kind'] for f in report.findings])

    def test_window_must_be_positive(self):
        with self.assertRaises(DomainError):
            build_example('sanov', {'L': 0})


class TestInfiniteModels(unittest.TestCase):

    def test_gl2_scalars(self):
        self.assertEqual(rational_sqrt(Fraction(9, 4)), Fraction(3, 2))
        self.assertIsNone(rational_sqrt(Fraction(2)))
        self.assertIsNone(rational_sqrt(Fraction(-4)))
        report = verify_example(build_example('gl2-scalars', {'samples': 2}), ('identities', 'examples'))
        self.assertTrue(report.passed, report.to_text())

    def test_free_transformation(self):
        instance = build_example('free-transformation', {'L': 1, 'M': 1})
        report = verify_example(instance, ('identities', 'examples', 'axioms'))
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.checks['D_h = K'].failed, 0)


if __name__ == '__main__':
    unittest.main()
