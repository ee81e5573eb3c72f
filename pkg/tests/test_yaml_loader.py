import unittest
import sys
import tempfile
from pathlib import Path

import yaml

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.core.errors import ParameterError, UnknownExampleError, UsageError
from dgl_lib.core_engine.message_bus import DONE_TOPIC, MessageBus
from dgl_lib.core_engine.verification_harness import VerificationHarness
from dgl_lib.io.yaml_loader import SuiteLoader, load_defaults
from dgl_lib.io.yaml_writer import save_report_to_yaml


def _write_suite(directory: Path, examples, config=None):
    with open(directory / 'config.yml', 'w', encoding='utf-8') as f:
        yaml.safe_dump(config or {'suite': {'seed': 1, 'samples': 4}}, f)
    with open(directory / 'examples.yml', 'w', encoding='utf-8') as f:
        yaml.safe_dump(examples, f)


class TestSuiteLoader(unittest.TestCase):
    """
    Tests the functionality of the SuiteLoader to ensure it can correctly
    parse suite YAML files and build a verification harness.
    """

    def test_load_acceptance_suite(self):
        """
        Loads the acceptance suite without running it.
        """
        suite_path = project_root / "mission" / "suites" / "acceptance"
        self.assertTrue(suite_path.is_dir(), f"Suite directory not found at {suite_path}")

        loader = SuiteLoader(suite_path=str(suite_path))
        entries = loader.entries()
        self.assertEqual(len(entries), 12)
        ring_seven = [e for e in entries if e['params'] == {'n': 7}][0]
        self.assertEqual(ring_seven['checks'], ['identities', 'examples', 'axioms'])

        harness = loader.load()
        self.assertIsInstance(harness, VerificationHarness)
        self.assertEqual(len(harness.jobs), 12)
        jobs = {job.name: job for job in harness.jobs}
        names = list(jobs)
        self.assertIn("unital-ring[n=5]", names)
        self.assertIn("group-case[group=s3]", names)
        self.assertEqual((harness.seed, harness.samples), (0, 16))
        self.assertEqual(jobs["unital-ring[n=5]"].samples, 1000)
        self.assertEqual(jobs["unital-ring[n=7]"].samples, 16)
        self.assertIn("sanov[L=4,M=5,max_cases=24]", names)

    def test_run_small_suite(self):
        with tempfile.TemporaryDirectory() as tmp:
            suite = Path(tmp)
            _write_suite(suite, [
                {'example': 'unital-ring', 'params': {'n': 5}, 'checks': ['identities', 'examples']},
                {'example': 'semidirect-z2-z3', 'checks': ['identities']},
            ])
            bus = MessageBus()
            done = []
            bus.subscribe(DONE_TOPIC, done.append)
            harness = SuiteLoader(str(suite)).load(bus)
            report = harness.run()

            self.assertTrue(report.passed, report.to_text())
            self.assertEqual([m['job'] for m in done], ["unital-ring[n=5]", "semidirect-z2-z3"])
            self.assertEqual(report.header['seed'], 1)

            output = save_report_to_yaml(report, suite / "out" / "report.yml", harness.history)
            with open(output, 'r', encoding='utf-8') as f:
                saved = yaml.safe_load(f)
            self.assertTrue(saved['report']['passed'])
            self.assertEqual(len(saved['history']), 2)
            self.assertEqual(saved['history'][0]['failed'], 0)

    def test_malformed_suites(self):
        with tempfile.TemporaryDirectory() as tmp:
            suite = Path(tmp)
            _write_suite(suite, {'example': 'unital-ring'})
            with self.assertRaises(UsageError):
                SuiteLoader(str(suite)).entries()
            _write_suite(suite, [{'params': {'n': 5}}])
            with self.assertRaises(UsageError):
                SuiteLoader(str(suite)).entries()
            _write_suite(suite, [{'example': 'nosuch'}])
            with self.assertRaises(UnknownExampleError):
                SuiteLoader(str(suite)).entries()
            _write_suite(suite, [{'example': 'unital-ring', 'checks': ['speed']}])
            with self.assertRaises(ParameterError):
                SuiteLoader(str(suite)).entries()
            _write_suite(suite, [{'example': 'unital-ring', 'samples': 0}])
            with self.assertRaises(UsageError):
                SuiteLoader(str(suite)).entries()
            with self.assertRaises(UsageError):
                SuiteLoader(str(suite / "missing")).load()


class TestDefaults(unittest.TestCase):

    def test_packaged_defaults(self):
        defaults = load_defaults()
        self.assertEqual(defaults['seed'], 0)
        self.assertEqual(defaults['samples'], 16)
        self.assertEqual(defaults['export_cap'], 5000)

    def test_missing_defaults(self):
        with self.assertRaises(UsageError):
            load_defaults(str(project_root / "no-such-defaults.yml"))


if __name__ == '__main__':
    unittest.main()
