import unittest
import sys
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.core_engine.message_bus import CHECK_TOPIC, DONE_TOPIC, FINDING_TOPIC, MessageBus
from dgl_lib.core_engine.verification_harness import ExampleJob, InstanceJob, VerificationHarness
from dgl_lib.examples.group_case import fault_injection_instance


class TestVerificationHarness(unittest.TestCase):
    """
    An integration test for a harness running a passing example, an example
    with published discrepancies and a corrupted group side by side.
    """

    def setUp(self):
        self.bus = MessageBus()
        self.messages = {CHECK_TOPIC: [], FINDING_TOPIC: [], DONE_TOPIC: []}
        for topic, received in self.messages.items():
            self.bus.subscribe(topic, received.append)
        self.harness = VerificationHarness({'seed': 2, 'samples': 4}, self.bus)

    def test_mixed_jobs(self):
        self.harness.add_example('unital-ring', {'n': 5}, ('identities', 'examples'))
        self.harness.add_example('sl2-heisenberg', {'samples': 4}, ('examples',))
        self.harness.add_job(InstanceJob(fault_injection_instance(), ('axioms',)))
        report = self.harness.run(title="mixed")

        self.assertFalse(report.passed)
        self.assertEqual(report.title, "mixed")
        self.assertEqual(report.header['jobs'], ["unital-ring[n=5]", "sl2-heisenberg[samples=4]", "fault-injection"])
        self.assertEqual([row['passed'] for row in self.harness.history], [True, True, False])
        self.assertGreater(self.harness.history[1]['discrepancies'], 0)

        done = self.messages[DONE_TOPIC]
        self.assertEqual([m['job'] for m in done], report.header['jobs'])
        failing = {m['job'] for m in self.messages[CHECK_TOPIC] if m['failed']}
        self.assertEqual(failing, {"fault-injection"})
        self.assertTrue(any(m['job'] == "sl2-heisenberg[samples=4]" and m['kind'] == 'discrepancy'
                            for m in self.messages[FINDING_TOPIC]))

    def test_jobs_take_the_harness_settings(self):
        job = self.harness.add_example('semidirect', {'n': 5})
        self.assertIsInstance(job, ExampleJob)
        self.assertEqual((job.seed, job.samples), (2, 4))
        self.assertEqual(job.name, "semidirect[n=5]")
        self.assertIsNone(job._instance)
        sampled = self.harness.add_example('gl2-scalars', {'samples': 2})
        self.assertEqual(sampled.instance.parameters['seed'], 2)

    def test_duplicate_jobs_are_rejected(self):
        self.harness.add_example('unital-ring', {'n': 5})
        with self.assertRaises(ValueError):
            self.harness.add_example('unital-ring', {'n': 5})

    def test_empty_run(self):
        report = self.harness.run()
        self.assertTrue(report.passed)
        self.assertEqual(self.messages[DONE_TOPIC], [])


if __name__ == '__main__':
    unittest.main()
