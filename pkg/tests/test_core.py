import unittest
import os
import sys
from pathlib import Path
from unittest import mock

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.core.errors import (EXIT_COVERAGE, EXIT_FAILURE, EXIT_USAGE, CapabilityError, CoverageError,
                                 OracleDisagreement, OutOfDomainError, ParameterError, UnknownExampleError,
                                 WorkbenchError)
from dgl_lib.core.report import CheckResult, VerificationReport, merge_reports
from dgl_lib.core_engine.message_bus import MessageBus
from dgl_lib.core_engine.workers import THREADS_ENV, batched, map_ordered, run_batches, worker_count


def _sample_report(title, check_id, outcomes, finding=None):
    report = VerificationReport(title=title, header={'source': title})
    for ok in outcomes:
        report.record(check_id, ok, {'case': title})
    if finding:
        report.add_finding('note', finding)
    return report


class TestErrors(unittest.TestCase):

    def test_exit_codes(self):
        self.assertEqual(UnknownExampleError("x").exit_code, EXIT_USAGE)
        self.assertEqual(ParameterError("x").exit_code, EXIT_USAGE)
        self.assertEqual(CoverageError("x").exit_code, EXIT_COVERAGE)
        self.assertEqual(CapabilityError("x").exit_code, EXIT_COVERAGE)
        self.assertEqual(OracleDisagreement("x").exit_code, EXIT_FAILURE)

    def test_domain_errors_are_value_errors(self):
        self.assertTrue(issubclass(OutOfDomainError, ValueError))
        self.assertTrue(issubclass(OutOfDomainError, WorkbenchError))
        self.assertTrue(issubclass(CoverageError, RuntimeError))


class TestVerificationReport(unittest.TestCase):
    """Counting, counterexamples and merging of reports."""

    def test_counts_and_first_counterexample(self):
        report = VerificationReport(title="t")
        report.record('assoc', True)
        report.record('assoc', False, {'a': 1})
        report.record('assoc', False, {'a': 2})
        report.record('assoc', None)
        result = report.checks['assoc']
        self.assertEqual((result.tested, result.failed, result.skipped), (3, 2, 1))
        self.assertEqual(result.first_counterexample, {'a': 1})
        self.assertFalse(report.passed)

    def test_counterexample_callable_is_lazy(self):
        calls = []
        report = VerificationReport(title="t")
        report.record('x', True, lambda: calls.append(1) or {})
        self.assertEqual(calls, [])
        report.record('x', False, lambda: calls.append(2) or {'hit': True})
        self.assertEqual(calls, [2])
        self.assertEqual(report.checks['x'].first_counterexample, {'hit': True})

    def test_discrepancies_do_not_fail(self):
        report = VerificationReport(title="t")
        report.record_discrepancy('published', False, {'p': 1})
        self.assertTrue(report.passed)
        self.assertEqual(report.discrepancies, 1)
        self.assertEqual(report.to_dict()['checks'][0]['discrepancies'], 1)

    def test_merge_is_associative(self):
        a = _sample_report('a', 'one', [True, False], finding='first')
        b = _sample_report('b', 'two', [True])
        c = _sample_report('c', 'one', [None, True], finding='third')
        left = a.merge(b).merge(c)
        right = a.merge(b.merge(c))
        self.assertEqual(left.to_dict(), right.to_dict())
        self.assertEqual(left.checks['one'].tested, 3)
        self.assertEqual(left.checks['one'].skipped, 1)
        self.assertEqual([f['message'] for f in left.findings], ['first', 'third'])

    def test_merge_rejects_foreign_check(self):
        with self.assertRaises(ValueError):
            CheckResult('a').merge(CheckResult('b'))

    def test_empty_fold(self):
        merged = merge_reports("empty", [])
        self.assertTrue(merged.passed)
        self.assertEqual(merged.tested, 0)
        self.assertIn("(no checks)", merged.to_text())

    def test_dict_round_trip(self):
        report = _sample_report('r', 'law', [True, False, None], finding='kept')
        restored = VerificationReport.from_dict(report.to_dict())
        self.assertEqual(restored.to_dict(), report.to_dict())

    def test_text_and_frame(self):
        report = _sample_report('r', 'law', [True, False])
        frame = report.to_frame()
        self.assertEqual(list(frame.columns), ['check', 'tested', 'skipped', 'failed', 'discrepancies'])
        self.assertEqual(int(frame.loc[0, 'failed']), 1)
        self.assertTrue(report.to_text().endswith("FAIL (1 failures)"))


class TestWorkers(unittest.TestCase):
    """DGL_THREADS handling and order-preserving fan-out."""

    def test_worker_count_reads_environment(self):
        with mock.patch.dict(os.environ, {THREADS_ENV: '4'}):
            self.assertEqual(worker_count(), 4)
        with mock.patch.dict(os.environ, {THREADS_ENV: '0'}):
            self.assertEqual(worker_count(), 1)
        with mock.patch.dict(os.environ, {THREADS_ENV: 'many'}):
            self.assertEqual(worker_count(), 1)
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(worker_count(), 1)

    def test_batched(self):
        self.assertEqual(batched([1, 2, 3, 4, 5], 2), [[1, 2], [3, 4], [5]])
        with self.assertRaises(ValueError):
            batched([1], 0)

    def test_parallel_merge_matches_sequential(self):
        items = list(range(40))

        def job(batch):
            report = VerificationReport(title="batch")
            for i in batch:
                report.record('even', i % 2 == 0, {'i': i})
            return report

        with mock.patch.dict(os.environ, {THREADS_ENV: '1'}):
            sequential = run_batches("sweep", batched(items, 7), job)
        with mock.patch.dict(os.environ, {THREADS_ENV: '4'}):
            parallel = run_batches("sweep", batched(items, 7), job)
            squares = map_ordered(lambda x: x * x, items)
        self.assertEqual(sequential.to_dict(), parallel.to_dict())
        self.assertEqual(parallel.checks['even'].first_counterexample, {'i': 1})
        self.assertEqual(squares, [x * x for x in items])


class TestMessageBus(unittest.TestCase):

    def test_publish_reaches_subscribers_in_order(self):
        bus = MessageBus()
        received = []
        bus.subscribe('verify.done', lambda m: received.append(('first', m['job'])))
        bus.subscribe('verify.done', lambda m: received.append(('second', m['job'])))
        bus.subscribe('verify.check', lambda m: received.append(('other', m['job'])))
        bus.publish('verify.done', {'job': 'ring'})
        self.assertEqual(received, [('first', 'ring'), ('second', 'ring')])

    def test_publish_without_subscribers(self):
        MessageBus().publish('nobody', {'x': 1})


if __name__ == '__main__':
    unittest.main()
