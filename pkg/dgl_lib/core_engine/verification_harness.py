"""
A harness for running batches of verification jobs.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

from dgl_lib.core.interfaces import Verifiable
from dgl_lib.core.report import VerificationReport, merge_reports
from dgl_lib.core_engine.message_bus import CHECK_TOPIC, DONE_TOPIC, FINDING_TOPIC, MessageBus
from dgl_lib.examples.base import ExampleInstance
from dgl_lib.examples.registry import build_example
from dgl_lib.examples.verify import DEFAULT_ALGEBRA_SAMPLES, verify_example


class ExampleJob(Verifiable):
    """
    Builds a registered example and runs the selected suites on it.

    The instance is built on the first call to verify (or to instance), so
    that a suite definition can be validated before any pair is constructed.
    """

    def __init__(self, example: str, params: Optional[Dict[str, Any]] = None,
                 suites: Sequence[str] = ('all',), seed: int = 0,
                 samples: int = DEFAULT_ALGEBRA_SAMPLES):
        self.example = example
        self.params = dict(params or {})
        self.suites = tuple(suites)
        self.seed = seed
        self.samples = samples
        self._instance: Optional[ExampleInstance] = None

    @property
    def name(self) -> str:
        if not self.params:
            return self.example
        rendered = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.example}[{rendered}]"

    @property
    def instance(self) -> ExampleInstance:
        if self._instance is None:
            self._instance = build_example(self.example, self.params, seed=self.seed)
        return self._instance

    def verify(self) -> VerificationReport:
        return verify_example(self.instance, self.suites, seed=self.seed, algebra_samples=self.samples)


class InstanceJob(Verifiable):
    """Runs the suites on an already built instance."""

    def __init__(self, instance: ExampleInstance, suites: Sequence[str] = ('all',), seed: int = 0,
                 samples: int = DEFAULT_ALGEBRA_SAMPLES):
        self.instance = instance
        self.suites = tuple(suites)
        self.seed = seed
        self.samples = samples

    @property
    def name(self) -> str:
        return self.instance.name

    def verify(self) -> VerificationReport:
        return verify_example(self.instance, self.suites, seed=self.seed, algebra_samples=self.samples)


class VerificationHarness:
    """
    Runs verification jobs in order and publishes their outcome.

    For every job the harness publishes one 'verify.check' message per check
    that failed or disagreed, one 'verify.finding' message per finding and a
    closing 'verify.done' message, and appends a summary row to its history.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None, message_bus: Optional[MessageBus] = None):
        self.config = dict(config or {})
        self.seed = int(self.config.get('seed', 0))
        self.samples = int(self.config.get('samples', DEFAULT_ALGEBRA_SAMPLES))
        self.message_bus = message_bus or MessageBus()
        self.jobs: List[Verifiable] = []
        self.reports: List[VerificationReport] = []
        self.history: List[Dict[str, Any]] = []
        logging.debug("VerificationHarness created.")

    def add_job(self, job: Verifiable):
        if any(existing.name == job.name for existing in self.jobs):
            raise ValueError(f"A job named '{job.name}' is already scheduled.")
        self.jobs.append(job)
        logging.info(f"Job '{job.name}' added.")

    def add_example(self, example: str, params: Optional[Dict[str, Any]] = None,
                    suites: Sequence[str] = ('all',), samples: Optional[int] = None) -> ExampleJob:
        """
        Schedules a registered example with the harness's seed. samples
        overrides the harness's algebra sample count for this job.
        """
        job = ExampleJob(example, params, suites, seed=self.seed,
                         samples=self.samples if samples is None else samples)
        self.add_job(job)
        return job

    def _publish(self, job: Verifiable, report: VerificationReport):
        for result in report.checks.values():
            if result.failed or result.discrepancies:
                self.message_bus.publish(CHECK_TOPIC, {'job': job.name, **result.to_dict()})
        for finding in report.findings:
            self.message_bus.publish(FINDING_TOPIC, {'job': job.name, **finding})
        self.message_bus.publish(DONE_TOPIC, {
            'job': job.name, 'passed': report.passed, 'tested': report.tested,
            'failed': report.failures, 'skipped': report.skipped, 'discrepancies': report.discrepancies,
        })

    def run(self, title: str = 'verification') -> VerificationReport:
        """
        Runs every scheduled job.

        Returns:
            The merged report of all jobs. Each job's report is also kept in
            self.reports, in scheduling order.
        """
        if not self.jobs:
            logging.warning("VerificationHarness.run called with no jobs.")
        for job in self.jobs:
            logging.info(f"--- Running job: {job.name} ---")
            report = job.verify()
            self.reports.append(report)
            self.history.append({
                'job': job.name, 'passed': report.passed, 'tested': report.tested,
                'failed': report.failures, 'skipped': report.skipped,
                'discrepancies': report.discrepancies, 'findings': len(report.findings),
            })
            self._publish(job, report)
        merged = merge_reports(title, self.reports)
        merged.header.update({'seed': self.seed, 'samples': self.samples, 'jobs': [j.name for j in self.jobs]})
        logging.info(f"Harness finished {len(self.jobs)} jobs: "
                     f"{sum(1 for row in self.history if row['passed'])} passed.")
        return merged
