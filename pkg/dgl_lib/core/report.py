"""
Verification reports.

A report is a bag of named checks. Each check counts the cases tested,
the cases skipped (a precondition failed or a witness fell outside the
enumerated window) and the failures, and keeps the first counterexample.
Reports produced by independent workers merge associatively, so a sweep
can be split into batches and recombined in order.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union

import pandas as pd

Counterexample = Dict[str, Any]
CounterexampleSource = Union[Counterexample, Callable[[], Counterexample], None]


@dataclass
class CheckResult:
    """Counters for one identity or axiom."""
    check_id: str
    tested: int = 0
    skipped: int = 0
    failed: int = 0
    discrepancies: int = 0
    first_counterexample: Optional[Counterexample] = None

    def merge(self, other: "CheckResult") -> "CheckResult":
        if other.check_id != self.check_id:
            raise ValueError(f"Cannot merge check '{other.check_id}' into '{self.check_id}'.")
        return CheckResult(
            check_id=self.check_id,
            tested=self.tested + other.tested,
            skipped=self.skipped + other.skipped,
            failed=self.failed + other.failed,
            discrepancies=self.discrepancies + other.discrepancies,
            first_counterexample=self.first_counterexample or other.first_counterexample,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'identity-id': self.check_id,
            'tested': self.tested,
            'skipped': self.skipped,
            'failed': self.failed,
        }
        if self.discrepancies:
            data['discrepancies'] = self.discrepancies
        if self.first_counterexample is not None:
            data['first-counterexample'] = self.first_counterexample
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CheckResult":
        return cls(
            check_id=data['identity-id'],
            tested=data.get('tested', 0),
            skipped=data.get('skipped', 0),
            failed=data.get('failed', 0),
            discrepancies=data.get('discrepancies', 0),
            first_counterexample=data.get('first-counterexample'),
        )


def _resolve(source: CounterexampleSource) -> Optional[Counterexample]:
    if callable(source):
        return source()
    return source


@dataclass
class VerificationReport:
    """
    Consolidated result of a verification sweep.

    Attributes:
        title: Short name of what was verified.
        checks: Check results keyed by identity id, in first-seen order.
        findings: Documented observations that are not failures, e.g. a
            published closed-form formula that disagrees with the oracle.
        header: Run metadata (seed, example name, parameters).
    """
    title: str
    checks: Dict[str, CheckResult] = field(default_factory=dict)
    findings: List[Dict[str, Any]] = field(default_factory=list)
    header: Dict[str, Any] = field(default_factory=dict)

    def check(self, check_id: str) -> CheckResult:
        if check_id not in self.checks:
            self.checks[check_id] = CheckResult(check_id)
        return self.checks[check_id]

    def record(self, check_id: str, ok: Optional[bool], counterexample: CounterexampleSource = None):
        """
        Records one case.

        Args:
            check_id: The identity or axiom the case belongs to.
            ok: True for a pass, False for a failure, None for a skip.
            counterexample: A dict, or a callable producing one, describing
                the case. Only evaluated for the first failure.
        """
        result = self.check(check_id)
        if ok is None:
            result.skipped += 1
            return
        result.tested += 1
        if not ok:
            result.failed += 1
            if result.first_counterexample is None:
                result.first_counterexample = _resolve(counterexample)

    def record_skip(self, check_id: str, count: int = 1):
        self.check(check_id).skipped += count

    def record_discrepancy(self, check_id: str, ok: bool, counterexample: CounterexampleSource = None):
        """Records a comparison whose disagreement is a finding, not a failure."""
        result = self.check(check_id)
        result.tested += 1
        if not ok:
            result.discrepancies += 1
            if result.first_counterexample is None:
                result.first_counterexample = _resolve(counterexample)

    def add_finding(self, kind: str, message: str, **details: Any):
        self.findings.append({'kind': kind, 'message': message, **details})

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        merged = VerificationReport(title=self.title, header={**other.header, **self.header})
        for check_id, result in self.checks.items():
            merged.checks[check_id] = CheckResult(**vars(result))
        for check_id, result in other.checks.items():
            if check_id in merged.checks:
                merged.checks[check_id] = merged.checks[check_id].merge(result)
            else:
                merged.checks[check_id] = CheckResult(**vars(result))
        merged.findings = list(self.findings) + list(other.findings)
        return merged

    @property
    def failures(self) -> int:
        return sum(c.failed for c in self.checks.values())

    @property
    def tested(self) -> int:
        return sum(c.tested for c in self.checks.values())

    @property
    def skipped(self) -> int:
        return sum(c.skipped for c in self.checks.values())

    @property
    def discrepancies(self) -> int:
        return sum(c.discrepancies for c in self.checks.values())

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'title': self.title,
            'header': self.header,
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks.values()],
            'findings': self.findings,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        report = cls(title=data['title'], header=dict(data.get('header', {})))
        for item in data.get('checks', []):
            result = CheckResult.from_dict(item)
            report.checks[result.check_id] = result
        report.findings = list(data.get('findings', []))
        return report

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {'check': c.check_id, 'tested': c.tested, 'skipped': c.skipped,
             'failed': c.failed, 'discrepancies': c.discrepancies}
            for c in self.checks.values()
        ]
        return pd.DataFrame(rows, columns=['check', 'tested', 'skipped', 'failed', 'discrepancies'])

    def to_text(self) -> str:
        lines = [f"== {self.title} =="]
        for key, value in self.header.items():
            lines.append(f"{key}: {value}")
        frame = self.to_frame()
        lines.append(frame.to_string(index=False) if not frame.empty else "(no checks)")
        for finding in self.findings:
            lines.append(f"finding [{finding['kind']}]: {finding['message']}")
        lines.append("PASS" if self.passed else f"FAIL ({self.failures} failures)")
        return "\n".join(lines)


def merge_reports(title: str, reports: List[VerificationReport]) -> VerificationReport:
    """Folds reports left to right; the empty fold is an empty report."""
    merged = VerificationReport(title=title)
    for report in reports:
        merged = merged.merge(report)
    merged.title = title
    return merged
