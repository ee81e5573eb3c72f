"""
Verification of the factorization identity and the action identities (1)-(5).

With hk = (h |> k)(h <| k):

  (1) h1 |> (h2 |> k) = (h1 h2) |> k
  (2) (h1 h2) <| k = (h1 <| (h2 |> k)) (h2 <| k)
  (3) (h <| k1) <| k2 = h <| (k1 k2)
  (4) h |> (k1 k2) = (h |> k1) ((h <| k1) |> k2)
  (5) e |> k = k, h |> e = e, e <| k = e, h <| e = h

(1) and (2) are checked on triples (h1, h2, k) with h2 k in KH, where also
h1 (h2 |> k) in KH <=> (h1 h2) k in KH is checked; (3) and (4) on triples
(h, k1, k2) with h k1 in KH, together with (h <| k1) k2 in KH <=> h (k1 k2) in KH.
Triples failing the precondition, and triples the oracle cannot decide,
are skips.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from dgl_lib.core.errors import CoverageError
from dgl_lib.core.interfaces import GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.core_engine.workers import batched, run_batches
from dgl_lib.pair.admissible_pair import AdmissiblePair

BATCH_SIZE = 4


@dataclass(frozen=True)
class SamplePlan:
    """
    Which elements the sweeps range over.

    Attributes:
        h_samples: Elements of H.
        k_samples: Elements of K.
        max_cases: If set, each triple sweep is subsampled (seeded) down to
            at most this many outer elements per slot.
        seed: Seed of the subsampling.
    """
    h_samples: Sequence[GroupElement]
    k_samples: Sequence[GroupElement]
    max_cases: Optional[int] = None
    seed: int = 0

    @classmethod
    def exhaustive(cls, pair: AdmissiblePair) -> "SamplePlan":
        return cls(tuple(pair.H.enumerate()), tuple(pair.K.enumerate()))

    def subsample(self, items: Sequence[GroupElement], salt: int) -> List[GroupElement]:
        items = list(items)
        if self.max_cases is None or len(items) <= self.max_cases:
            return items
        rng = np.random.default_rng([self.seed, salt])
        chosen = sorted(rng.choice(len(items), size=self.max_cases, replace=False))
        return [items[i] for i in chosen]


def _in_omega(pair: AdmissiblePair, h: GroupElement, k: GroupElement) -> Optional[bool]:
    try:
        return pair.in_omega(h, k)
    except CoverageError:
        return None


def verify_factorization(pair: AdmissiblePair, plan: SamplePlan) -> VerificationReport:
    """(h |> k)(h <| k) = hk with h |> k in K and h <| k in H, on every sampled (h, k) in Omega."""
    report = VerificationReport(title=f"factorization: {pair.name}")
    for h in plan.h_samples:
        for k in plan.k_samples:
            defined = _in_omega(pair, h, k)
            if not defined:
                report.record('factorization', None)
                continue
            right, left = pair.actions(h, k)
            ok = (pair.K.contains(right) and pair.H.contains(left)
                  and pair.op(right, left) == pair.op(h, k))
            report.record('factorization', ok, lambda h=h, k=k: {'h': str(h), 'k': str(k)})
    return report


def _check_eq5(pair: AdmissiblePair, plan: SamplePlan) -> VerificationReport:
    report = VerificationReport(title="eq5")
    e = pair.e
    for k in plan.k_samples:
        defined = _in_omega(pair, e, k)
        ok = defined and pair.act_right(e, k) == k and pair.act_left(e, k) == e
        report.record('eq5', None if defined is None else ok, lambda k=k: {'h': str(e), 'k': str(k)})
    for h in plan.h_samples:
        defined = _in_omega(pair, h, e)
        ok = defined and pair.act_right(h, e) == e and pair.act_left(h, e) == h
        report.record('eq5', None if defined is None else ok, lambda h=h: {'h': str(h), 'k': str(e)})
    return report


def _check_eq12(pair: AdmissiblePair, h1s: Sequence[GroupElement],
                h2s: Sequence[GroupElement], ks: Sequence[GroupElement]) -> VerificationReport:
    report = VerificationReport(title="eq1-2")
    for h1 in h1s:
        for h2 in h2s:
            h1h2 = pair.op(h1, h2)
            for k in ks:
                case = lambda h1=h1, h2=h2, k=k: {'h1': str(h1), 'h2': str(h2), 'k': str(k)}
                if not _in_omega(pair, h2, k):
                    for check in ('eq1-domain', 'eq1', 'eq2'):
                        report.record(check, None)
                    continue
                h2_k, h2_from_k = pair.actions(h2, k)
                left_defined = _in_omega(pair, h1, h2_k)
                right_defined = _in_omega(pair, h1h2, k)
                if left_defined is None or right_defined is None:
                    for check in ('eq1-domain', 'eq1', 'eq2'):
                        report.record(check, None)
                    continue
                report.record('eq1-domain', left_defined == right_defined, case)
                if not (left_defined and right_defined):
                    report.record('eq1', None)
                    report.record('eq2', None)
                    continue
                h1_h2k, h1_from_h2k = pair.actions(h1, h2_k)
                h1h2_k, h1h2_from_k = pair.actions(h1h2, k)
                report.record('eq1', h1_h2k == h1h2_k, case)
                report.record('eq2', h1h2_from_k == pair.op(h1_from_h2k, h2_from_k), case)
    return report


def _check_eq34(pair: AdmissiblePair, hs: Sequence[GroupElement], k1s: Sequence[GroupElement],
                k2s: Sequence[GroupElement]) -> VerificationReport:
    report = VerificationReport(title="eq3-4")
    for h in hs:
        for k1 in k1s:
            if not _in_omega(pair, h, k1):
                for check in ('eq3-domain', 'eq3', 'eq4'):
                    report.record_skip(check, len(k2s))
                continue
            h_k1, h_from_k1 = pair.actions(h, k1)
            for k2 in k2s:
                case = lambda h=h, k1=k1, k2=k2: {'h': str(h), 'k1': str(k1), 'k2': str(k2)}
                k1k2 = pair.op(k1, k2)
                left_defined = _in_omega(pair, h_from_k1, k2)
                right_defined = _in_omega(pair, h, k1k2)
                if left_defined is None or right_defined is None:
                    for check in ('eq3-domain', 'eq3', 'eq4'):
                        report.record(check, None)
                    continue
                report.record('eq3-domain', left_defined == right_defined, case)
                if not (left_defined and right_defined):
                    report.record('eq3', None)
                    report.record('eq4', None)
                    continue
                hk1_k2, hk1_from_k2 = pair.actions(h_from_k1, k2)
                h_k1k2, h_from_k1k2 = pair.actions(h, k1k2)
                report.record('eq3', hk1_from_k2 == h_from_k1k2, case)
                report.record('eq4', h_k1k2 == pair.op(h_k1, hk1_k2), case)
    return report


def verify_identities(pair: AdmissiblePair, plan: SamplePlan) -> VerificationReport:
    """
    Sweeps the factorization identity, (1)-(5) and the definedness
    equivalences over the plan. Outer slots are split into batches for the
    worker pool; reports merge in order.

    Returns:
        A report with checks 'factorization', 'eq1-domain', 'eq1', 'eq2',
        'eq3-domain', 'eq3', 'eq4', 'eq5'.
    """
    h_outer = plan.subsample(plan.h_samples, 1)
    h_inner = plan.subsample(plan.h_samples, 2)
    k_outer = plan.subsample(plan.k_samples, 3)
    k_inner = plan.subsample(plan.k_samples, 4)

    report = verify_factorization(pair, plan)
    report = report.merge(run_batches(
        "eq1-2", batched(h_outer, BATCH_SIZE),
        lambda batch: _check_eq12(pair, batch, h_inner, k_outer)))
    report = report.merge(run_batches(
        "eq3-4", batched(plan.subsample(plan.h_samples, 5), BATCH_SIZE),
        lambda batch: _check_eq34(pair, batch, k_outer, k_inner)))
    report = report.merge(_check_eq5(pair, plan))
    report.title = f"identities: {pair.name}"
    report.header.update({'h-samples': len(plan.h_samples), 'k-samples': len(plan.k_samples),
                          'seed': plan.seed})
    return report
