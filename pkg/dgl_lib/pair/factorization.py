"""
KH-factorization oracles.

The brute-force oracle is the ground truth: it tabulates every product kh
over the enumerated K and H and looks g up. Closed-form oracles encode a
per-example formula and are trusted only after being cross-checked against
the brute-force table (HybridOracle, compare_oracles).
"""
import logging
from typing import Callable, Dict, Optional, Sequence

from dgl_lib.core.errors import AdmissibilityError, CoverageError, OracleDisagreement
from dgl_lib.core.interfaces import AmbientGroup, Factorization, FactorizationOracle, GroupElement, OracleKind
from dgl_lib.core.report import VerificationReport
from dgl_lib.pair.subgroup import SubgroupSpec


def _describe(f: Optional[Factorization]) -> Optional[Dict[str, str]]:
    if f is None:
        return None
    return {'k': str(f[0]), 'h': str(f[1])}


class ClosedFormOracle(FactorizationOracle):
    """Wraps a per-example factorization formula."""
    kind = OracleKind.CLOSED_FORM

    def __init__(self, formula: Callable[[GroupElement], Optional[Factorization]], description: str = ''):
        self.formula = formula
        self.description = description

    def factor(self, g: GroupElement) -> Optional[Factorization]:
        return self.formula(g)


class BruteForceOracle(FactorizationOracle):
    """
    Tabulates K x H products.

    Absence from the table decides g not in KH only when both enumerations
    are exhaustive; over windows it raises CoverageError instead.

    Raises:
        CapabilityError: if H or K cannot be enumerated.
        AdmissibilityError: if some g has two distinct factorizations,
            i.e. H and K intersect nontrivially.
    """
    kind = OracleKind.BRUTE_FORCE

    def __init__(self, ambient: AmbientGroup, h_spec: SubgroupSpec, k_spec: SubgroupSpec):
        self.ambient = ambient
        self.exhaustive = h_spec.is_exhaustive and k_spec.is_exhaustive
        self.table: Dict[GroupElement, Factorization] = {}
        for k in k_spec.enumerate():
            for h in h_spec.enumerate():
                g = ambient.op(k, h)
                previous = self.table.get(g)
                if previous is not None and previous != (k, h):
                    raise AdmissibilityError(
                        f"{g} factors twice: as {previous[0]}*{previous[1]} and {k}*{h}; H and K intersect.")
                self.table[g] = (k, h)
        logging.info(f"Brute-force factorization table built with {len(self.table)} products "
                     f"({'exhaustive' if self.exhaustive else 'window'}).")

    def factor(self, g: GroupElement) -> Optional[Factorization]:
        found = self.table.get(g)
        if found is not None or self.exhaustive:
            return found
        raise CoverageError(f"{g} is not a product of window elements; membership in KH is undecided.")


class HybridOracle(FactorizationOracle):
    """
    Answers with the closed form and confirms with brute force whenever the
    brute-force table can decide.

    Raises:
        OracleDisagreement: on any decided disagreement.
    """
    kind = OracleKind.HYBRID

    def __init__(self, closed_form: FactorizationOracle, brute_force: BruteForceOracle):
        self.closed_form = closed_form
        self.brute_force = brute_force

    def factor(self, g: GroupElement) -> Optional[Factorization]:
        claimed = self.closed_form.factor(g)
        try:
            witnessed = self.brute_force.factor(g)
        except CoverageError:
            return claimed
        if witnessed != claimed:
            raise OracleDisagreement(
                f"Factorization of {g}: closed form gives {_describe(claimed)}, brute force gives {_describe(witnessed)}.")
        return claimed


def compare_oracles(first: FactorizationOracle, second: FactorizationOracle,
                    elements: Sequence[GroupElement]) -> VerificationReport:
    """Checks that two oracles agree on presence and witnesses; undecided cases are skips."""
    report = VerificationReport(title="factorization oracle agreement")
    for g in elements:
        try:
            a = first.factor(g)
            b = second.factor(g)
        except CoverageError:
            report.record('oracle agreement', None)
            continue
        report.record('oracle agreement', a == b,
                      lambda g=g, a=a, b=b: {'g': str(g), 'first': _describe(a), 'second': _describe(b)})
    return report
