"""
The double groupoid of a finite unital ring A = M_d(Z/n).

G = A* x A with (a, x)(b, y) = (ab, x + ay), i.e. the semidirect product of
the unit group acting on (A, +) by left multiplication, and

    H = {(a, a - 1) : a in A*},  K = {(b, 0) : b in A*}.

(p, q) lies in KH iff p - q is a unit; then (p, q) = (p - q, 0)(c, c - 1)
with c = (p - q)^-1 p. The published actions are

    (a, a-1) |> (b, 0) = (a(b - 1) + 1, 0)
    (a, a-1) <| (b, 0) = (c, c - 1),  c = (a(b - 1) + 1)^-1 ab

on Omega = {a(b - 1) + 1 in A*}.
"""
import logging
from typing import Any, Dict, Optional, Tuple

from dgl_lib.core.interfaces import Factorization, GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.examples.base import ClaimedActions, ExampleInstance, int_param, reject_unknown
from dgl_lib.exact.groups import ModularMatrixGroup, SemidirectGroup
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.factorization import ClosedFormOracle
from dgl_lib.pair.identities import SamplePlan
from dgl_lib.pair.subgroup import SubgroupSpec

Residues = Tuple[int, ...]


class MatrixRing:
    """Ring arithmetic of M_d(Z/n) on row-major residue tuples."""

    def __init__(self, units: ModularMatrixGroup, additive: ModularMatrixGroup):
        self.units = units
        self.additive = additive
        self.n = units.modulus
        self.one: Residues = units.identity().payload

    def add(self, p: Residues, q: Residues) -> Residues:
        return tuple((a + b) % self.n for a, b in zip(p, q))

    def sub(self, p: Residues, q: Residues) -> Residues:
        return tuple((a - b) % self.n for a, b in zip(p, q))

    def mul(self, p: Residues, q: Residues) -> Residues:
        return self.units.scalar_product(p, q)

    def is_unit(self, p: Residues) -> bool:
        return self.units.is_unit_matrix(p)

    def inverse(self, p: Residues) -> Residues:
        return self.units.inv(self.units.element(p)).payload


def _h(group: SemidirectGroup, ring: MatrixRing, a: Residues) -> GroupElement:
    return GroupElement((ring.units.element(a), ring.additive.element(ring.sub(a, ring.one))), group.group_id)


def _k(group: SemidirectGroup, ring: MatrixRing, b: Residues) -> GroupElement:
    return GroupElement((ring.units.element(b), ring.additive.identity()), group.group_id)


def omega_count(ring: MatrixRing) -> int:
    """Direct count of the pairs (a, b) of units with a(b - 1) + 1 invertible."""
    units = [u.payload for u in ring.units.enumerate()]
    return sum(1 for a in units for b in units
               if ring.is_unit(ring.add(ring.mul(a, ring.sub(b, ring.one)), ring.one)))


def build_unital_ring(params: Dict[str, Any]) -> ExampleInstance:
    """
    Parameters: n (modulus, default 5), d (matrix size, default 1; d = 1 is Z/n).
    """
    params = dict(params)
    n = int_param(params, 'n', 5, minimum=2)
    d = int_param(params, 'd', 1, minimum=1)
    reject_unknown('unital-ring', params)
    units = ModularMatrixGroup(f"GL{d}(Z/{n})" if d > 1 else f"(Z/{n})*", n, d)
    additive = ModularMatrixGroup(f"M{d}(Z/{n})" if d > 1 else f"Z/{n}", n, d, additive=True)
    ring = MatrixRing(units, additive)

    def action(a: GroupElement, y: GroupElement) -> GroupElement:
        return additive.element(ring.mul(a.payload, y.payload))

    group = SemidirectGroup(f"{units.group_id} x| {additive.group_id}", units, additive, action)
    unit_payloads = [u.payload for u in units.enumerate()]
    h_spec = SubgroupSpec(
        'H', contains=lambda g: ring.sub(g.payload[0].payload, g.payload[1].payload) == ring.one,
        parametrize=lambda a: _h(group, ring, a), parameters_of=lambda g: g.payload[0].payload,
        elements=tuple(_h(group, ring, a) for a in unit_payloads))
    k_spec = SubgroupSpec(
        'K', contains=lambda g: g.payload[1] == additive.identity(),
        parametrize=lambda b: _k(group, ring, b), parameters_of=lambda g: g.payload[0].payload,
        elements=tuple(_k(group, ring, b) for b in unit_payloads))

    def factor(g: GroupElement) -> Optional[Factorization]:
        p, q = g.payload[0].payload, g.payload[1].payload
        b = ring.sub(p, q)
        if not ring.is_unit(b):
            return None
        c = ring.mul(ring.inverse(b), p)
        return _k(group, ring, b), _h(group, ring, c)

    oracle = ClosedFormOracle(factor, "(p, q) = (p - q, 0)(c, c - 1), c = (p - q)^-1 p")
    pair = AdmissiblePair(f"unital-ring(n={n},d={d})", group, h_spec, k_spec, oracle)

    def witness(h: GroupElement, k: GroupElement) -> Residues:
        a, b = h.payload[0].payload, k.payload[0].payload
        return ring.add(ring.mul(a, ring.sub(b, ring.one)), ring.one)

    def claimed_left(h: GroupElement, k: GroupElement) -> GroupElement:
        a, b = h.payload[0].payload, k.payload[0].payload
        return _h(group, ring, ring.mul(ring.inverse(witness(h, k)), ring.mul(a, b)))

    claimed = ClaimedActions(
        right=lambda h, k: _k(group, ring, witness(h, k)),
        left=claimed_left,
        omega=lambda h, k: ring.is_unit(witness(h, k)),
    )

    def check_omega_count(instance: ExampleInstance) -> VerificationReport:
        report = VerificationReport(title=f"omega count: {instance.pair.name}")
        direct = omega_count(ring)
        found = len(instance.pair.omega)
        report.record('|Omega| = invertibility count', found == direct,
                      {'omega': found, 'direct-count': direct})
        return report

    logging.info(f"Built unital ring model over M{d}(Z/{n}) with {len(unit_payloads)} units.")
    return ExampleInstance(
        name='unital-ring', parameters={'n': n, 'd': d}, pair=pair, claimed=claimed,
        plan=SamplePlan.exhaustive(pair), fragment_window=(h_spec.enumerate(), k_spec.enumerate()),
        extra_checks=[check_omega_count])
