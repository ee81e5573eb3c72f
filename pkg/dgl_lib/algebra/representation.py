"""
Finite unitary representations, the left regular representation, reduced
norms and integrated forms.

A FiniteRepresentation assigns a Hilbert space C^{d(u)} to each unit u and
a unitary pi(x): C^{d(s(x))} -> C^{d(r(x))} to each arrow x. The regular
representation acts on l2(G^u) by lambda(x) e_y = e_{xy}.

The reduced norm of f is the largest operator norm of the matrices
Lambda_u(f)[x, y] = f(x y^-1), x and y running over the source fiber G_u.
Operator norms are the only floating-point quantities of the algebra
layer: they come from the symmetric eigenvalue solver applied to
Lambda^* Lambda, with a residual bound as certificate.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set

import numpy as np
from scipy.linalg import eigh

from dgl_lib.algebra.convolution import ConvolutionElement, require_etale
from dgl_lib.algebra.measures import UnitMeasure, modular_function
from dgl_lib.algebra.scalars import to_complex
from dgl_lib.core.errors import CoverageError, InvarianceError, RepresentationError
from dgl_lib.core.report import VerificationReport
from dgl_lib.core_engine.workers import map_ordered
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment
from dgl_lib.groupoid.invariance import is_invariant
from dgl_lib.groupoid.structure import GroupoidElement

TOLERANCE = 1e-9


@dataclass(frozen=True)
class NormResult:
    value: float
    certified_radius: float

    def to_dict(self, precision: int = 12) -> Dict[str, float]:
        return {'value': round(self.value, precision), 'certified-radius': float(f"{self.certified_radius:.3e}")}


def certified_norm(matrix: np.ndarray) -> NormResult:
    """
    Operator 2-norm of a complex matrix from the top eigenpair of M^* M.

    The residual ||A v - lam v|| of a Hermitian A bounds the distance from
    lam to the spectrum; the radius carries it through the square root and
    is floored at TOLERANCE.
    """
    if matrix.size == 0:
        return NormResult(0.0, TOLERANCE)
    gram = matrix.conj().T @ matrix
    gram = (gram + gram.conj().T) / 2
    eigenvalues, eigenvectors = eigh(gram)
    top = max(float(eigenvalues[-1]), 0.0)
    v = eigenvectors[:, -1]
    residual = float(np.linalg.norm(gram @ v - eigenvalues[-1] * v))
    value = float(np.sqrt(top))
    radius = residual / (2 * value) if value > 0 else float(np.sqrt(residual))
    return NormResult(value, max(radius, TOLERANCE))


class FiniteRepresentation:
    """
    Attributes:
        fragment: The fragment the arrows belong to.
        units: The units the representation lives over.
        fiber_dims: d(u) per unit.
        unitaries: pi(x) per arrow with r(x), s(x) in units.

    Raises:
        RepresentationError: if an arrow is missing or a matrix has the
            wrong shape.
    """

    def __init__(self, fragment: FiniteGroupoidFragment, fiber_dims: Dict[GroupoidElement, int],
                 unitaries: Dict[GroupoidElement, np.ndarray]):
        self.fragment = fragment
        self.fiber_dims = dict(fiber_dims)
        self.units: Set[GroupoidElement] = set(fiber_dims)
        self.unitaries = {x: np.asarray(m, dtype=complex) for x, m in unitaries.items()}
        for x in self.arrows():
            if x not in self.unitaries:
                raise RepresentationError(f"No matrix for arrow {x}.")
            expected = (self.fiber_dims[fragment.range(x)], self.fiber_dims[fragment.source(x)])
            if self.unitaries[x].shape != expected:
                raise RepresentationError(f"pi({x}) has shape {self.unitaries[x].shape}, expected {expected}.")
        extra = [x for x in self.unitaries if x not in set(self.arrows())]
        if extra:
            raise RepresentationError(f"Matrices given for arrows outside the unit set, e.g. {extra[0]}.")

    def arrows(self) -> List[GroupoidElement]:
        f = self.fragment
        return [x for x in f.elements if f.range(x) in self.units and f.source(x) in self.units]

    def __call__(self, x: GroupoidElement) -> np.ndarray:
        return self.unitaries[x]

    def offsets(self) -> Dict[GroupoidElement, int]:
        """Start index of each fiber in the direct sum, in fragment unit order."""
        offsets, position = {}, 0
        for u in self.fragment.units():
            if u in self.units:
                offsets[u] = position
                position += self.fiber_dims[u]
        return offsets

    @property
    def total_dim(self) -> int:
        return sum(self.fiber_dims.values())

    def restrict(self, units: Iterable[GroupoidElement]) -> "FiniteRepresentation":
        units = set(units)
        dims = {u: d for u, d in self.fiber_dims.items() if u in units}
        f = self.fragment
        return FiniteRepresentation(f, dims, {
            x: m for x, m in self.unitaries.items() if f.range(x) in units and f.source(x) in units})

    def verify(self, tolerance: float = TOLERANCE) -> VerificationReport:
        """pi(xy) = pi(x) pi(y), pi(x^-1) = pi(x)^*, pi(x) unitary."""
        report = VerificationReport(title=f"representation: {self.fragment.fragment_id}")
        f = self.fragment
        arrows = self.arrows()
        for x in arrows:
            m = self.unitaries[x]
            report.record('unitary', np.allclose(m.conj().T @ m, np.eye(m.shape[1]), atol=tolerance),
                          lambda x=x: {'x': str(x)})
            x_inv = f.invert(x)
            if x_inv in self.unitaries:
                report.record('pi(x^-1) = pi(x)^*', np.allclose(self.unitaries[x_inv], m.conj().T, atol=tolerance),
                              lambda x=x: {'x': str(x)})
            else:
                report.record('pi(x^-1) = pi(x)^*', None)
            for y in f.with_range(f.source(x)):
                xy = f.compose(x, y)
                if y not in self.unitaries or xy not in self.unitaries:
                    report.record('homomorphism', None)
                    continue
                report.record('homomorphism', np.allclose(self.unitaries[xy], m @ self.unitaries[y], atol=tolerance),
                              lambda x=x, y=y: {'x': str(x), 'y': str(y)})
        return report


def _require_closed(fragment: FiniteGroupoidFragment):
    if not fragment.is_closed:
        raise CoverageError(f"Fragment {fragment.fragment_id} is a window; norms need a closed fragment.")


def regular_rep(fragment: FiniteGroupoidFragment) -> FiniteRepresentation:
    """lambda on l2(G^u): lambda(x) e_y = e_{xy} for y in G^{s(x)}."""
    _require_closed(fragment)
    require_etale(fragment)
    bases = {u: fragment.with_range(u) for u in fragment.units()}
    index = {u: {y: i for i, y in enumerate(basis)} for u, basis in bases.items()}
    unitaries = {}
    for x in fragment.elements:
        r, s = fragment.range(x), fragment.source(x)
        m = np.zeros((len(bases[r]), len(bases[s])), dtype=complex)
        for y in bases[s]:
            m[index[r][fragment.compose(x, y)], index[s][y]] = 1
        unitaries[x] = m
    return FiniteRepresentation(fragment, {u: len(b) for u, b in bases.items()}, unitaries)


def trivial_rep(fragment: FiniteGroupoidFragment, units: Optional[Iterable[GroupoidElement]] = None) -> FiniteRepresentation:
    """The one-dimensional representation pi(x) = 1 over the given units (default: all)."""
    units = set(fragment.units() if units is None else units)
    f = fragment
    return FiniteRepresentation(fragment, {u: 1 for u in units}, {
        x: np.ones((1, 1), dtype=complex) for x in f.elements if f.range(x) in units and f.source(x) in units})


def source_fiber_matrix(f: ConvolutionElement, u: GroupoidElement) -> np.ndarray:
    """Lambda_u(f)[x, y] = f(x y^-1) over the source fiber G_u."""
    fragment = f.fragment
    fiber = [x for x in fragment.elements if fragment.source(x) == u]
    m = np.zeros((len(fiber), len(fiber)), dtype=complex)
    for j, y in enumerate(fiber):
        y_inv = fragment.invert(y)
        for i, x in enumerate(fiber):
            value = f.support.get(fragment.compose(x, y_inv))
            if value is not None:
                m[i, j] = to_complex(value)
    return m


def reduced_norm(f: ConvolutionElement) -> NormResult:
    """
    max over units u of ||Lambda_u(f)||.

    Raises:
        CoverageError: if the fragment is a window.
    """
    fragment = f.fragment
    _require_closed(fragment)
    require_etale(fragment)
    results = map_ordered(lambda u: certified_norm(source_fiber_matrix(f, u)), fragment.units())
    best = max(results, key=lambda r: r.value, default=NormResult(0.0, TOLERANCE))
    return NormResult(best.value, max(r.certified_radius for r in results) if results else TOLERANCE)


def integrated_form(pi: FiniteRepresentation, mu: UnitMeasure, f: ConvolutionElement) -> np.ndarray:
    """
    pi_mu(f) on the direct sum of the fibers, in orthonormal coordinates of
    L2(mu): the block at (r(x), s(x)) collects

        f(x) pi(x) Delta(x)^(-1/2) mu(r(x)) / sqrt(mu(r(x)) mu(s(x))).

    Raises:
        RepresentationError: if f is supported on an arrow pi does not cover.
        SupportError: if mu vanishes on a unit.
    """
    fragment = pi.fragment
    delta = modular_function(mu)
    offsets = pi.offsets()
    result = np.zeros((pi.total_dim, pi.total_dim), dtype=complex)
    for x, value in f.support.items():
        if x not in pi.unitaries:
            raise RepresentationError(f"f is supported on {x}, which the representation does not cover.")
        r, s = fragment.range(x), fragment.source(x)
        w_r, w_s = float(mu.weight(r)), float(mu.weight(s))
        coefficient = to_complex(value) * float(delta[x]) ** -0.5 * w_r / np.sqrt(w_r * w_s)
        rows = slice(offsets[r], offsets[r] + pi.fiber_dims[r])
        cols = slice(offsets[s], offsets[s] + pi.fiber_dims[s])
        result[rows, cols] += coefficient * pi.unitaries[x]
    return result


def integrated_norm(pi: FiniteRepresentation, mu: UnitMeasure, f: ConvolutionElement) -> NormResult:
    return certified_norm(integrated_form(pi, mu, f))


def lift_representation(pi: FiniteRepresentation, rho: FiniteRepresentation,
                        invariant_units: Iterable[GroupoidElement]) -> FiniteRepresentation:
    """
    Glues pi over an invariant unit set X and rho over its complement into
    one representation sigma with sigma|X = pi and sigma|X^c = rho.

    Raises:
        InvarianceError: if X is not invariant.
        RepresentationError: if pi does not live exactly over X or rho
            exactly over the complement.
    """
    fragment = pi.fragment
    if rho.fragment is not fragment:
        raise RepresentationError("pi and rho live on different fragments.")
    groupoid, tag = fragment.groupoid, fragment.structure
    x_units = set(invariant_units)
    result = is_invariant(fragment, [groupoid.unit_label(tag, u) for u in x_units])
    if not result.invariant:
        raise InvarianceError(f"The unit set is not invariant: {result.report.findings[0]['message']}.")
    complement = set(fragment.units()) - x_units
    if pi.units != x_units:
        raise RepresentationError("pi must live exactly over the invariant set.")
    if rho.units != complement:
        raise RepresentationError("rho must live exactly over the complement of the invariant set.")
    logging.info(f"Lifting representations over {len(x_units)} + {len(complement)} units.")
    return FiniteRepresentation(fragment, {**pi.fiber_dims, **rho.fiber_dims},
                                {**pi.unitaries, **rho.unitaries})
