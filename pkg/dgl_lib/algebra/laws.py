"""
Law sweeps for the convolution algebra of a closed étale fragment.
"""
from typing import Optional, Sequence

import numpy as np

from dgl_lib.algebra.convolution import ConvolutionElement, i_norm
from dgl_lib.algebra.measures import UnitMeasure, counting_measure
from dgl_lib.algebra.representation import (
    TOLERANCE, FiniteRepresentation, integrated_form, reduced_norm, regular_rep, trivial_rep,
)
from dgl_lib.core.report import VerificationReport
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment


def random_elements(fragment: FiniteGroupoidFragment, count: int, seed: int,
                    gaussian: bool = True) -> Sequence[ConvolutionElement]:
    rng = np.random.default_rng(seed)
    return [ConvolutionElement.random(fragment, rng, density=0.4, gaussian=gaussian) for _ in range(count)]


def verify_algebra_laws(fragment: FiniteGroupoidFragment, elements: Sequence[ConvolutionElement],
                        mu: Optional[UnitMeasure] = None,
                        representations: Sequence[FiniteRepresentation] = ()) -> VerificationReport:
    """
    On consecutive pairs and triples of the sample: associativity,
    f** = f, (f g)* = g* f*, ||f g||_I <= ||f||_I ||g||_I, ||f*||_I = ||f||_I,
    ||f||_r <= ||f||_I, the C*-identity, pi_mu a *-homomorphism for the
    regular representation, ||lambda_mu(f)|| = ||f||_r, and
    ||pi_mu(f)|| <= ||f||_r for the trivial and the given representations.
    """
    report = VerificationReport(title=f"algebra laws: {fragment.fragment_id}")
    mu = mu or counting_measure(fragment)
    lam = regular_rep(fragment)
    reps = [trivial_rep(fragment)] + list(representations)
    n = len(elements)
    for i, f in enumerate(elements):
        g = elements[(i + 1) % n]
        h = elements[(i + 2) % n]
        case = lambda f=f, g=g: {'f': f.to_json(), 'g': g.to_json()}
        fg = f * g
        report.record('associativity', fg * h == f * (g * h), case)
        report.record('involutive', f.involution().involution() == f, case)
        report.record('anti-multiplicative', fg.involution() == g.involution() * f.involution(), case)
        report.record('I-norm submultiplicative', float(i_norm(fg)) <= float(i_norm(f)) * float(i_norm(g)) + TOLERANCE,
                      case)
        report.record('I-norm *-invariant',
                      abs(float(i_norm(f.involution())) - float(i_norm(f))) <= TOLERANCE, case)

        norm = reduced_norm(f)
        report.record('||f||_r <= ||f||_I', norm.value <= float(i_norm(f)) + TOLERANCE, case)
        star = reduced_norm(f.involution() * f)
        report.record('C*-identity', abs(star.value - norm.value ** 2) <= TOLERANCE * max(1.0, norm.value ** 2),
                      lambda f=f, star=star, norm=norm: {'f': f.to_json(), '||f*f||': star.value, '||f||^2': norm.value ** 2})

        lf, lg = integrated_form(lam, mu, f), integrated_form(lam, mu, g)
        report.record('pi_mu multiplicative', np.allclose(integrated_form(lam, mu, fg), lf @ lg, atol=TOLERANCE), case)
        report.record('pi_mu *-preserving', np.allclose(integrated_form(lam, mu, f.involution()), lf.conj().T,
                                                        atol=TOLERANCE), case)
        lam_norm = float(np.linalg.norm(lf, 2))
        report.record('||lambda_mu(f)|| = ||f||_r', abs(lam_norm - norm.value) <= TOLERANCE * max(1.0, norm.value),
                      lambda f=f, lam_norm=lam_norm, norm=norm: {'f': f.to_json(), 'lambda': lam_norm, 'reduced': norm.value})
        for pi in reps:
            value = float(np.linalg.norm(integrated_form(pi, mu, f), 2))
            report.record('weak containment', value <= norm.value + TOLERANCE * max(1.0, norm.value),
                          lambda f=f, value=value, norm=norm: {'f': f.to_json(), 'pi': value, 'reduced': norm.value})
    report.header.update({'samples': n})
    return report
