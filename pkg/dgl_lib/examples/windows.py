"""
Seeded rational sample windows for the infinite examples.
"""
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from dgl_lib.exact.matrix import ExactMatrix


def random_rational(rng: np.random.Generator, bound: int, nonzero: bool = False) -> Fraction:
    """p/q with |p| <= bound and 1 <= q <= bound."""
    while True:
        value = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
        if value or not nonzero:
            return value


def random_sl2(rng: np.random.Generator, bound: int) -> ExactMatrix:
    """[[a, b], [c, (1 + bc)/a]] with a nonzero."""
    a = random_rational(rng, bound, nonzero=True)
    b = random_rational(rng, bound)
    c = random_rational(rng, bound)
    return ExactMatrix.from_rows([[a, b], [c, (1 + b * c) / a]])


def rational_grid(bound: int, denominators: Tuple[int, ...] = (1, 2)) -> List[Fraction]:
    """Sorted distinct values p/q with |p| <= bound and q among the given denominators."""
    return sorted({Fraction(p, q) for q in denominators for p in range(-bound, bound + 1)})
