"""
Exact rational matrices.

ExactMatrix is an immutable, hashable row-major matrix of Fractions. The
linear algebra itself (products, inverses, determinants, ranks) is done by
sympy's DomainMatrix over QQ; ExactMatrix only fixes the canonical storage
so that matrices can serve as group element payloads.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from dgl_lib.core.errors import ShapeError, SingularMatrixError
from dgl_lib.exact.rational import RationalLike, as_rational, format_rational, from_qq, to_qq


@dataclass(frozen=True)
class ExactMatrix:
    nrows: int
    ncols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.nrows <= 0 or self.ncols <= 0:
            raise ShapeError(f"Matrix dimensions must be positive, got {self.nrows}x{self.ncols}.")
        entries = tuple(as_rational(e) for e in self.entries)
        if len(entries) != self.nrows * self.ncols:
            raise ShapeError(
                f"Expected {self.nrows * self.ncols} entries for a {self.nrows}x{self.ncols} matrix, got {len(entries)}.")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("Rows must be non-empty and of equal length.")
        return cls(len(rows), len(rows[0]), tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix) -> "ExactMatrix":
        nrows, ncols = dm.shape
        return cls(nrows, ncols, tuple(from_qq(x) for x in dm.to_list_flat()))

    @cached_property
    def domain_matrix(self) -> DomainMatrix:
        return DomainMatrix.from_list_flat([to_qq(e) for e in self.entries], (self.nrows, self.ncols), QQ)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.ncols + j]

    def rows(self) -> List[List[Fraction]]:
        return [list(self.entries[i * self.ncols:(i + 1) * self.ncols]) for i in range(self.nrows)]

    def determinant(self) -> Fraction:
        if not self.is_square:
            raise ShapeError(f"Determinant of a non-square {self.nrows}x{self.ncols} matrix.")
        return from_qq(self.domain_matrix.det())

    def scaled(self, c: RationalLike) -> "ExactMatrix":
        c = as_rational(c)
        return ExactMatrix(self.nrows, self.ncols, tuple(c * e for e in self.entries))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_domain_matrix(self.domain_matrix.transpose())

    def rank(self) -> int:
        return self.domain_matrix.rank()

    def with_entry(self, i: int, j: int, value: RationalLike) -> "ExactMatrix":
        entries = list(self.entries)
        entries[i * self.ncols + j] = as_rational(value)
        return ExactMatrix(self.nrows, self.ncols, tuple(entries))

    def to_json(self) -> List[List[str]]:
        return [[format_rational(e) for e in row] for row in self.rows()]

    @classmethod
    def from_json(cls, rows: Iterable[Iterable[str]]) -> "ExactMatrix":
        return cls.from_rows([[as_rational(str(e)) for e in row] for row in rows])

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(format_rational(e) for e in row) + "]" for row in self.rows()) + "]"


def mat_product(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """
    Exact product a * b.

    Raises:
        ShapeError: if a.ncols != b.nrows.
    """
    if a.ncols != b.nrows:
        raise ShapeError(f"Cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}.")
    return ExactMatrix.from_domain_matrix(a.domain_matrix * b.domain_matrix)


def mat_inverse(a: ExactMatrix) -> ExactMatrix:
    """
    Exact inverse of a square, non-singular matrix.

    Raises:
        ShapeError: if a is not square.
        SingularMatrixError: if det(a) = 0.
    """
    if not a.is_square:
        raise ShapeError(f"Cannot invert a non-square {a.nrows}x{a.ncols} matrix.")
    if a.determinant() == 0:
        raise SingularMatrixError(f"Matrix {a} is singular.")
    return ExactMatrix.from_domain_matrix(a.domain_matrix.inv())


def block_embed(block: ExactMatrix, size: int) -> ExactMatrix:
    """Places a square block in the top-left corner of the size x size identity."""
    if not block.is_square or block.nrows > size:
        raise ShapeError(f"Cannot embed a {block.nrows}x{block.ncols} block into {size}x{size}.")
    rows = ExactMatrix.identity(size).rows()
    for i, row in enumerate(block.rows()):
        rows[i][:block.ncols] = row
    return ExactMatrix.from_rows(rows)
