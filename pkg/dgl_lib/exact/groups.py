"""
Concrete ambient groups.

Each class implements one AmbientGroup kind with exact, canonical payloads:

- FiniteTableGroup: abstract finite group given by a Cayley table (payload: index).
- RationalMatrixGroup: SL_n(Q) / GL_n(Q) or a sub-shape of it (payload: ExactMatrix).
- ModularMatrixGroup: GL_d(Z/n) under multiplication, or M_d(Z/n) under
  addition (payload: tuple of least non-negative residues).
- SemidirectGroup: H x| K with (h,k)(g,l) = (hg, k phi_h(l)) (payload: (h, k)).
- ProjectiveMatrixGroup: SL_n(Q)/{+-I} with sign-normalized representatives.
"""
import itertools
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, igcd

from dgl_lib.core.errors import OwnershipError, ValidationError
from dgl_lib.core.interfaces import AmbientGroup, GroupElement, GroupKind, JsonPayload, Payload
from dgl_lib.core.report import VerificationReport
from dgl_lib.exact.matrix import ExactMatrix, mat_inverse, mat_product


class FiniteTableGroup(AmbientGroup):
    """
    A finite group given by its multiplication table.

    The table is only required to be a square table over range(n) with a
    two-sided identity; the remaining axioms are checked by
    check_group_axioms, so that deliberately corrupted tables can be loaded
    and caught.
    """

    def __init__(self, group_id: str, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        super().__init__(group_id, GroupKind.FINITE_TABLE)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValidationError(f"Group '{group_id}': multiplication table must be square and non-empty.")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValidationError(f"Group '{group_id}': table entries must lie in range({n}).")
        self.order = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValidationError(f"Group '{group_id}': expected {n} labels, got {len(self.labels)}.")
        self._e = self._find_identity()
        self._inverses: Dict[int, Optional[int]] = {}

    def _find_identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n)):
                return e
        raise ValidationError(f"Group '{self.group_id}': table has no two-sided identity.")

    def canonical(self, payload: Any) -> int:
        if isinstance(payload, str) and payload in self.labels:
            return self.labels.index(payload)
        index = int(payload)
        if not 0 <= index < self.order:
            raise ValidationError(f"Index {payload} outside group '{self.group_id}' of order {self.order}.")
        return index

    def _multiply(self, p: int, q: int) -> int:
        return self.table[p][q]

    def _invert(self, p: int) -> int:
        if p not in self._inverses:
            candidates = [b for b in range(self.order)
                          if self.table[p][b] == self._e and self.table[b][p] == self._e]
            self._inverses[p] = candidates[0] if candidates else None
        inverse = self._inverses[p]
        if inverse is None:
            raise ValidationError(f"Element {self.labels[p]} of '{self.group_id}' has no two-sided inverse.")
        return inverse

    def _identity_payload(self) -> int:
        return self._e

    def enumerate(self) -> List[GroupElement]:
        return [GroupElement(i, self.group_id) for i in range(self.order)]

    def label(self, a: GroupElement) -> str:
        self._require(a)
        return self.labels[a.payload]

    def payload_to_json(self, payload: int) -> JsonPayload:
        return payload

    def payload_from_json(self, data: JsonPayload) -> int:
        return int(data)

    def to_table_json(self) -> Dict[str, Any]:
        return {'name': self.group_id, 'table': [list(row) for row in self.table], 'labels': list(self.labels)}

    @classmethod
    def from_table_json(cls, data: Dict[str, Any]) -> "FiniteTableGroup":
        """Builds a group from the JSON input format {name, table, labels?}."""
        try:
            return cls(data['name'], data['table'], data.get('labels'))
        except KeyError as e:
            raise ValidationError(f"Finite group JSON is missing key {e}.") from e


class RationalMatrixGroup(AmbientGroup):
    """
    A group of n x n rational matrices.

    Args:
        group_id: Identifier of the group.
        n: Matrix size.
        special: True for SL_n (det = 1), False for GL_n (det != 0).
        shape_predicate: Optional further membership condition, e.g. the
            affine block shape [[*, *, *], [*, *, *], [0, 0, 1]]. It must
            describe a subgroup.
    """

    def __init__(self, group_id: str, n: int, special: bool = True,
                 shape_predicate: Optional[Callable[[ExactMatrix], bool]] = None):
        super().__init__(group_id, GroupKind.MATRIX_RATIONAL)
        self.n = n
        self.special = special
        self.shape_predicate = shape_predicate

    def canonical(self, payload: Any) -> ExactMatrix:
        matrix = payload if isinstance(payload, ExactMatrix) else ExactMatrix.from_rows(payload)
        if matrix.shape != (self.n, self.n):
            raise ValidationError(f"Group '{self.group_id}' holds {self.n}x{self.n} matrices, got {matrix.shape}.")
        det = matrix.determinant()
        if self.special and det != 1:
            raise ValidationError(f"Matrix {matrix} has determinant {det}, expected 1 in '{self.group_id}'.")
        if det == 0:
            raise ValidationError(f"Matrix {matrix} is singular.")
        if self.shape_predicate is not None and not self.shape_predicate(matrix):
            raise ValidationError(f"Matrix {matrix} does not have the shape required by '{self.group_id}'.")
        return matrix

    def _multiply(self, p: ExactMatrix, q: ExactMatrix) -> ExactMatrix:
        return mat_product(p, q)

    def _invert(self, p: ExactMatrix) -> ExactMatrix:
        return mat_inverse(p)

    def _identity_payload(self) -> ExactMatrix:
        return ExactMatrix.identity(self.n)

    def payload_to_json(self, payload: ExactMatrix) -> JsonPayload:
        return payload.to_json()

    def payload_from_json(self, data: JsonPayload) -> ExactMatrix:
        return ExactMatrix.from_json(data)


def _sign_normalize(matrix: ExactMatrix) -> ExactMatrix:
    first = next(e for e in matrix.entries if e != 0)
    return matrix if first > 0 else matrix.scaled(-1)


class ProjectiveMatrixGroup(RationalMatrixGroup):
    """
    SL_n(Q) / {I, -I} for even n.

    Elements are represented by the sign-normalized matrix whose first
    nonzero entry in row-major order is positive.
    """

    def __init__(self, group_id: str, n: int = 2):
        if n % 2:
            raise ValidationError("-I lies in SL_n only for even n.")
        super().__init__(group_id, n, special=True)
        self.kind = GroupKind.QUOTIENT_BY_CENTER

    def canonical(self, payload: Any) -> ExactMatrix:
        return _sign_normalize(super().canonical(payload))

    def _multiply(self, p: ExactMatrix, q: ExactMatrix) -> ExactMatrix:
        return _sign_normalize(mat_product(p, q))

    def _invert(self, p: ExactMatrix) -> ExactMatrix:
        return _sign_normalize(mat_inverse(p))


class ModularMatrixGroup(AmbientGroup):
    """
    Matrices over Z/n.

    With additive=False this is GL_d(Z/n) under multiplication (d = 1 gives
    the unit group (Z/n)*); with additive=True it is M_d(Z/n) under addition.
    Payloads are row-major tuples of least non-negative residues.
    """

    def __init__(self, group_id: str, modulus: int, dim: int = 1, additive: bool = False):
        super().__init__(group_id, GroupKind.MATRIX_MOD_N)
        if modulus < 2:
            raise ValidationError(f"Modulus must be at least 2, got {modulus}.")
        self.modulus = modulus
        self.dim = dim
        self.additive = additive
        self._elements: Optional[List[GroupElement]] = None

    def _matrix(self, p: Tuple[int, ...]) -> Matrix:
        return Matrix(self.dim, self.dim, list(p))

    def _tuple(self, m: Matrix) -> Tuple[int, ...]:
        return tuple(int(x) % self.modulus for x in m)

    def determinant(self, p: Tuple[int, ...]) -> int:
        return int(self._matrix(p).det()) % self.modulus

    def is_unit_matrix(self, p: Tuple[int, ...]) -> bool:
        return igcd(self.determinant(p), self.modulus) == 1

    def canonical(self, payload: Any) -> Tuple[int, ...]:
        if isinstance(payload, int):
            payload = (payload,)
        p = tuple(int(x) % self.modulus for x in payload)
        if len(p) != self.dim * self.dim:
            raise ValidationError(f"Expected {self.dim * self.dim} residues for '{self.group_id}', got {len(p)}.")
        if not self.additive and not self.is_unit_matrix(p):
            raise ValidationError(f"{p} is not invertible modulo {self.modulus}.")
        return p

    def _multiply(self, p, q):
        if self.additive:
            return tuple((a + b) % self.modulus for a, b in zip(p, q))
        return self._tuple(self._matrix(p) * self._matrix(q))

    def _invert(self, p):
        if self.additive:
            return tuple((-a) % self.modulus for a in p)
        inverse = self._matrix(p).inv_mod(self.modulus)
        return tuple(int(x) % self.modulus for x in inverse)

    def _identity_payload(self):
        if self.additive:
            return (0,) * (self.dim * self.dim)
        return tuple(int(i == j) for i in range(self.dim) for j in range(self.dim))

    def enumerate(self) -> List[GroupElement]:
        if self._elements is None:
            candidates = itertools.product(range(self.modulus), repeat=self.dim * self.dim)
            self._elements = [GroupElement(p, self.group_id) for p in candidates
                              if self.additive or self.is_unit_matrix(p)]
        return list(self._elements)

    def scalar_product(self, p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
        """Ring product of two matrices, regardless of the group operation."""
        return self._tuple(self._matrix(p) * self._matrix(q))

    def payload_to_json(self, payload) -> JsonPayload:
        return list(payload)

    def payload_from_json(self, data: JsonPayload):
        return tuple(int(x) for x in data)


class SemidirectGroup(AmbientGroup):
    """
    The semidirect product H x|_phi K with multiplication
    (h,k)(g,l) = (hg, k phi_h(l)) and inverse (h^-1, phi_{h^-1}(k^-1)).

    Args:
        group_id: Identifier of the product group.
        h_group: The acting group H.
        k_group: The group K acted upon.
        action: phi, mapping (h, k) to phi_h(k); must be a homomorphism
            H -> Aut(K) (see check_action).
    """

    def __init__(self, group_id: str, h_group: AmbientGroup, k_group: AmbientGroup,
                 action: Callable[[GroupElement, GroupElement], GroupElement]):
        super().__init__(group_id, GroupKind.SEMIDIRECT)
        self.h_group = h_group
        self.k_group = k_group
        self.action = action

    def canonical(self, payload: Any) -> Tuple[GroupElement, GroupElement]:
        h, k = payload
        if not isinstance(h, GroupElement):
            h = self.h_group.element(h)
        if not isinstance(k, GroupElement):
            k = self.k_group.element(k)
        if not self.h_group.owns(h) or not self.k_group.owns(k):
            raise OwnershipError(f"Components {h!r}, {k!r} do not belong to the factors of '{self.group_id}'.")
        return h, k

    def _multiply(self, p, q):
        h, k = p
        g, l = q
        return self.h_group.op(h, g), self.k_group.op(k, self.action(h, l))

    def _invert(self, p):
        h, k = p
        h_inv = self.h_group.inv(h)
        return h_inv, self.action(h_inv, self.k_group.inv(k))

    def _identity_payload(self):
        return self.h_group.identity(), self.k_group.identity()

    def embed_h(self, h: GroupElement) -> GroupElement:
        return GroupElement((h, self.k_group.identity()), self.group_id)

    def embed_k(self, k: GroupElement) -> GroupElement:
        return GroupElement((self.h_group.identity(), k), self.group_id)

    def enumerate(self) -> Optional[List[GroupElement]]:
        hs, ks = self.h_group.enumerate(), self.k_group.enumerate()
        if hs is None or ks is None:
            return None
        return [GroupElement((h, k), self.group_id) for h in hs for k in ks]

    def payload_to_json(self, payload) -> JsonPayload:
        h, k = payload
        return [self.h_group.to_json(h), self.k_group.to_json(k)]

    def payload_from_json(self, data: JsonPayload):
        return self.h_group.from_json(data[0]), self.k_group.from_json(data[1])


def check_action(h_group: AmbientGroup, k_group: AmbientGroup,
                 action: Callable[[GroupElement, GroupElement], GroupElement],
                 hs: Sequence[GroupElement], ks: Sequence[GroupElement]) -> VerificationReport:
    """
    Checks that phi is a homomorphism H -> Aut(K) on the given samples:
    phi_e = id, phi_h(k1 k2) = phi_h(k1) phi_h(k2) and phi_{hg} = phi_h o phi_g.
    """
    report = VerificationReport(title="action homomorphism")
    e = h_group.identity()
    for k in ks:
        report.record('phi_e = id', action(e, k) == k, lambda k=k: {'k': str(k)})
    for h in hs:
        for k1 in ks:
            for k2 in ks:
                lhs = action(h, k_group.op(k1, k2))
                rhs = k_group.op(action(h, k1), action(h, k2))
                report.record('phi_h multiplicative', lhs == rhs,
                              lambda h=h, k1=k1, k2=k2: {'h': str(h), 'k1': str(k1), 'k2': str(k2)})
    for h in hs:
        for g in hs:
            hg = h_group.op(h, g)
            for k in ks:
                report.record('phi_hg = phi_h phi_g', action(hg, k) == action(h, action(g, k)),
                              lambda h=h, g=g, k=k: {'h': str(h), 'g': str(g), 'k': str(k)})
    return report


def group_op(g: AmbientGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    """Product ab in g; raises OwnershipError for foreign elements."""
    return g.op(a, b)


def group_inv(g: AmbientGroup, a: GroupElement) -> GroupElement:
    return g.inv(a)


def group_id(g: AmbientGroup) -> GroupElement:
    return g.identity()


def check_group_axioms(g: AmbientGroup, elements: Optional[Sequence[GroupElement]] = None) -> VerificationReport:
    """
    Checks associativity, two-sided identity and two-sided inverses.

    Exhaustive over g.enumerate() when no sample is given. A missing
    inverse is a failure of the inverse law rather than an exception.
    """
    if elements is None:
        elements = g.enumerate()
        if elements is None:
            raise ValidationError(f"Group '{g.group_id}' is infinite; pass a sample of elements.")
    report = VerificationReport(title=f"group axioms: {g.group_id}")
    report.header['elements'] = len(elements)
    e = g.identity()
    for a in elements:
        report.record('identity', g.op(e, a) == a and g.op(a, e) == a, lambda a=a: {'a': str(a)})
        try:
            a_inv = g.inv(a)
            ok = g.op(a, a_inv) == e and g.op(a_inv, a) == e
        except ValidationError:
            ok = False
        report.record('inverse', ok, lambda a=a: {'a': str(a)})
    for a in elements:
        for b in elements:
            ab = g.op(a, b)
            for c in elements:
                ok = g.op(ab, c) == g.op(a, g.op(b, c))
                report.record('associativity', ok, lambda a=a, b=b, c=c: {'a': str(a), 'b': str(b), 'c': str(c)})
    if not report.passed:
        logging.warning(f"Group '{g.group_id}' fails {report.failures} axiom checks.")
    return report
