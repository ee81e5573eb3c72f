"""
Small finite groups as multiplication tables.

Permutation groups are generated by closing a list of generators under
composition; the closure is then frozen into a FiniteTableGroup.
Permutations are 0-based tuples and compose right to left: (p q)(i) = p[q[i]].
"""
from collections import deque
from typing import Dict, List, Sequence, Tuple

from dgl_lib.exact.groups import FiniteTableGroup

Permutation = Tuple[int, ...]


def compose(p: Permutation, q: Permutation) -> Permutation:
    return tuple(p[i] for i in q)


def generate_permutation_group(generators: Sequence[Permutation]) -> List[Permutation]:
    """Breadth-first closure of the generators; the identity comes first."""
    if not generators:
        raise ValueError("At least one generator is required.")
    degree = len(generators[0])
    identity = tuple(range(degree))
    seen: Dict[Permutation, None] = {identity: None}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            nxt = compose(gen, current)
            if nxt not in seen:
                seen[nxt] = None
                queue.append(nxt)
    return list(seen)


def permutation_group(name: str, generators: Sequence[Permutation]) -> FiniteTableGroup:
    elements = generate_permutation_group(generators)
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[compose(p, q)] for q in elements] for p in elements]
    labels = ["".join(str(i) for i in p) for p in elements]
    return FiniteTableGroup(name, table, labels)


def cyclic_group(n: int) -> FiniteTableGroup:
    """Z/n written additively: element i is the residue i."""
    if n < 1:
        raise ValueError(f"Cyclic group order must be positive, got {n}.")
    return FiniteTableGroup(f"Z/{n}", [[(i + j) % n for j in range(n)] for i in range(n)])


def trivial_group() -> FiniteTableGroup:
    return FiniteTableGroup("1", [[0]], ["e"])


def dihedral_group(n: int) -> FiniteTableGroup:
    """Symmetries of the n-gon, order 2n."""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return permutation_group(f"D{n}", [rotation, reflection])


def symmetric_group(n: int) -> FiniteTableGroup:
    if n == 1:
        return FiniteTableGroup("S1", [[0]], ["0"])
    transposition = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return permutation_group(f"S{n}", [transposition, cycle])


NAMED_GROUPS = {
    'trivial': lambda: trivial_group(),
    'z2': lambda: cyclic_group(2),
    'z3': lambda: cyclic_group(3),
    'z5': lambda: cyclic_group(5),
    's3': lambda: symmetric_group(3),
    'd4': lambda: dihedral_group(4),
}


def named_group(name: str) -> FiniteTableGroup:
    """Resolves short names ('z5', 's3', 'd4', 'zN', 'sN', 'dN')."""
    key = name.lower()
    if key in NAMED_GROUPS:
        return NAMED_GROUPS[key]()
    builders = {'z': cyclic_group, 's': symmetric_group, 'd': dihedral_group}
    if key[:1] in builders and key[1:].isdigit():
        return builders[key[0]](int(key[1:]))
    raise KeyError(f"Unknown finite group '{name}'.")
