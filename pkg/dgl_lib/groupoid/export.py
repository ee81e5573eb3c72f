"""
Fragment export: JSON (arrows, window and composability relation) and DOT
(units as nodes, each arrow an edge s(x) -> r(x) labeled (h, k)).
"""
from typing import Any, Dict, List, Optional

from dgl_lib.core.errors import OutOfDomainError, ValidationError
from dgl_lib.groupoid.fragment import ClosureStatus, FiniteGroupoidFragment
from dgl_lib.groupoid.structure import DoubleGroupoid, GroupoidElement, StructureTag
from dgl_lib.pair.admissible_pair import AdmissiblePair


def fragment_to_json(fragment: FiniteGroupoidFragment, header: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Serializes a fragment. The composable relation lists index triples
    [i, j, m] with arrows[i] * arrows[j] = arrows[m] (m is null when the
    product exits a window).
    """
    ambient = fragment.pair.ambient
    index = {x: i for i, x in enumerate(fragment.elements)}
    composable: List[List[Optional[int]]] = []
    for i, a in enumerate(fragment.elements):
        for b in fragment.with_range(fragment.source(a)):
            ab = fragment.compose(a, b)
            composable.append([i, index[b], index.get(ab)])
    hs, ks = fragment.window
    return {
        'header': dict(header or {}),
        'pair': fragment.pair.pair_id,
        'structure': fragment.structure.value,
        'closure-status': fragment.closure_status.value,
        'window': {'h': [ambient.to_json(h) for h in hs], 'k': [ambient.to_json(k) for k in ks]},
        'arrows': [{'h': ambient.to_json(x.h), 'k': ambient.to_json(x.k)} for x in fragment.elements],
        'composable': composable,
    }


def fragment_from_json(data: Dict[str, Any], pair: AdmissiblePair) -> FiniteGroupoidFragment:
    """
    Rebuilds a fragment over the given pair.

    Raises:
        ValidationError: if the data belongs to another pair or its
            composability relation does not match the recomputed one.
        OutOfDomainError: if a listed arrow is not in Omega.
    """
    if data.get('pair') != pair.pair_id:
        raise ValidationError(f"Fragment of pair '{data.get('pair')}' cannot be loaded over '{pair.pair_id}'.")
    ambient = pair.ambient
    groupoid = DoubleGroupoid(pair)
    elements = []
    for item in data['arrows']:
        h, k = ambient.from_json(item['h']), ambient.from_json(item['k'])
        if not pair.in_omega(h, k):
            raise OutOfDomainError(f"Listed arrow ({h}, {k}) is not in Omega of '{pair.pair_id}'.")
        elements.append(GroupoidElement(h, k, pair.pair_id))
    window = (tuple(ambient.from_json(h) for h in data['window']['h']),
              tuple(ambient.from_json(k) for k in data['window']['k']))
    fragment = FiniteGroupoidFragment(groupoid, StructureTag(data['structure']), tuple(elements),
                                      ClosureStatus(data['closure-status']), window)
    if fragment_to_json(fragment)['composable'] != data['composable']:
        raise ValidationError("The stored composability relation does not match the pair's operations.")
    return fragment


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def fragment_to_dot(fragment: FiniteGroupoidFragment) -> str:
    groupoid, tag = fragment.groupoid, fragment.structure
    lines = [f"digraph {_quote(fragment.fragment_id)} {{"]
    for u in fragment.units():
        lines.append(f"  {_quote(str(groupoid.unit_label(tag, u)))};")
    for x in fragment.elements:
        r = groupoid.unit_label(tag, fragment.range(x))
        s = groupoid.unit_label(tag, fragment.source(x))
        lines.append(f"  {_quote(str(s))} -> {_quote(str(r))} [label={_quote(str(x))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
