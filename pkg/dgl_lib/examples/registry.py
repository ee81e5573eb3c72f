"""
Name-based access to the example builders.
"""
import importlib
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from dgl_lib.core.errors import ParameterError, UnknownExampleError
from dgl_lib.examples.base import ExampleInstance

EXAMPLE_MAP = {
    "semidirect": "dgl_lib.examples.semidirect.build_semidirect",
    "unital-ring": "dgl_lib.examples.unital_ring.build_unital_ring",
    "sl2-heisenberg": "dgl_lib.examples.sl2_heisenberg.build_sl2_heisenberg",
    "axb-psl2": "dgl_lib.examples.axb.build_axb",
    "gl2-scalars": "dgl_lib.examples.gl2_scalars.build_gl2_scalars",
    "sanov": "dgl_lib.examples.sanov.build_sanov",
    "free-transformation": "dgl_lib.examples.free_transformation.build_free_transformation",
    "group-case": "dgl_lib.examples.group_case.build_group_case",
}

# Short names for fixed parameter choices; explicit parameters override them.
ALIASES: Dict[str, Tuple[str, Dict[str, Any]]] = {
    "semidirect-z2-z3": ("semidirect", {'m': 2, 'n': 3}),
    "semidirect-z2-z5": ("semidirect", {'m': 2, 'n': 5}),
    "axb": ("axb-psl2", {}),
}


# Builders that sample their windows and take a 'seed' parameter.
SEEDED_EXAMPLES = frozenset({"sl2-heisenberg", "axb-psl2", "gl2-scalars"})

def example_names() -> List[str]:
    return list(EXAMPLE_MAP) + list(ALIASES)


def parse_params(items: Sequence[str]) -> Dict[str, str]:
    """
    Parses 'key=value' strings.

    Raises:
        ParameterError: for an item without '=' or with an empty key.
    """
    params = {}
    for item in items:
        key, sep, value = item.partition('=')
        if not sep or not key.strip():
            raise ParameterError(f"Parameters are given as key=value, got '{item}'.")
        params[key.strip()] = value.strip()
    return params


def _get_builder(name: str) -> Callable[[Dict[str, Any]], ExampleInstance]:
    path = EXAMPLE_MAP[name]
    module_name, function_name = path.rsplit('.', 1)
    module = importlib.import_module(module_name)
    return getattr(module, function_name)


def resolve(name: str) -> Tuple[str, Dict[str, Any]]:
    """Maps an example or alias name to (builder name, default parameters)."""
    if name in ALIASES:
        return ALIASES[name]
    if name in EXAMPLE_MAP:
        return name, {}
    raise UnknownExampleError(f"Unknown example '{name}'. Known examples: {', '.join(example_names())}.")


def build_example(name: str, params: Dict[str, Any] = None, seed: Optional[int] = None) -> ExampleInstance:
    """
    Builds an example by name. A run seed fills in the 'seed' parameter of
    sampled examples unless the parameters already name one.

    Raises:
        UnknownExampleError: if the name is neither an example nor an alias.
        ParameterError: if the builder rejects the parameters.
    """
    builder_name, defaults = resolve(name)
    merged = {**defaults, **(params or {})}
    if seed is not None and builder_name in SEEDED_EXAMPLES:
        merged.setdefault('seed', seed)
    logging.info(f"Building example '{name}' with parameters {merged}.")
    return _get_builder(builder_name)(merged)
