"""
JSON files of the workbench: reports, fragments, convolution elements and
norm results.

Every writer goes through dump_json, which sorts keys and rounds floats to
a fixed number of decimals, so that identical runs produce byte-identical
files.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dgl_lib.algebra.convolution import ConvolutionElement
from dgl_lib.core.errors import UsageError, ValidationError
from dgl_lib.groupoid.export import fragment_from_json, fragment_to_json
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment
from dgl_lib.pair.admissible_pair import AdmissiblePair

DEFAULT_PRECISION = 12

PathLike = Union[str, Path]


def round_floats(data: Any, precision: int = DEFAULT_PRECISION) -> Any:
    """
    Recursively rounds floats, turns tuples into lists and renders any
    other non-JSON value (Fractions, group elements) with str.
    """
    if isinstance(data, float):
        return round(data, precision)
    if isinstance(data, dict):
        return {str(k): round_floats(v, precision) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [round_floats(v, precision) for v in data]
    if data is None or isinstance(data, (str, int, bool)):
        return data
    return str(data)


def dump_json(data: Any, precision: int = DEFAULT_PRECISION) -> str:
    return json.dumps(round_floats(data, precision), indent=2, sort_keys=True, default=str, ensure_ascii=False) + "\n"


def write_json(data: Any, output_path: PathLike, precision: int = DEFAULT_PRECISION) -> Path:
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(dump_json(data, precision), encoding='utf-8')
    logging.info(f"Wrote '{output_path}'.")
    return output_path


def read_json(input_path: PathLike) -> Any:
    """
    Raises:
        UsageError: if the file is missing or not valid JSON.
    """
    input_path = Path(input_path)
    try:
        with open(input_path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise UsageError(f"File not found: {input_path}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"Invalid JSON in {input_path}: {e}") from e


# --- fragments -------------------------------------------------------------

def save_fragment(fragment: FiniteGroupoidFragment, output_path: PathLike,
                  header: Optional[Dict[str, Any]] = None) -> Path:
    return write_json(fragment_to_json(fragment, header), output_path)


def load_fragment(input_path: PathLike, pair: AdmissiblePair) -> FiniteGroupoidFragment:
    return fragment_from_json(read_json(input_path), pair)


# --- convolution elements --------------------------------------------------

def element_to_json(f: ConvolutionElement) -> Dict[str, Any]:
    return {
        'pair': f.fragment.pair.pair_id,
        'fragment': f.fragment.fragment_id,
        'element': f.to_json(),
    }


def element_from_json(data: Union[Dict[str, Any], List[Dict[str, Any]]],
                      fragment: FiniteGroupoidFragment) -> ConvolutionElement:
    """
    Accepts the bare list [{h, k, re, im}] or the wrapped form written by
    save_element.

    Raises:
        ValidationError: if the wrapped form names another pair.
    """
    if isinstance(data, dict):
        if data.get('pair', fragment.pair.pair_id) != fragment.pair.pair_id:
            raise ValidationError(f"Element of pair '{data['pair']}' cannot be loaded over "
                                  f"'{fragment.pair.pair_id}'.")
        data = data.get('element', [])
    return ConvolutionElement.from_json(fragment, data)


def save_element(f: ConvolutionElement, output_path: PathLike) -> Path:
    return write_json(element_to_json(f), output_path)


def load_element(input_path: PathLike, fragment: FiniteGroupoidFragment) -> ConvolutionElement:
    return element_from_json(read_json(input_path), fragment)
