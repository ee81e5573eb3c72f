"""
Example instances: an admissible pair together with its published
closed-form actions, default sampling windows and example-specific checks.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from dgl_lib.core.errors import ParameterError
from dgl_lib.core.interfaces import GroupElement
from dgl_lib.core.report import VerificationReport
from dgl_lib.pair.admissible_pair import AdmissiblePair
from dgl_lib.pair.identities import SamplePlan

Action = Callable[[GroupElement, GroupElement], GroupElement]


@dataclass
class ClaimedActions:
    """
    Closed-form formulas as published, evaluated on group elements.

    Attributes:
        right: h |> k.
        left: h <| k.
        omega: Membership of (h, k) in Omega, if a criterion is published.
    """
    right: Action
    left: Action
    omega: Optional[Callable[[GroupElement, GroupElement], bool]] = None


@dataclass
class ExampleInstance:
    """
    Attributes:
        name: Registered example name.
        parameters: The parsed parameters it was built with.
        pair: The admissible pair.
        claimed: Published closed-form actions.
        plan: Default sample plan for identity sweeps.
        fragment_window: (H, K) window for groupoid fragments.
        extra_checks: Example-specific verifications.
    """
    name: str
    parameters: Dict[str, Any]
    pair: AdmissiblePair
    claimed: ClaimedActions
    plan: SamplePlan
    fragment_window: Tuple[Sequence[GroupElement], Sequence[GroupElement]]
    extra_checks: List[Callable[["ExampleInstance"], VerificationReport]] = field(default_factory=list)

    @property
    def header(self) -> Dict[str, Any]:
        return {'example': self.name, 'params': {k: str(v) for k, v in sorted(self.parameters.items())}}


def int_param(params: Dict[str, Any], key: str, default: int, minimum: Optional[int] = None) -> int:
    """Reads an integer parameter, accepting ints and decimal strings."""
    raw = params.pop(key, default)
    try:
        value = int(raw)
    except (TypeError, ValueError) as e:
        raise ParameterError(f"Parameter '{key}' must be an integer, got {raw!r}.") from e
    if minimum is not None and value < minimum:
        raise ParameterError(f"Parameter '{key}' must be at least {minimum}, got {value}.")
    return value


def str_param(params: Dict[str, Any], key: str, default: str) -> str:
    return str(params.pop(key, default))


def reject_unknown(name: str, params: Dict[str, Any]):
    if params:
        raise ParameterError(f"Unknown parameter(s) for example '{name}': {', '.join(sorted(params))}.")
