"""
Command implementations of the workbench.

Commands: build, verify, norm, export, list-examples and suite. Every
command returns a process exit status: 0 pass, 1 verification failure,
2 usage error, 3 capability or coverage error.
"""
import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from dgl_lib.algebra.convolution import ConvolutionElement, convolve, i_norm, involution, require_etale
from dgl_lib.algebra.representation import reduced_norm
from dgl_lib.core.errors import EXIT_FAILURE, EXIT_OK, CoverageError, UsageError, WorkbenchError
from dgl_lib.core.report import VerificationReport
from dgl_lib.core_engine.message_bus import DONE_TOPIC, FINDING_TOPIC, MessageBus, logging_listener
from dgl_lib.core_engine.verification_harness import InstanceJob, VerificationHarness
from dgl_lib.examples.base import ExampleInstance
from dgl_lib.examples.group_case import fault_injection_instance
from dgl_lib.examples.registry import build_example, example_names, parse_params
from dgl_lib.groupoid.export import fragment_to_dot, fragment_to_json
from dgl_lib.groupoid.fragment import FiniteGroupoidFragment, enumerate_fragment
from dgl_lib.groupoid.structure import StructureTag
from dgl_lib.io.json_codec import dump_json, load_element
from dgl_lib.io.yaml_loader import SuiteLoader, load_defaults
from dgl_lib.io.yaml_writer import save_report_to_yaml

FORMATS = ('json', 'dot', 'text')
STRUCTURES = {'G': StructureTag.G, 'Ghat': StructureTag.GHAT}


@dataclass
class RunConfig:
    """
    One command invocation, assembled from the command line over the
    defaults file. The seed determines every sampled test set.
    """
    command: str
    example: Optional[str] = None
    params: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    output: Optional[str] = None
    format: str = 'json'
    suites: Tuple[str, ...] = ('all',)
    samples: int = 16
    tolerance: float = 1e-9
    export_cap: int = 5000
    precision: int = 12
    structure: str = 'G'
    element: Optional[str] = None
    suite_path: Optional[str] = None
    self_test: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace, defaults: Dict[str, Any]) -> "RunConfig":
        def pick(name: str, key: str, fallback):
            value = getattr(args, name, None)
            return value if value is not None else defaults.get(key, fallback)

        seed = getattr(args, 'seed', None)
        if seed is not None and seed < 0:
            raise UsageError(f"--seed must be a non-negative integer, got {seed}.")
        return cls(
            command=args.command,
            example=getattr(args, 'example', None),
            params=parse_params(getattr(args, 'param', None) or []),
            seed=int(pick('seed', 'seed', 0)),
            output=getattr(args, 'output', None),
            format=getattr(args, 'format', None) or 'json',
            suites=tuple(getattr(args, 'suite', None) or defaults.get('suites', ['all'])),
            samples=int(pick('samples', 'samples', 16)),
            tolerance=float(defaults.get('tolerance', 1e-9)),
            export_cap=int(pick('cap', 'export_cap', 5000)),
            precision=int(defaults.get('float_precision', 12)),
            structure=getattr(args, 'structure', None) or 'G',
            element=getattr(args, 'element', None),
            suite_path=getattr(args, 'suite_path', None),
            self_test=bool(getattr(args, 'self_test', False)),
        )


# --- helpers ---------------------------------------------------------------

def _require_example(config: RunConfig) -> ExampleInstance:
    if not config.example:
        raise UsageError(f"Command '{config.command}' needs --example.")
    return build_example(config.example, config.params, seed=config.seed)


def _emit(text: str, config: RunConfig):
    """Writes text to --output, else to stdout."""
    path = config.output
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text if text.endswith("\n") else text + "\n", encoding='utf-8')
    logging.info(f"Wrote '{target}'.")


def _fragment(instance: ExampleInstance, tag: StructureTag) -> FiniteGroupoidFragment:
    hs, ks = instance.fragment_window
    return enumerate_fragment(instance.pair, tag, hs, ks)


def _structure(config: RunConfig) -> StructureTag:
    try:
        return STRUCTURES[config.structure]
    except KeyError as e:
        raise UsageError(f"--structure must be one of {', '.join(STRUCTURES)}.") from e


def _omega_listing(instance: ExampleInstance):
    """(status, [(h, k, h |> k, h <| k)]) over Omega, or over the fragment window of an infinite pair."""
    pair = instance.pair
    if pair.is_finite:
        omega, status = pair.omega, 'exhaustive'
    else:
        omega, status = pair.omega_window(*instance.fragment_window), 'window'
    return status, [(h, k, *pair.actions(h, k)) for h, k in omega]


def instance_to_json(instance: ExampleInstance) -> Dict[str, Any]:
    """The Omega listing of an instance: every arrow with both actions."""
    pair = instance.pair
    ambient = pair.ambient
    status, listing = _omega_listing(instance)
    arrows = []
    for h, k, right, left in listing:
        arrows.append({'h': ambient.to_json(h), 'k': ambient.to_json(k),
                       'h|>k': ambient.to_json(right), 'h<|k': ambient.to_json(left)})
    return {
        'header': instance.header,
        'pair': pair.pair_id,
        'etale': pair.etale,
        'omega-status': status,
        'omega-size': len(arrows),
        'omega': arrows,
    }


def _instance_text(instance: ExampleInstance) -> str:
    status, listing = _omega_listing(instance)
    lines = [f"== {instance.name} ==", f"pair: {instance.pair.pair_id}", f"etale: {instance.pair.etale}",
             f"omega ({status}): {len(listing)} arrows"]
    for h, k, right, left in listing:
        lines.append(f"  ({h}, {k}): h |> k = {right}, h <| k = {left}")
    return "\n".join(lines)


def _render_report(report: VerificationReport, config: RunConfig) -> str:
    if config.format == 'text':
        return report.to_text()
    if config.format == 'json':
        return dump_json(report.to_dict(), config.precision)
    raise UsageError(f"Reports are written as json or text, not {config.format}.")


# --- commands --------------------------------------------------------------

def cmd_list_examples(config: RunConfig) -> int:
    _emit("\n".join(example_names()), config)
    return EXIT_OK


def cmd_build(config: RunConfig) -> int:
    """Builds an instance and writes its Omega listing with both actions."""
    instance = _require_example(config)
    if config.format == 'json':
        _emit(dump_json(instance_to_json(instance), config.precision), config)
    elif config.format == 'text':
        _emit(_instance_text(instance), config)
    else:
        _emit(fragment_to_dot(_fragment(instance, _structure(config))), config)
    logging.info(f"Built '{instance.name}'.")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    """
    Runs the selected suites and always writes the report. With --self-test
    the suites run on a deliberately corrupted group table and must fail.
    """
    bus = MessageBus()
    bus.subscribe(FINDING_TOPIC, logging_listener(logging.WARNING))
    bus.subscribe(DONE_TOPIC, logging_listener(logging.INFO))
    if config.self_test:
        instance, suites = fault_injection_instance(), ('identities', 'axioms')
    else:
        instance, suites = _require_example(config), config.suites
    harness = VerificationHarness({'seed': config.seed, 'samples': config.samples}, bus)
    harness.add_job(InstanceJob(instance, suites, seed=config.seed, samples=config.samples))
    report = harness.run(title=f"verify: {instance.name}")
    _emit(_render_report(report, config), config)
    if config.self_test:
        logging.info(f"Self-test {'detected' if not report.passed else 'missed'} the injected fault.")
    if not report.passed:
        logging.error(f"Verification of '{instance.name}' failed with {report.failures} failures.")
        return EXIT_FAILURE
    return EXIT_OK


def norm_report(f: ConvolutionElement, tolerance: float) -> Dict[str, Any]:
    """
    I-norm, reduced norm and the C*-identity residual of one element.

    Raises:
        CoverageError: if the fragment is a window.
        CapabilityError: if the pair is not étale.
    """
    i = i_norm(f)
    r = reduced_norm(f)
    r_star = reduced_norm(convolve(involution(f), f))
    residual = abs(r_star.value - r.value ** 2)
    return {
        'i-norm': str(i),
        'reduced-norm': r.to_dict(),
        'c-star-residual': residual,
        'reduced-le-i': r.value <= float(i) + tolerance,
        'c-star-identity': residual <= tolerance * max(1.0, r.value ** 2),
    }


def cmd_norm(config: RunConfig) -> int:
    """Norms of the element in --element, or of the unit indicator."""
    instance = _require_example(config)
    fragment = _fragment(instance, StructureTag.G)
    require_etale(fragment)
    if not fragment.is_closed:
        raise CoverageError(f"Norms need a closed fragment; {fragment.fragment_id} is a window.")
    if config.element:
        f = load_element(config.element, fragment)
    else:
        f = ConvolutionElement.unit_element(fragment)
    result = {'header': {**instance.header, 'fragment': fragment.fragment_id}, **norm_report(f, config.tolerance)}
    if config.format == 'text':
        _emit("\n".join(f"{key}: {value}" for key, value in result.items()), config)
    else:
        _emit(dump_json(result, config.precision), config)
    ok = result['reduced-le-i'] and result['c-star-identity']
    if not ok:
        logging.error(f"Norm checks failed for '{instance.name}': {result}")
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_export(config: RunConfig) -> int:
    """
    Raises:
        CoverageError: if the fragment has more arrows than the export cap.
    """
    instance = _require_example(config)
    fragment = _fragment(instance, _structure(config))
    if len(fragment) > config.export_cap:
        raise CoverageError(f"Fragment {fragment.fragment_id} has {len(fragment)} arrows, "
                            f"over the export cap of {config.export_cap}.")
    if config.format == 'dot':
        _emit(fragment_to_dot(fragment), config)
    elif config.format == 'json':
        _emit(dump_json(fragment_to_json(fragment, instance.header), config.precision), config)
    else:
        lines = [f"{fragment.fragment_id} ({fragment.closure_status.value}, {len(fragment)} arrows)"]
        lines.extend(f"  {x}: {fragment.source(x)} -> {fragment.range(x)}" for x in fragment.elements)
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_suite(config: RunConfig) -> int:
    """Runs a YAML suite directory and writes report.yml next to it."""
    if not config.suite_path:
        raise UsageError("Command 'suite' needs a suite directory.")
    suite_path = Path(config.suite_path)
    if not suite_path.is_dir():
        raise UsageError(f"Provided suite path is not a valid directory: {suite_path}")
    bus = MessageBus()
    bus.subscribe(FINDING_TOPIC, logging_listener(logging.WARNING))
    bus.subscribe(DONE_TOPIC, logging_listener(logging.INFO))
    harness = SuiteLoader(str(suite_path)).load(bus)
    report = harness.run(title=f"suite: {suite_path.name}")
    output = config.output or str(suite_path / 'report.yml')
    save_report_to_yaml(report, output, harness.history, config.precision)
    if not report.passed:
        logging.error(f"Suite '{suite_path.name}' failed with {report.failures} failures.")
        return EXIT_FAILURE
    return EXIT_OK


HANDLERS = {
    'build': cmd_build,
    'verify': cmd_verify,
    'norm': cmd_norm,
    'export': cmd_export,
    'list-examples': cmd_list_examples,
    'suite': cmd_suite,
}


# --- argument parsing ------------------------------------------------------

def _add_example_arguments(parser: argparse.ArgumentParser, formats: Sequence[str] = FORMATS):
    parser.add_argument("--example", type=str, help="Registered example name (see list-examples).")
    parser.add_argument("--param", action='append', metavar="KEY=VALUE", help="Example parameter; repeatable.")
    parser.add_argument("--seed", type=int, help="Seed of every sampled test set.")
    parser.add_argument("--output", type=str, help="Output file; stdout when omitted.")
    parser.add_argument("--format", choices=formats, help="Output format.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Build, verify and inspect double groupoids of admissible pairs.")
    parser.add_argument("--verbose", action='store_true', help="Log at DEBUG level.")
    parser.add_argument("--quiet", action='store_true', help="Log warnings and errors only.")
    parser.add_argument("--defaults", type=str, help="Alternative defaults YAML file.")
    sub = parser.add_subparsers(dest='command', required=True)

    build = sub.add_parser('build', help="Build an example and list Omega with both actions.")
    _add_example_arguments(build)
    build.add_argument("--structure", choices=list(STRUCTURES), help="Structure for DOT output.")

    verify = sub.add_parser('verify', help="Run verification suites on an example.")
    _add_example_arguments(verify, ('json', 'text'))
    verify.add_argument("--suite", action='append', help="identities, examples, axioms, algebra or all; repeatable.")
    verify.add_argument("--samples", type=int, help="Random convolution elements per algebra check.")
    verify.add_argument("--self-test", action='store_true', help="Verify a corrupted group table; must exit 1.")

    norm = sub.add_parser('norm', help="I-norm, reduced norm and C*-identity residual of an element.")
    _add_example_arguments(norm, ('json', 'text'))
    norm.add_argument("--element", type=str, help="Convolution element JSON file; unit indicator when omitted.")

    export = sub.add_parser('export', help="Export a fragment as DOT, JSON or text.")
    _add_example_arguments(export)
    export.add_argument("--structure", choices=list(STRUCTURES), help="G or Ghat (default G).")
    export.add_argument("--cap", type=int, help="Largest fragment to export.")

    sub.add_parser('list-examples', help="List registered examples and aliases.")

    suite = sub.add_parser('suite', help="Run a YAML suite directory.")
    suite.add_argument("suite_path", type=str, help="Directory with config.yml and examples.yml.")
    suite.add_argument("--output", type=str, help="YAML report path; <suite>/report.yml when omitted.")
    return parser


def configure_logging(args: argparse.Namespace):
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args)
    try:
        config = RunConfig.from_args(args, load_defaults(args.defaults))
        return HANDLERS[config.command](config)
    except WorkbenchError as e:
        logging.error(f"{type(e).__name__}: {e}")
        return e.exit_code
