"""
Loads workbench defaults and verification suites from YAML files.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from dgl_lib.core.errors import UsageError
from dgl_lib.core_engine.message_bus import MessageBus
from dgl_lib.core_engine.verification_harness import VerificationHarness
from dgl_lib.examples.registry import resolve
from dgl_lib.examples.verify import select_suites

DEFAULTS_PATH = Path(__file__).resolve().parent.parent / 'config' / 'defaults.yml'


def _read_yaml(file_path: Path) -> Optional[Any]:
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            return yaml.safe_load(f)
    except FileNotFoundError:
        logging.error(f"Configuration file not found: {file_path}")
        return None
    except yaml.YAMLError as e:
        logging.error(f"Error parsing YAML file {file_path}: {e}")
        return None


def load_defaults(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Reads the run defaults (seed, samples, export cap, float precision).

    Raises:
        UsageError: if the file is missing or is not a mapping.
    """
    file_path = Path(path) if path else DEFAULTS_PATH
    data = _read_yaml(file_path)
    if not isinstance(data, dict):
        raise UsageError(f"Defaults file {file_path} must contain a mapping.")
    return data


class SuiteLoader:
    """
    Reads a suite directory and schedules its examples on a harness.

    The directory holds config.yml with a 'suite' mapping (seed and
    samples) and examples.yml with a list of entries
    {example, params, checks, samples}; 'checks' lists suite names and
    defaults to all suites, 'samples' overrides the suite's algebra sample
    count for that entry.
    """

    def __init__(self, suite_path: str):
        """
        Initializes the loader with the path to the suite directory.

        Args:
            suite_path: The path to the directory containing config.yml and
                        examples.yml.
        """
        self.suite_path = Path(suite_path)
        self.config = self._load_yaml('config.yml')
        self.examples_config = self._load_yaml('examples.yml')
        self.harness: Optional[VerificationHarness] = None
        logging.info(f"SuiteLoader initialized for suite: {self.suite_path.name}")

    def _load_yaml(self, file_name: str):
        """Loads a single YAML file from the suite directory."""
        return _read_yaml(self.suite_path / file_name)

    @property
    def suite_config(self) -> Dict[str, Any]:
        section = (self.config or {}).get('suite', {})
        if not isinstance(section, dict):
            raise UsageError(f"'suite' in {self.suite_path / 'config.yml'} must be a mapping.")
        return section

    def entries(self) -> List[Dict[str, Any]]:
        """
        Validates examples.yml without building anything.

        Raises:
            UsageError: for a malformed entry, an unknown suite name, or
                UnknownExampleError for an unregistered example.
        """
        if not isinstance(self.examples_config, list):
            raise UsageError(f"{self.suite_path / 'examples.yml'} must contain a list of examples.")
        entries = []
        for i, item in enumerate(self.examples_config):
            if not isinstance(item, dict) or 'example' not in item:
                raise UsageError(f"Entry {i} of examples.yml needs an 'example' key.")
            params = item.get('params') or {}
            if not isinstance(params, dict):
                raise UsageError(f"Entry {i} of examples.yml: 'params' must be a mapping.")
            checks = item.get('checks') or ['all']
            samples = item.get('samples')
            if samples is not None and (not isinstance(samples, int) or isinstance(samples, bool) or samples < 1):
                raise UsageError(f"Entry {i} of examples.yml: 'samples' must be a positive integer.")
            resolve(str(item['example']))
            entries.append({'example': str(item['example']), 'params': params,
                            'checks': list(select_suites(checks)), 'samples': samples})
        return entries

    def load(self, message_bus: Optional[MessageBus] = None) -> VerificationHarness:
        """
        Builds the harness with one job per entry.

        Returns:
            A VerificationHarness ready to run.
        """
        if self.config is None or self.examples_config is None:
            raise UsageError("One or more suite files failed to load. Cannot build the suite.")
        entries = self.entries()
        self.harness = VerificationHarness(self.suite_config, message_bus)
        for entry in entries:
            self.harness.add_example(entry['example'], entry['params'], entry['checks'], entry['samples'])
        logging.info(f"Suite '{self.suite_path.name}' loaded with {len(entries)} jobs.")
        return self.harness
