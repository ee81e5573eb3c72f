"""
A utility for writing verification results to YAML format.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from dgl_lib.core.report import VerificationReport
from dgl_lib.io.json_codec import DEFAULT_PRECISION, round_floats


def save_report_to_yaml(report: VerificationReport, output_path: str,
                        history: Optional[List[Dict[str, Any]]] = None,
                        precision: int = DEFAULT_PRECISION) -> Path:
    """
    Saves a verification report, and optionally the harness history, to a
    YAML file in block style.

    Args:
        report: The consolidated report.
        output_path: The full path for the output YAML file.
        history: Per-job summary rows from VerificationHarness.
        precision: Decimals kept for floats.
    """
    output_path = Path(output_path)
    logging.info(f"Saving verification report to '{output_path}'...")
    output_path.parent.mkdir(parents=True, exist_ok=True)

    document = {'report': round_floats(report.to_dict(), precision)}
    if history is not None:
        document['history'] = round_floats(history, precision)
    with open(output_path, 'w', encoding='utf-8') as f:
        yaml.safe_dump(document, f, default_flow_style=False, sort_keys=False, allow_unicode=True)
    logging.info("Successfully saved report to YAML.")
    return output_path
