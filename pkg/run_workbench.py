# -*- coding: utf-8 -*-

"""
Double Groupoid Workbench Runner

This script provides the command-line interface of the workbench: build an
example pair, verify it, compute norms of convolution elements, export
fragments, or run a suite defined by a directory of YAML files.

Examples:
    python run_workbench.py list-examples
    python run_workbench.py verify --example unital-ring --param n=5 --suite all
    python run_workbench.py export --example unital-ring --param n=5 --format dot --output ring.dot
    python run_workbench.py suite mission/suites/acceptance
"""
import logging
import sys
from pathlib import Path

# Add the project root to the Python path to allow imports from dgl_lib
project_root = Path(__file__).resolve().parent
sys.path.insert(0, str(project_root))

from dgl_lib.cli import main

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

if __name__ == "__main__":
    sys.exit(main())
