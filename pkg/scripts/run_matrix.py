#!/usr/bin/env python3
"""Derive the metric property matrix and print any disagreements.

Usage: python3 scripts/run_matrix.py [outdir]
"""

import sys

from tsadmetrics.cli import main
from tsadmetrics.harness import property_matrix

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "out/matrix"
    code = main(["matrix", "--out", out])
    for cell in property_matrix().failures():
        print(f"FAIL {cell.metric}.{cell.prop}: expected {cell.expected}, "
              f"derived {cell.derived}")
    sys.exit(code)
