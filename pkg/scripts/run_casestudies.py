#!/usr/bin/env python3
"""Regenerate every scenario table and positional-response curve.

Usage: python3 scripts/run_casestudies.py [outdir]
"""

import sys

from tsadmetrics.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "out/casestudies"
    sys.exit(main(["casestudies", "--out", out, "--plot"]))
