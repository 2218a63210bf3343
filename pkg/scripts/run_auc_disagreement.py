#!/usr/bin/env python3
"""Construct and report an instance where the ROC area and the PR area
rank two detectors oppositely.

Usage: python3 scripts/run_auc_disagreement.py
"""

from tsadmetrics.harness import auc_disagreement_demo

if __name__ == "__main__":
    report = auc_disagreement_demo()
    print(f"disagreement: {report['disagreement']}")
    print(f"auc_roc  a={report['auc_roc']['a']:.6f}  "
          f"b={report['auc_roc']['b']:.6f}")
    print(f"auc_pr   a={report['auc_pr']['a']:.6f}  "
          f"b={report['auc_pr']['b']:.6f}")
