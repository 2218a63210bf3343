"""Thin in-memory bindings over the tsadmetrics evaluation suite.

One package-level `evaluate` plus one function per metric.  Inputs are
1-d numeric arrays; labels must be exactly 0.0/1.0 (tolerant casting is
rejected to avoid silently smoothing labels).  Results come back as a
plain mapping; all computation happens in the underlying package, and
its error messages are propagated verbatim.
"""

from __future__ import annotations

from functools import partial

import numpy as np

from tsadmetrics import MetricConfig
from tsadmetrics.registry import METRICS, evaluate_metric

__all__ = ["evaluate", "metric_ids"] + sorted(METRICS)

__version__ = "0.1.0"


def metric_ids() -> tuple[str, ...]:
    return tuple(METRICS)


def _as_array(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be 1-dimensional")
    return arr


def evaluate(labels, values, metric: str, params: dict | None = None) -> dict:
    """Run one metric on in-memory arrays.

    `values` is a binary prediction or a real-valued score depending on
    the metric.  `params` maps configuration field names (beta, k, tau,
    ...) to overrides.  Returns {score, precision, recall, direction}.
    """
    if metric not in METRICS:
        raise KeyError(f"unknown metric: {metric!r}")
    labels = _as_array(labels, "labels")
    values = _as_array(values, "values")
    if len(labels) != len(values):
        raise ValueError("length mismatch between labels and values")
    if labels.size and not np.all(np.isin(labels, (0.0, 1.0))):
        raise ValueError("labels must be exactly 0.0 or 1.0")
    config = MetricConfig().replace(**(params or {}))
    result = evaluate_metric(metric, labels, values, config)
    return {
        "score": result.score,
        "precision": result.precision,
        "recall": result.recall,
        "direction": result.direction,
    }


def _bind(metric_name: str):
    def call(labels, values, params: dict | None = None) -> dict:
        return evaluate(labels, values, metric_name, params)
    call.__name__ = metric_name
    call.__qualname__ = metric_name
    call.__doc__ = (f"{METRICS[metric_name].long_name}; see `evaluate` "
                    "for the calling convention.")
    return call


for _name in METRICS:
    globals()[_name] = _bind(_name)
del _name
