"""Sigmoid-weighted detection scoring with false-positive penalties.

Each label event rewards only its earliest hit, scaled by how early the
hit falls within the event; false positives are penalized by how far
past the most recent event they occur; missed events cost a fixed
penalty.  The raw sum is normalized so that no detection maps to 0 and
hitting every event at its first point with no false positives maps to
100.
"""

from __future__ import annotations

import math

from .core import as_binary, extract_events


def scaled_sigmoid(x: float) -> float:
    """Maps relative position to (-1, 1); -1 at x=-inf, 0 at x=0."""
    if x > 3.0:
        return -1.0
    return 2.0 / (1.0 + math.exp(5.0 * x)) - 1.0


def _raw_score(label_events, pred, tp_weight, fp_weight, fn_weight):
    total = 0.0
    for s, e in label_events:
        width = e - s + 1
        hits = [i for i in range(s, e + 1) if pred[i]]
        if hits:
            total += tp_weight * scaled_sigmoid((hits[0] - e) / width)
        else:
            total -= fn_weight
    for i in range(len(pred)):
        if not pred[i]:
            continue
        preceding = [ev for ev in label_events if ev[0] <= i]
        if preceding and preceding[-1][1] >= i:
            continue  # inside an event, not a false positive
        if preceding:
            s, e = preceding[-1]
            total += fp_weight * scaled_sigmoid((i - e) / (e - s + 1))
        else:
            total -= fp_weight
    return total


def nab_raw_and_bounds(labels, pred, tp_weight=1.0, fp_weight=0.11,
                       fn_weight=1.0):
    labels = as_binary(labels)
    pred = as_binary(pred)
    if len(labels) != len(pred):
        raise ValueError("length mismatch between labels and prediction")
    label_events = extract_events(labels)
    if any(e == s for s, e in label_events):
        raise ValueError("NAB undefined for point anomalies")
    if not label_events:
        raise ValueError("NAB requires at least one label event")
    raw = _raw_score(label_events, pred, tp_weight, fp_weight, fn_weight)
    null = -fn_weight * len(label_events)
    perfect = sum(
        tp_weight * scaled_sigmoid((s - e) / (e - s + 1))
        for s, e in label_events
    )
    return raw, null, perfect


def nab_score(labels, pred, tp_weight=1.0, fp_weight=0.11,
              fn_weight=1.0) -> float:
    raw, null, perfect = nab_raw_and_bounds(
        labels, pred, tp_weight, fp_weight, fn_weight
    )
    return 100.0 * (raw - null) / (perfect - null)
