"""Zone-local distance-based precision and recall.

The time axis is treated as the continuous range [0, n), with point i
occupying the unit interval [i, i+1).  It is partitioned into one zone
per label event (cut midway through each gap), and within each zone the
distance from predictions to the event (and back) is converted into the
probability of beating a uniformly random placement in that zone.
"""

from __future__ import annotations

import numpy as np

from .core import as_binary, extract_events, fbeta


def zones(label_events, length: int) -> list[tuple[float, float]]:
    """One half-open interval per label event, covering [0, length)."""
    cuts = [0.0]
    for (s1, e1), (s2, e2) in zip(label_events, label_events[1:]):
        cuts.append(((e1 + 1) + s2) / 2.0)
    cuts.append(float(length))
    return list(zip(cuts[:-1], cuts[1:]))


def _interval_distance(x: float, a: float, b: float) -> float:
    """Distance from a point to the interval [a, b)."""
    if x < a:
        return a - x
    if x > b:
        return x - b
    return 0.0


def _measure_far_from_interval(d: float, a: float, b: float,
                               z0: float, z1: float) -> float:
    """Length of {x in [z0,z1): dist(x, [a,b)) >= d}."""
    if d <= 0.0:
        return z1 - z0
    left = max(0.0, min(a - d, z1) - z0)
    right = max(0.0, z1 - max(b + d, z0))
    return left + right


def _measure_far_from_point(d: float, y: float, z0: float, z1: float) -> float:
    """Length of {x in [z0,z1): |x - y| >= d}."""
    inside = min(y + d, z1) - max(y - d, z0)
    return (z1 - z0) - max(0.0, inside)


def _integrate(fn, pieces, breakpoints) -> tuple[float, float]:
    """Integrate a piecewise-linear fn over a union of intervals.

    Returns (integral, total length).  `breakpoints` are x-values at
    which fn may kink or jump; between consecutive breakpoints fn is
    linear, so the midpoint rule is exact (and, unlike the trapezoid
    rule, indifferent to jump discontinuities at the cut points).
    """
    total = 0.0
    mass = 0.0
    for lo, hi in pieces:
        if hi <= lo:
            continue
        pts = sorted({lo, hi, *(b for b in breakpoints if lo < b < hi)})
        for x0, x1 in zip(pts[:-1], pts[1:]):
            total += fn(0.5 * (x0 + x1)) * (x1 - x0)
        mass += hi - lo
    return total, mass


def _clip_intervals(intervals, z0, z1):
    out = []
    for a, b in intervals:
        lo, hi = max(a, z0), min(b, z1)
        if hi > lo:
            out.append((lo, hi))
    return out


def zone_precision(event, pred_intervals, zone) -> float | None:
    """Mean beat-the-uniform probability over the predicted mass in the
    zone, or None when the zone holds no prediction."""
    z0, z1 = zone
    a, b = float(event[0]), float(event[1] + 1)
    pieces = _clip_intervals(pred_intervals, z0, z1)
    if not pieces:
        return None
    span = z1 - z0

    def prob(x):
        d = _interval_distance(x, a, b)
        return _measure_far_from_interval(d, a, b, z0, z1) / span

    # prob kinks where x enters/leaves the event and where one side of
    # the far-measure saturates.
    brk = [a, b, a - (z1 - b), b + (a - z0), a - (a - z0), b + (z1 - b)]
    total, mass = _integrate(prob, pieces, brk)
    return total / mass


def zone_recall(event, pred_intervals, zone) -> float:
    """Mean beat-the-uniform probability over the label event mass."""
    z0, z1 = zone
    a, b = float(event[0]), float(event[1] + 1)
    pieces = _clip_intervals(pred_intervals, z0, z1)
    if not pieces:
        return 0.0
    span = z1 - z0

    def dist_to_pred(y):
        return min(_interval_distance(y, lo, hi) for lo, hi in pieces)

    def prob(y):
        return _measure_far_from_point(dist_to_pred(y), y, z0, z1) / span

    brk = set()
    for lo, hi in pieces:
        brk.update((lo, hi))
        # saturation points of the symmetric far-measure: y +- d(y)
        # crosses a zone border when y is midway between the border and
        # the facing edge of the prediction piece.
        for d_anchor in (lo, hi):
            brk.update(((z0 + d_anchor) / 2.0, (z1 + d_anchor) / 2.0))
        # midpoints between prediction pieces switch the nearest piece
    mids = []
    for (lo1, hi1), (lo2, hi2) in zip(pieces[:-1], pieces[1:]):
        mids.append((hi1 + lo2) / 2.0)
    brk.update(mids)
    total, mass = _integrate(prob, [(a, b)], sorted(brk))
    return total / mass


def affiliation_prf(labels, pred, beta: float = 1.0):
    """Zone-averaged precision, recall and f-score."""
    labels = as_binary(labels)
    pred = as_binary(pred)
    if len(labels) != len(pred):
        raise ValueError("length mismatch between labels and prediction")
    label_events = extract_events(labels)
    if not label_events:
        raise ValueError("affiliation undefined without label events")
    pred_intervals = [(float(s), float(e + 1)) for s, e in extract_events(pred)]
    zone_list = zones(label_events, len(labels))

    precisions = []
    recalls = []
    for event, zone in zip(label_events, zone_list):
        p = zone_precision(event, pred_intervals, zone)
        if p is not None:
            precisions.append(p)
        recalls.append(zone_recall(event, pred_intervals, zone))
    precision = float(np.mean(precisions)) if precisions else 0.0
    recall = float(np.mean(recalls))
    return precision, recall, fbeta(precision, recall, beta)
