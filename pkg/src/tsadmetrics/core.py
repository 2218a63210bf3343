"""Shared primitives: events, confusion counts, f-scores, prediction
adjustment and the all-thresholds sweep.

Everything in here is a pure function over 1-d numpy arrays.  Labels and
predictions are boolean arrays of equal length; scores are finite floats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConfusionCounts",
    "PRF",
    "as_binary",
    "as_score",
    "extract_events",
    "events_to_series",
    "point_confusion",
    "fbeta",
    "prf",
    "adjust_prediction",
    "downsample_or",
    "threshold_sweep",
]


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    fscore: float


def as_binary(values) -> np.ndarray:
    """Validate and convert a 0/1 sequence to a boolean array."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError("binary series must be 1-dimensional")
    if arr.size == 0:
        raise ValueError("empty input")
    if arr.dtype == bool:
        return arr.copy()
    farr = arr.astype(float)
    if not np.all(np.isin(farr, (0.0, 1.0))):
        raise ValueError("binary series must contain only 0 and 1")
    return farr.astype(bool)


def as_score(values) -> np.ndarray:
    """Validate and convert a score sequence to a float array."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("score series must be 1-dimensional")
    if arr.size == 0:
        raise ValueError("empty input")
    if not np.all(np.isfinite(arr)):
        raise ValueError("score series must be finite")
    return arr


def _check_pair(labels, pred):
    labels = as_binary(labels)
    pred = as_binary(pred)
    if len(labels) != len(pred):
        raise ValueError("length mismatch between labels and prediction")
    return labels, pred


def extract_events(series) -> list[tuple[int, int]]:
    """Maximal runs of true flags as inclusive (start, end) pairs."""
    arr = as_binary(series)
    padded = np.diff(np.concatenate(([0], arr.view(np.int8), [0])))
    starts = np.flatnonzero(padded == 1)
    ends = np.flatnonzero(padded == -1) - 1
    return list(zip(starts.tolist(), ends.tolist()))


def events_to_series(events, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=bool)
    for s, e in events:
        if not (0 <= s <= e < length):
            raise ValueError(f"event ({s},{e}) outside series of length {length}")
        out[s : e + 1] = True
    return out


def point_confusion(labels, pred) -> ConfusionCounts:
    labels, pred = _check_pair(labels, pred)
    tp = int(np.sum(labels & pred))
    fp = int(np.sum(~labels & pred))
    fn = int(np.sum(labels & ~pred))
    tn = int(np.sum(~labels & ~pred))
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def fbeta(precision: float, recall: float, beta: float = 1.0) -> float:
    """(1+b^2) P R / (b^2 P + R), or 0 when the denominator vanishes."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    denom = beta * beta * precision + recall
    if denom == 0:
        return 0.0
    return (1 + beta * beta) * precision * recall / denom


def prf(counts: ConfusionCounts, beta: float = 1.0) -> PRF:
    """Precision/recall/f from counts; 0/0 is defined as 0."""
    p = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
    r = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
    return PRF(precision=p, recall=r, fscore=fbeta(p, r, beta))


def adjust_prediction(labels, pred, mode: str = "full", k: int = 2,
                      k_pct: float = 20.0) -> np.ndarray:
    """Expand partially detected label events in the prediction.

    full:     any hit marks the whole event.
    delay:    a hit within the event's first `k` points marks the whole
              event, otherwise the event's points are cleared entirely.
    portion:  the whole event is marked only if at least `k_pct` percent
              of it is predicted; otherwise the raw prediction stands.
    latency:  marked from the first hit to the event end.

    Points outside label events are never modified.
    """
    labels, pred = _check_pair(labels, pred)
    out = pred.copy()
    for s, e in extract_events(labels):
        hits = np.flatnonzero(pred[s : e + 1])
        if mode == "full":
            if hits.size:
                out[s : e + 1] = True
        elif mode == "delay":
            if hits.size and hits[0] < k:
                out[s : e + 1] = True
            else:
                out[s : e + 1] = False
        elif mode == "portion":
            if hits.size * 100.0 >= k_pct * (e - s + 1):
                out[s : e + 1] = True
        elif mode == "latency":
            if hits.size:
                out[s + hits[0] : e + 1] = True
        else:
            raise ValueError(f"unknown adjustment mode: {mode!r}")
    return out


def downsample_or(series, n: int) -> np.ndarray:
    """Block-OR downsampling; the final partial block is kept."""
    arr = as_binary(series)
    if n < 1:
        raise ValueError("downsampling factor must be >= 1")
    if n == 1:
        return arr
    nblocks = -(-len(arr) // n)
    out = np.zeros(nblocks, dtype=bool)
    for i in range(nblocks):
        out[i] = arr[i * n : (i + 1) * n].any()
    return out


def threshold_sweep(score) -> list[tuple[float, np.ndarray]]:
    """All distinct binary predictions reachable by thresholding.

    Points with score strictly greater than the threshold are anomalous.
    Entries run from the all-normal to the all-anomalous prediction; the
    latter is realized with a threshold just below the minimum score.
    """
    arr = as_score(score)
    values = np.unique(arr)[::-1]
    out = [(float(values[0]), np.zeros(len(arr), dtype=bool))]
    for v in values[1:]:
        out.append((float(v), arr > v))
    out.append((float(values[-1]) - 1.0, np.ones(len(arr), dtype=bool)))
    return out
