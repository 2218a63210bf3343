import numpy as np
import pytest

from tsadmetrics.core import events_to_series


def make_labels(length, events):
    return events_to_series(events, length)


def make_pred(length, indices):
    out = np.zeros(length, dtype=bool)
    out[list(indices)] = True
    return out


@pytest.fixture
def s1():
    """One long event; an early false positive and one late hit."""
    return make_labels(32, [(17, 26)]), make_pred(32, [8, 24])


@pytest.fixture
def s2():
    """One event hit in the middle, plus a trailing false pair."""
    return make_labels(30, [(7, 19)]), make_pred(30, [13, 14, 24, 25])


@pytest.fixture
def s3():
    """Two short events; two predictions with equal point-wise error but
    different temporal placement."""
    labels = make_labels(38, [(29, 30), (35, 36)])
    pred_a = make_pred(38, [25, 26, 35, 36])
    pred_b = make_pred(38, [29, 30, 34, 35])
    return labels, pred_a, pred_b


@pytest.fixture
def s2_scored():
    """S2 labels with an overlapping, tie-heavy anomaly score."""
    labels = make_labels(30, [(7, 19)])
    score = np.array([0.1 * (i % 7) for i in range(30)]) + labels * 0.3
    return labels, np.round(score, 10)
