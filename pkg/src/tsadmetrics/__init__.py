"""Evaluation metrics for time-series anomaly detection.

Binary metrics score a thresholded prediction against binary labels;
score metrics consume the raw anomaly score.  `evaluate_metric` runs any
of the twenty registered metrics by id.
"""

from .binary import (
    MetricResult,
    affiliation_f,
    composite_f,
    dtpa_f,
    etaf,
    ls_f,
    nab_score,
    pa_f,
    pak_f,
    pw_f,
    range_f,
    seg_f,
    taf,
    temporal_distance,
    ttol_f,
)
from .config import MetricConfig
from .core import (
    ConfusionCounts,
    PRF,
    adjust_prediction,
    downsample_or,
    extract_events,
    fbeta,
    point_confusion,
    threshold_sweep,
)
from .nonbinary import (
    auc_pr,
    auc_roc,
    best_fbeta,
    patk,
    smooth_labels,
    vus_pr,
    vus_roc,
)
from .registry import BINARY_METRICS, METRICS, SCORE_METRICS, evaluate_metric

__version__ = "0.1.0"
