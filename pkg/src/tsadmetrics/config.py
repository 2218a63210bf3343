"""Per-metric parameter record with the default values used throughout
the test harness and CLI."""

from __future__ import annotations

from dataclasses import dataclass, field, fields

BIASES = ("flat", "front", "back", "middle")


@dataclass
class MetricConfig:
    beta: float = 1.0         # f-score weighting
    k: int = 2                # detection delay budget
    k_pct: float = 20.0       # required detected portion, percent
    n: int = 2                # downsampling factor
    tau: int = 2              # temporal tolerance
    alpha: float = 0.5        # existence/detection weight
    delta: int = 0            # post-event tolerance region length
    theta: float = 0.5        # detection ratio gate
    theta_p: float = 0.5      # predicted-event precision gate
    theta_r: float = 0.1      # label-event coverage gate
    bias: str = "flat"        # positional weighting of event ranges
    cardinality: float = 1.0  # fragmentation factor (fixed at 1)
    eta: float = 1.0          # distance exponent
    ell_max: int = 4          # maximum label-smoothing tolerance
    k_at: int | None = None   # top-K size; None = number of label anomalies
    nab_tp_weight: float = 1.0
    nab_fp_weight: float = 0.11
    nab_fn_weight: float = 1.0

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if not 0 < self.k_pct <= 100:
            raise ValueError("k_pct must be in (0, 100]")
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.tau < 0:
            raise ValueError("tau must be non-negative")
        if not 0 <= self.alpha <= 1:
            raise ValueError("alpha must be in [0, 1]")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if not 0 < self.theta <= 1:
            raise ValueError("theta must be in (0, 1]")
        if not 0 < self.theta_p <= 1:
            raise ValueError("theta_p must be in (0, 1]")
        if not 0 < self.theta_r <= 1:
            raise ValueError("theta_r must be in (0, 1]")
        if self.bias not in BIASES:
            raise ValueError(f"bias must be one of {BIASES}")
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.ell_max < 0:
            raise ValueError("ell_max must be non-negative")
        if self.k_at is not None and self.k_at < 1:
            raise ValueError("k_at must be a positive integer")

    def replace(self, **overrides) -> "MetricConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(overrides)
        return MetricConfig(**values)
