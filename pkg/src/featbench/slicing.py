"""Data-space slices from ground-truth-class predicted probabilities.

Every instance lands in exactly one of Worst, Bad, Good, Best.  The 50%
line is fixed (it separates correctly from wrongly classified instances);
the outer two thresholds are user-movable by at most 20 points from their
25/75 defaults.  Each band is closed on its left edge, so p = 0.50 counts
as correctly classified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FIXED_THRESHOLD = 50.0
LOW_RANGE = (5.0, 45.0)
HIGH_RANGE = (55.0, 95.0)

SLICES = ("Worst", "Bad", "Good", "Best")


@dataclass(frozen=True)
class SliceThresholds:
    """Movable low/high percent thresholds around the fixed 50% line."""

    low: float = 25.0
    high: float = 75.0

    def __post_init__(self):
        if not LOW_RANGE[0] <= self.low <= LOW_RANGE[1]:
            raise ValueError(
                f"low threshold {self.low} out of range; must be in [{LOW_RANGE[0]:g}, {LOW_RANGE[1]:g}]"
            )
        if not HIGH_RANGE[0] <= self.high <= HIGH_RANGE[1]:
            raise ValueError(
                f"high threshold {self.high} out of range; must be in [{HIGH_RANGE[0]:g}, {HIGH_RANGE[1]:g}]"
            )

    def to_dict(self) -> dict:
        return {"low": self.low, "fixed": FIXED_THRESHOLD, "high": self.high}


def set_thresholds(low: float, high: float) -> SliceThresholds:
    """Validated replacement thresholds; out-of-bound values are rejected, never clamped."""
    return SliceThresholds(low=float(low), high=float(high))


@dataclass(frozen=True)
class SlicePartition:
    """Per-instance slice assignment plus the resulting counts."""

    assignment: np.ndarray
    counts: dict = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return int(self.assignment.size)

    def mask(self, name: str) -> np.ndarray:
        if name not in SLICES:
            raise ValueError(f"unknown slice {name!r}; expected one of {SLICES}")
        return self.assignment == name

    def to_dict(self) -> dict:
        return {"assignment": self.assignment.tolist(), "counts": dict(self.counts)}


def assign_slices(probabilities, thresholds: SliceThresholds = SliceThresholds()) -> SlicePartition:
    """Partition instances by predicted probability of their ground-truth class."""
    p = np.asarray(probabilities, dtype=np.float64).ravel()
    if p.size and (not np.all(np.isfinite(p)) or p.min() < 0.0 or p.max() > 1.0):
        bad = int(np.argmax(~(np.isfinite(p) & (p >= 0.0) & (p <= 1.0))))
        raise ValueError(f"probability at row {bad} is {p[bad]!r}; must be finite in [0, 1]")
    pct = p * 100.0
    assignment = np.full(p.size, "Good", dtype="<U5")
    assignment[pct < thresholds.low] = "Worst"
    assignment[(pct >= thresholds.low) & (pct < FIXED_THRESHOLD)] = "Bad"
    assignment[pct >= thresholds.high] = "Best"
    counts = {name: int(np.sum(assignment == name)) for name in SLICES}
    return SlicePartition(assignment=assignment, counts=counts)
