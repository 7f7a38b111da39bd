"""JSON helpers shared by the session files, exports, and the HTTP API.

All floats are rounded to 12 significant digits before serialization so
golden-file comparisons and replay checks are byte-stable; the rounding is
idempotent, which makes save -> load -> save an identity.
"""

from __future__ import annotations

import json
import math

import numpy as np

SIGNIFICANT_DIGITS = 12


def round_sig(value: float) -> float:
    if not math.isfinite(value):
        return value
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def round_floats(obj):
    """Recursively round floats; numpy scalars and arrays become plain Python."""
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [round_floats(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def canonical_order(obj):
    """Rebuild nested dicts with sorted keys so insertion order stops mattering."""
    if isinstance(obj, dict):
        return {k: canonical_order(obj[k]) for k in sorted(obj)}
    if isinstance(obj, (list, tuple)):
        return [canonical_order(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Stable document serialization for files (sorted keys, trailing newline)."""
    return json.dumps(round_floats(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"
