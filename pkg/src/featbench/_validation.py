"""Input validation helpers shared by the estimators and statistics code."""

from __future__ import annotations

import numpy as np


def check_matrix(X, name: str = "X") -> np.ndarray:
    """Coerce to a 2-D float64 array and reject non-finite entries."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={X.ndim}")
    if X.shape[0] == 0:
        raise ValueError(f"{name} has no rows")
    if X.shape[1] == 0:
        raise ValueError(f"{name} has no columns")
    if not np.all(np.isfinite(X)):
        bad = np.argwhere(~np.isfinite(X))[0]
        raise ValueError(f"{name} contains a non-finite value at row {bad[0]}, column {bad[1]}")
    return X


def check_column(x, name: str = "x", min_length: int = 1) -> np.ndarray:
    """Coerce to a 1-D float64 array of finite values."""
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size < min_length:
        raise ValueError(f"{name} must have at least {min_length} values, got {x.size}")
    if not np.all(np.isfinite(x)):
        row = int(np.flatnonzero(~np.isfinite(x))[0])
        raise ValueError(f"{name} contains a non-finite value at row {row}")
    return x


def check_target(y, n_rows: int | None = None) -> np.ndarray:
    """Coerce class labels to a 1-D int64 array of indices starting at 0."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError(f"y must be 1-dimensional, got ndim={y.ndim}")
    if not np.issubdtype(y.dtype, np.integer):
        yf = np.asarray(y, dtype=np.float64)
        if not np.all(yf == np.round(yf)):
            raise ValueError("y must contain integer class indices")
        y = yf.astype(np.int64)
    else:
        y = y.astype(np.int64)
    if y.size and y.min() < 0:
        raise ValueError("class indices must be non-negative")
    if n_rows is not None and y.size != n_rows:
        raise ValueError(f"y has length {y.size}, expected {n_rows}")
    return y


def check_X_y(X, y) -> tuple[np.ndarray, np.ndarray]:
    X = check_matrix(X)
    y = check_target(y, n_rows=X.shape[0])
    return X, y
