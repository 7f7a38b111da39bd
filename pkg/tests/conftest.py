import numpy as np
import pytest

from featbench.dataset import from_arrays
from featbench.model import HyperParams, SearchBudget
from featbench.session import SessionConfig

DATA_DIR = __file__.rsplit("/", 1)[0] + "/data"

WINE_CSV = f"{DATA_DIR}/wine_red.csv"
WINE_REMAP = {
    "3": "inferior", "4": "inferior",
    "5": "fine", "6": "fine",
    "7": "superior", "8": "superior",
}

# small but learnable hyperparameters so unit tests stay fast
FAST_PARAMS = HyperParams(n_trees=15, learning_rate=0.2, max_depth=6, subsample=1.0, colsample=1.0)
FAST_BUDGET = SearchBudget(iterations=2, folds=3, rng_seed=0)


def write_fixture_csv(path, seed=0, n=60):
    """Four-column binary-label CSV with one log-friendly positive feature."""
    rng = np.random.default_rng(seed)
    f1 = np.abs(rng.normal(size=n)) + 0.5  # positive, log-friendly
    f2 = rng.normal(size=n)
    f3 = rng.normal(size=n)
    f4 = rng.normal(size=n)  # noise
    y = np.where(f1 + f2 > 0.8, "hi", "lo")
    lines = ["f1,f2,f3,f4,label"]
    for i in range(n):
        lines.append(f"{f1[i]:.9g},{f2[i]:.9g},{f3[i]:.9g},{f4[i]:.9g},{y[i]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    counts = {v: int((y == v).sum()) for v in ("hi", "lo")}
    assert min(counts.values()) >= 10
    return str(path)


def make_config(csv_path, **overrides):
    kw = dict(
        csv_path=csv_path,
        target_column="label",
        iterations=2,
        folds=3,
        rng_seed=0,
    )
    kw.update(overrides)
    return SessionConfig(**kw)


def toy_dataset(seed=0, n=120, informative=2, noise=2, classes=3):
    """Seeded dataset where the first `informative` columns carry the signal."""
    rng = np.random.default_rng(seed)
    f = informative + noise
    X = rng.normal(size=(n, f))
    latent = X[:, :informative].sum(axis=1) + 0.3 * rng.normal(size=n)
    edges = np.quantile(latent, np.linspace(0, 1, classes + 1)[1:-1])
    y = np.searchsorted(edges, latent)
    names = [f"s{i}" if i < informative else f"n{i}" for i in range(f)]
    return from_arrays(X, y, names, [f"c{k}" for k in range(classes)])


@pytest.fixture
def toy():
    return toy_dataset()
