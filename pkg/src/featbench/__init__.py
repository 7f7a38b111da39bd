"""Interactive feature-engineering workbench for tabular classification.

Slice the data space by predicted probability, inspect per-slice
statistics, score features with five selection techniques, transform and
combine columns, and track whether each step actually improved the
cross-validated model.
"""

from .dataset import ClassRemap, Dataset, DatasetError, FeatureDescriptor, from_arrays, load_csv
from .engineering import (
    CATALOG,
    GenerationCandidate,
    Transform,
    TransformError,
    adopt_candidate,
    apply_transform,
    generate_candidates,
)
from .gbdt import BoostedTreesClassifier
from .linear import LogisticRegressionGD, train_logreg
from .model import (
    HyperParams,
    ModelReport,
    SearchBudget,
    cross_validate,
    search_hyperparams,
    train_gbdt,
    weighted_metrics,
)
from .selection import ImportanceTable, build_table
from .session import Action, BestSoFar, Session, SessionConfig, SessionError, combined_score, load_session
from .slicing import SlicePartition, SliceThresholds, assign_slices, set_thresholds

__version__ = "1.0.0"

__all__ = [
    "Action",
    "BestSoFar",
    "BoostedTreesClassifier",
    "CATALOG",
    "ClassRemap",
    "Dataset",
    "DatasetError",
    "FeatureDescriptor",
    "GenerationCandidate",
    "HyperParams",
    "ImportanceTable",
    "LogisticRegressionGD",
    "ModelReport",
    "SearchBudget",
    "Session",
    "SessionConfig",
    "SessionError",
    "SlicePartition",
    "SliceThresholds",
    "Transform",
    "TransformError",
    "adopt_candidate",
    "apply_transform",
    "assign_slices",
    "build_table",
    "combined_score",
    "cross_validate",
    "from_arrays",
    "generate_candidates",
    "load_csv",
    "load_session",
    "search_hyperparams",
    "set_thresholds",
    "train_gbdt",
    "train_logreg",
    "weighted_metrics",
]
