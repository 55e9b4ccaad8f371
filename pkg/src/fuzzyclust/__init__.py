"""Fuzzy clustering toolkit with volume-adaptive cluster sizes."""

from .core import (
    ClusterModel,
    ClusterStats,
    Dataset,
    DegenerateCluster,
    FitConfig,
    FitReport,
    InvalidConfig,
    fit,
)
from .datagen import EllipseSpec, ScenarioSpec, builtin_scenario, sample_scenario
from .metrics import adjusted_rand_index, compare, harden, matched_accuracy

__all__ = [
    "ClusterModel",
    "ClusterStats",
    "Dataset",
    "DegenerateCluster",
    "EllipseSpec",
    "FitConfig",
    "FitReport",
    "InvalidConfig",
    "ScenarioSpec",
    "adjusted_rand_index",
    "builtin_scenario",
    "compare",
    "fit",
    "harden",
    "matched_accuracy",
    "sample_scenario",
]

__version__ = "0.1.0"
