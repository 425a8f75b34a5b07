"""MDL-optimal forest-augmented naive Bayes classifiers for discrete data."""

__version__ = "0.1.0"

from .classifier import EvaluationReport, FittedClassifier, evaluate, fit_parameters, predict
from .dataset import ContingencyTable, Dataset, Schema, joint_counts, load_csv
from .infotheory import conditional_mutual_information, mutual_information
from .learner import learn_structure, max_spanning_forest, score_all_pairs
from .mdl import (
    EdgeScore,
    NetworkStructure,
    edge_gain,
    edge_threshold,
    mdl_score,
    parameter_count,
    reduced_mdl_score,
)
from .oracle import OptimalityReport, brute_force_optimal, enumerate_augmenting_forests

__all__ = [
    "ContingencyTable",
    "Dataset",
    "EdgeScore",
    "EvaluationReport",
    "FittedClassifier",
    "NetworkStructure",
    "OptimalityReport",
    "Schema",
    "brute_force_optimal",
    "conditional_mutual_information",
    "edge_gain",
    "edge_threshold",
    "enumerate_augmenting_forests",
    "evaluate",
    "fit_parameters",
    "joint_counts",
    "learn_structure",
    "load_csv",
    "max_spanning_forest",
    "mdl_score",
    "mutual_information",
    "parameter_count",
    "predict",
    "reduced_mdl_score",
    "score_all_pairs",
]
