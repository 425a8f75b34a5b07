"""Parameter fitting and posterior classification for learned structures."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import Dataset, joint_counts
from .errors import DatasetError, SchemaMismatchError
from .infotheory import LOG_BASE
from .mdl import NetworkStructure


@dataclass(frozen=True)
class FitMeta:
    smoothing: str = "laplace"
    alpha: float = 1.0
    N: int = 0
    log_base: float = LOG_BASE


@dataclass(frozen=True)
class FittedClassifier:
    """A structure plus its conditional probability tables.

    ``cpts[k]`` has shape ``(||C||, p, ||X_k||)`` where ``p`` is the
    cardinality of the augmenting parent of attribute ``k`` (1 if none).
    """

    structure: NetworkStructure
    class_prior: np.ndarray
    cpts: dict[int, np.ndarray]
    fit_meta: FitMeta = field(default_factory=FitMeta)

    @property
    def schema(self):
        return self.structure.schema

    def free_parameters(self) -> int:
        total = self.class_prior.size - 1
        for table in self.cpts.values():
            total += table.shape[0] * table.shape[1] * (table.shape[2] - 1)
        return total


def _normalize_rows(counts: np.ndarray, smoothing: str, alpha: float) -> np.ndarray:
    counts = counts.astype(np.float64)
    if smoothing == "laplace":
        counts = counts + alpha
    elif smoothing != "mle":
        raise ValueError(f"unknown smoothing {smoothing!r}")
    totals = counts.sum(axis=-1, keepdims=True)
    width = counts.shape[-1]
    with np.errstate(invalid="ignore", divide="ignore"):
        probs = np.where(totals > 0, counts / np.where(totals > 0, totals, 1.0), 1.0 / width)
    return probs


def fit_parameters(
    structure: NetworkStructure,
    dataset: Dataset,
    smoothing: str = "laplace",
    alpha: float = 1.0,
) -> FittedClassifier:
    """Estimate the class prior and one CPT per attribute.

    ``mle`` uses relative frequencies (uniform for unsupported rows);
    ``laplace`` adds ``alpha`` to every cell before normalizing. The class
    prior is smoothed the same way.
    """
    if structure.schema != dataset.schema:
        raise SchemaMismatchError("structure and dataset use different schemas")
    if smoothing == "laplace" and not alpha > 0:
        raise ValueError("laplace smoothing needs alpha > 0")
    schema = dataset.schema
    ci = schema.class_index
    prior = _normalize_rows(joint_counts(dataset, (ci,)).counts, smoothing, alpha)
    cpts = {}
    for k, parent in structure.parents().items():
        if parent is None:
            counts = joint_counts(dataset, (ci, k)).counts[:, None, :]
        else:
            counts = joint_counts(dataset, (ci, parent, k)).counts
        cpts[k] = _normalize_rows(counts, smoothing, alpha)
    meta = FitMeta(smoothing, float(alpha) if smoothing == "laplace" else 0.0, dataset.N)
    return FittedClassifier(structure, prior, cpts, meta)


def log_joint(classifier: FittedClassifier, rows: np.ndarray) -> np.ndarray:
    """log P(c, x) for every row and class; ``rows`` are full-width index rows.

    The class column of ``rows`` is ignored.
    """
    rows = np.atleast_2d(rows)
    with np.errstate(divide="ignore"):
        out = np.tile(np.log(classifier.class_prior), (rows.shape[0], 1))
        for k, parent in classifier.structure.parents().items():
            table = np.log(classifier.cpts[k])
            pv = rows[:, parent] if parent is not None else np.zeros(rows.shape[0], dtype=np.int64)
            # table[:, pv, x] -> (n_class, n_rows)
            out += table[:, pv, rows[:, k]].T
    return out


def _posterior(logj: np.ndarray) -> np.ndarray:
    top = logj.max(axis=1, keepdims=True)
    top = np.where(np.isfinite(top), top, 0.0)
    w = np.exp(logj - top)
    total = w.sum(axis=1, keepdims=True)
    if np.any(total == 0):
        raise DatasetError("instance has zero probability under every class")
    return w / total


def predict_rows(classifier: FittedClassifier, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized predict over encoded rows; returns (class indices, posteriors)."""
    post = _posterior(log_joint(classifier, rows))
    # argmax returns the first maximum: ties go to the lowest class index
    return np.argmax(post, axis=1), post


def encode_instance(classifier: FittedClassifier, instance: Sequence[str]) -> np.ndarray:
    schema = classifier.schema
    features = schema.feature_indices
    if len(instance) != len(features):
        raise DatasetError(
            f"instance has {len(instance)} values, expected {len(features)}"
        )
    row = np.zeros(len(schema.attributes), dtype=np.int64)
    for k, label in zip(features, instance):
        row[k] = schema.encode(k, label)
    return row


def predict(classifier: FittedClassifier, instance: Sequence[str]) -> tuple[str, np.ndarray]:
    """Classify one instance given as labels of the non-class attributes."""
    row = encode_instance(classifier, instance)
    idx, post = predict_rows(classifier, row[None, :])
    label = classifier.schema.class_attribute.domain[int(idx[0])]
    return label, post[0]


@dataclass(frozen=True)
class EvaluationReport:
    accuracy: float
    confusion: np.ndarray  # rows: true class, columns: predicted class
    labels: tuple[str, ...]

    @property
    def N(self) -> int:
        return int(self.confusion.sum())


def evaluate(classifier: FittedClassifier, dataset: Dataset) -> EvaluationReport:
    if classifier.schema != dataset.schema:
        raise SchemaMismatchError("classifier and dataset use different schemas")
    truth = dataset.class_column()
    pred, _ = predict_rows(classifier, dataset.rows)
    k = classifier.schema.class_cardinality
    confusion = np.zeros((k, k), dtype=np.int64)
    np.add.at(confusion, (truth, pred), 1)
    accuracy = float(np.trace(confusion)) / dataset.N
    return EvaluationReport(accuracy, confusion, classifier.schema.class_attribute.domain)

