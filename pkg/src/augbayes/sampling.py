"""Ancestral sampling from a fitted (or hand-specified) network."""
from __future__ import annotations

import csv
from typing import TextIO

import numpy as np

from .classifier import FittedClassifier
from .dataset import Dataset


def _topological_order(classifier: FittedClassifier) -> list[int]:
    parents = classifier.structure.parents()
    order, placed = [], set()
    while len(order) < len(parents):
        for k in sorted(parents):
            if k in placed:
                continue
            p = parents[k]
            if p is None or p in placed:
                order.append(k)
                placed.add(k)
    return order


def sample(classifier: FittedClassifier, n_rows: int, seed: int) -> Dataset:
    """Draw the class first, then each attribute given its sampled parents."""
    if n_rows < 1:
        raise ValueError("n_rows must be positive")
    rng = np.random.default_rng(seed)
    schema = classifier.schema
    rows = np.zeros((n_rows, len(schema.attributes)), dtype=np.int64)
    ci = schema.class_index
    rows[:, ci] = rng.choice(schema.class_cardinality, size=n_rows, p=classifier.class_prior)
    parents = classifier.structure.parents()
    for k in _topological_order(classifier):
        p = parents[k]
        pv = rows[:, p] if p is not None else np.zeros(n_rows, dtype=np.int64)
        probs = classifier.cpts[k][rows[:, ci], pv]  # (n_rows, ||X_k||)
        cum = np.cumsum(probs, axis=1)
        u = rng.random(n_rows)[:, None]
        draws = (u >= cum).sum(axis=1)
        rows[:, k] = np.minimum(draws, schema.cardinality(k) - 1)
    return Dataset(schema, rows)


def write_csv(dataset: Dataset, fh: TextIO, delimiter: str = ",") -> None:
    schema = dataset.schema
    writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
    writer.writerow(schema.names)
    domains = [a.domain for a in schema.attributes]
    for row in dataset.rows:
        writer.writerow([domains[k][v] for k, v in enumerate(row)])
