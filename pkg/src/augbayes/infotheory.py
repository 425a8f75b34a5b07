"""Empirical (maximum-likelihood) information quantities from count tables.

All values are returned in units of ``base`` (natural log by default).
"""
from __future__ import annotations

import math

import numpy as np

from .dataset import ContingencyTable
from .errors import DatasetError

LOG_BASE = math.e


def _as_counts(table, arity: int) -> np.ndarray:
    counts = table.counts if isinstance(table, ContingencyTable) else table
    counts = np.asarray(counts, dtype=np.float64)
    if counts.ndim != arity:
        raise DatasetError(f"expected a {arity}-variable table, got {counts.ndim}")
    if counts.sum() <= 0:
        raise DatasetError("count table has zero total")
    return counts


def _log_scale(base: float) -> float:
    return 1.0 if base == math.e else math.log(base)


def _plogp_ratio(joint: np.ndarray, outer: np.ndarray, total: float) -> float:
    # sum over nonzero cells of n/total * log(n * total / outer); outer > 0 wherever n > 0
    mask = joint > 0
    n = joint[mask]
    return float(np.sum(n * np.log(n * total / outer[mask])) / total)


def entropy(counts, base: float = LOG_BASE) -> float:
    counts = np.asarray(counts, dtype=np.float64).ravel()
    total = counts.sum()
    if total <= 0:
        raise DatasetError("count table has zero total")
    p = counts[counts > 0] / total
    return max(0.0, float(-np.sum(p * np.log(p))) / _log_scale(base))


def mutual_information(table, base: float = LOG_BASE) -> float:
    """I(X;Y) of a two-variable count table."""
    counts = _as_counts(table, 2)
    total = counts.sum()
    px = counts.sum(axis=1, keepdims=True)
    py = counts.sum(axis=0, keepdims=True)
    value = _plogp_ratio(counts, px * py, total)
    return max(0.0, value / _log_scale(base))


def conditional_mutual_information(table, base: float = LOG_BASE) -> float:
    """I(X;Y|C) of a (X, Y, C) count table; the last axis conditions."""
    counts = _as_counts(table, 3)
    total = counts.sum()
    nxc = counts.sum(axis=1, keepdims=True)
    nyc = counts.sum(axis=0, keepdims=True)
    nc = counts.sum(axis=(0, 1), keepdims=True)
    # P(x,y,c) log [P(x,y|c) / (P(x|c) P(y|c))] = n/N log [n * n_c / (n_xc * n_yc)]
    with np.errstate(divide="ignore", invalid="ignore"):
        outer = np.where(nc > 0, nxc * nyc / np.where(nc > 0, nc, 1.0), 0.0)
    value = _plogp_ratio(counts, outer * total, total)
    return max(0.0, value / _log_scale(base))
