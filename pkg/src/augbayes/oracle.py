"""Exhaustive search over augmenting forests for small attribute sets."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .dataset import Dataset
from .errors import EnumerationCapError
from .infotheory import LOG_BASE
from .learner import learn_structure
from .mdl import mdl_score, structure_from_edges

DEFAULT_CAP = 7
TIE_TOLERANCE = 1e-9


class _RollbackUnionFind:
    """Union-find without path compression so unions can be undone."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.history: list[tuple[int, int, bool]] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        bumped = self.rank[ra] == self.rank[rb]
        self.parent[rb] = ra
        if bumped:
            self.rank[ra] += 1
        self.history.append((ra, rb, bumped))
        return True

    def undo(self) -> None:
        ra, rb, bumped = self.history.pop()
        self.parent[rb] = rb
        if bumped:
            self.rank[ra] -= 1


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("need at least one attribute")
    if cap > DEFAULT_CAP:
        warnings.warn(
            f"enumeration cap raised to {cap}; exhaustive search grows super-exponentially",
            RuntimeWarning,
            stacklevel=3,
        )
    if n > cap:
        raise EnumerationCapError(f"{n} attributes exceeds the enumeration cap of {cap}")


def enumerate_augmenting_forests(
    n: int, cap: int = DEFAULT_CAP
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Yield every acyclic edge set on vertices ``0..n-1`` exactly once.

    The cap is checked eagerly, before iteration starts.
    """
    _check_cap(n, cap)
    return _walk_forests(n)


def _walk_forests(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    edges = list(combinations(range(n), 2))
    uf = _RollbackUnionFind(n)
    chosen: list[tuple[int, int]] = []

    def walk(k: int):
        if k == len(edges):
            yield tuple(chosen)
            return
        yield from walk(k + 1)
        a, b = edges[k]
        if uf.union(a, b):
            chosen.append(edges[k])
            yield from walk(k + 1)
            chosen.pop()
            uf.undo()

    yield from walk(0)


@dataclass
class OptimalityReport:
    optimal_mdl: float
    optimal_arc_sets: list[frozenset[tuple[int, int]]]
    learner_mdl: float
    learner_matches: bool
    structures_examined: int
    learner_edges: frozenset[tuple[int, int]] = frozenset()
    cost_mode_mdl: float = float("nan")
    cost_mode_matches: bool = False
    cost_mode_edges: frozenset[tuple[int, int]] = frozenset()

    @property
    def cost_mode_gap(self) -> float:
        return self.cost_mode_mdl - self.optimal_mdl


def brute_force_optimal(
    dataset: Dataset, cap: int = DEFAULT_CAP, base: float = LOG_BASE
) -> OptimalityReport:
    """Score every augmenting forest and compare the learner against the best.

    Forests are oriented from the lowest index of each tree; orientation
    does not change the score. Arc sets are reported as undirected edges
    over schema indices.
    """
    schema = dataset.schema
    features = schema.feature_indices
    best = float("inf")
    scored: list[tuple[float, frozenset]] = []
    examined = 0
    for local_edges in enumerate_augmenting_forests(len(features), cap):
        edges = [(features[a], features[b]) for a, b in local_edges]
        score = mdl_score(structure_from_edges(schema, edges), dataset, base)
        scored.append((score, frozenset(edges)))
        best = min(best, score)
        examined += 1
    optimal_sets = [e for s, e in scored if s <= best + TIE_TOLERANCE]

    gain_structure = learn_structure(dataset, "abn", "gain", base)
    cost_structure = learn_structure(dataset, "abn", "cost", base)
    gain_mdl = mdl_score(gain_structure, dataset, base)
    cost_mdl = mdl_score(cost_structure, dataset, base)
    return OptimalityReport(
        optimal_mdl=best,
        optimal_arc_sets=optimal_sets,
        learner_mdl=gain_mdl,
        learner_matches=abs(gain_mdl - best) <= TIE_TOLERANCE,
        structures_examined=examined,
        learner_edges=gain_structure.undirected_edges(),
        cost_mode_mdl=cost_mdl,
        cost_mode_matches=abs(cost_mdl - best) <= TIE_TOLERANCE,
        cost_mode_edges=cost_structure.undirected_edges(),
    )
