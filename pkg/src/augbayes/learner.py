"""Structure learning: pairwise scoring, threshold filtering, Kruskal forest."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dataset import Dataset
from .infotheory import LOG_BASE
from .mdl import EdgeScore, NetworkStructure, score_edge, structure_from_edges

MODES = ("naive", "tan", "abn")
WEIGHT_MODES = ("cost", "gain")


class UnionFind:
    """Disjoint sets over arbitrary hashable items, union by size."""

    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in self.parent}

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1
            return x
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class WeightedPairGraph:
    vertices: tuple[int, ...]
    edges: tuple[EdgeScore, ...]
    weight_mode: str = "cost"

    @property
    def n(self) -> int:
        return len(self.vertices)

    def weight(self, edge: EdgeScore) -> float:
        return edge.cost if self.weight_mode == "cost" else edge.gain

    def eligible(self) -> "WeightedPairGraph":
        """Drop edges whose cost is below their own threshold."""
        kept = tuple(e for e in self.edges if e.cost >= e.threshold)
        return WeightedPairGraph(self.vertices, kept, self.weight_mode)


def score_all_pairs(
    dataset: Dataset, weight_mode: str = "cost", base: float = LOG_BASE
) -> WeightedPairGraph:
    """Annotate every attribute pair with cost, threshold and gain."""
    if weight_mode not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    features = dataset.schema.feature_indices
    edges = tuple(
        score_edge(dataset, i, j, base)
        for a, i in enumerate(features)
        for j in features[a + 1:]
    )
    return WeightedPairGraph(tuple(features), edges, weight_mode)


def max_spanning_forest(graph: WeightedPairGraph) -> list[tuple[int, int]]:
    """Kruskal on all edges of ``graph``: one maximum spanning tree per component.

    Ties are broken by ascending ``(i, j)``.
    """
    order = sorted(graph.edges, key=lambda e: (-graph.weight(e), e.i, e.j))
    uf = UnionFind(graph.vertices)
    chosen = []
    for e in order:
        if uf.union(e.i, e.j):
            chosen.append((e.i, e.j))
    return chosen


def learn_structure(
    dataset: Dataset,
    mode: str = "abn",
    weight_mode: str = "cost",
    base: float = LOG_BASE,
) -> NetworkStructure:
    """Learn a naive Bayes, TAN or forest-augmented structure.

    In ``abn`` mode edges with cost below their threshold are removed first;
    Kruskal then runs on the rest with either raw cost or MDL gain as the
    weight. ``tan`` always uses cost and keeps every edge. Each tree is
    rooted at its lowest schema index with arcs pointing away from it.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if weight_mode not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    schema = dataset.schema
    if mode == "naive":
        return NetworkStructure(schema, ())
    if mode == "tan":
        graph = score_all_pairs(dataset, "cost", base)
    else:
        graph = score_all_pairs(dataset, weight_mode, base).eligible()
    return structure_from_edges(schema, max_spanning_forest(graph))
