"""Parameter counts, MDL scores and per-edge thresholds for augmented naive Bayes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .dataset import Dataset, Schema, joint_counts
from .errors import SchemaMismatchError, StructureError
from .infotheory import LOG_BASE, conditional_mutual_information, mutual_information


@dataclass(frozen=True)
class NetworkStructure:
    """Naive Bayes skeleton plus an augmenting forest.

    ``augmenting_arcs`` holds ``(parent, child)`` schema indices. Class arcs
    are implicit: the class is a parent of every attribute.
    """

    schema: Schema
    augmenting_arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        arcs = tuple(sorted((int(p), int(c)) for p, c in self.augmenting_arcs))
        object.__setattr__(self, "augmenting_arcs", arcs)
        width = len(self.schema.attributes)
        ci = self.schema.class_index
        children = set()
        for p, c in arcs:
            if not (0 <= p < width and 0 <= c < width):
                raise StructureError(f"arc {(p, c)} references an unknown attribute")
            if ci in (p, c):
                raise StructureError(f"arc {(p, c)} touches the class attribute")
            if p == c:
                raise StructureError(f"self-loop on attribute {p}")
            if c in children:
                raise StructureError(f"attribute {c} has more than one augmenting parent")
            children.add(c)
        if not _is_forest(width, [(p, c) for p, c in arcs]):
            raise StructureError("augmenting arcs contain an undirected cycle")

    def parent_of(self, index: int) -> int | None:
        for p, c in self.augmenting_arcs:
            if c == index:
                return p
        return None

    def parents(self) -> dict[int, int | None]:
        """Augmenting parent (or None) of every non-class attribute."""
        out = {k: None for k in self.schema.feature_indices}
        for p, c in self.augmenting_arcs:
            out[c] = p
        return out

    def undirected_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(p, c), max(p, c)) for p, c in self.augmenting_arcs)

    def with_arc(self, parent: int, child: int) -> "NetworkStructure":
        return NetworkStructure(self.schema, self.augmenting_arcs + ((parent, child),))

    def without_arc(self, parent: int, child: int) -> "NetworkStructure":
        arcs = tuple(a for a in self.augmenting_arcs if a != (parent, child))
        return NetworkStructure(self.schema, arcs)


def _is_forest(width: int, edges) -> bool:
    root = list(range(width))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        root[ra] = rb
    return True


@dataclass(frozen=True)
class EdgeScore:
    i: int
    j: int
    cost: float
    threshold: float
    gain: float
    penalty: int


def _log(x: float, base: float) -> float:
    return math.log(x) if base == math.e else math.log(x) / math.log(base)


def attribute_parameter_count(structure: NetworkStructure, index: int) -> int:
    schema = structure.schema
    count = schema.class_cardinality * (schema.cardinality(index) - 1)
    parent = structure.parent_of(index)
    if parent is not None:
        count *= schema.cardinality(parent)
    return count


def parameter_count(structure: NetworkStructure) -> int:
    """|B|: free parameters of the class node plus every attribute node."""
    schema = structure.schema
    total = schema.class_cardinality - 1
    for k in schema.feature_indices:
        total += attribute_parameter_count(structure, k)
    return total


def _check(structure: NetworkStructure, dataset: Dataset) -> None:
    if structure.schema != dataset.schema:
        raise SchemaMismatchError("structure and dataset use different schemas")


def class_information(dataset: Dataset, base: float = LOG_BASE) -> dict[int, float]:
    """I(X_i; C) for every non-class attribute."""
    ci = dataset.schema.class_index
    return {
        k: mutual_information(joint_counts(dataset, (k, ci)), base)
        for k in dataset.schema.feature_indices
    }


def arc_cost(dataset: Dataset, i: int, j: int, base: float = LOG_BASE) -> float:
    """cost(e) = I(X_i; X_j | C)."""
    ci = dataset.schema.class_index
    return conditional_mutual_information(joint_counts(dataset, (i, j, ci)), base)


def mdl_score(structure: NetworkStructure, dataset: Dataset, base: float = LOG_BASE) -> float:
    """Full description length |B| log N / 2 - N sum_i I(X_i; parents(X_i)).

    The information sum is split into the class terms shared by every
    augmented structure and one conditional term per augmenting arc.
    """
    _check(structure, dataset)
    N = dataset.N
    info = sum(class_information(dataset, base).values())
    info += sum(arc_cost(dataset, p, c, base) for p, c in structure.augmenting_arcs)
    return parameter_count(structure) * _log(N, base) / 2 - N * info


def reduced_mdl_score(
    structure: NetworkStructure, dataset: Dataset, base: float = LOG_BASE
) -> float:
    """Score without the structure-independent class terms; diagnostics only."""
    _check(structure, dataset)
    N = dataset.N
    info = sum(arc_cost(dataset, p, c, base) for p, c in structure.augmenting_arcs)
    return parameter_count(structure) * _log(N, base) / 2 - N * info


def _parent_information(
    dataset: Dataset, index: int, parent: int | None, base: float
) -> float:
    # I(X_i; {C} or {X_j, C}) with the parent set flattened into one composite variable
    schema = dataset.schema
    ci = schema.class_index
    if parent is None:
        return mutual_information(joint_counts(dataset, (index, ci)), base)
    counts = joint_counts(dataset, (index, parent, ci)).counts
    flat = counts.reshape(schema.cardinality(index), -1)
    return mutual_information(flat, base)


def mdl_terms(
    structure: NetworkStructure, dataset: Dataset, base: float = LOG_BASE
) -> dict[int, float]:
    """Per-node description lengths |X_i| log N / 2 - N I(X_i; parents(X_i)).

    The class node contributes (||C|| - 1) log N / 2 under its own index.
    The values sum to :func:`mdl_score`.
    """
    _check(structure, dataset)
    schema = dataset.schema
    N = dataset.N
    logn = _log(N, base)
    terms = {schema.class_index: (schema.class_cardinality - 1) * logn / 2}
    for k in schema.feature_indices:
        info = _parent_information(dataset, k, structure.parent_of(k), base)
        terms[k] = attribute_parameter_count(structure, k) * logn / 2 - N * info
    return terms


def edge_penalty(schema: Schema, i: int, j: int) -> int:
    """Extra parameters from one augmenting arc: ||C||(||X_i||-1)(||X_j||-1)."""
    ci = schema.class_index
    if ci in (i, j):
        raise StructureError("augmenting edges cannot involve the class attribute")
    if i == j:
        raise StructureError("edge endpoints must differ")
    return schema.class_cardinality * (schema.cardinality(i) - 1) * (schema.cardinality(j) - 1)


def edge_threshold(schema: Schema, i: int, j: int, N: int, base: float = LOG_BASE) -> float:
    """Minimum cost at which the arc i-j does not increase the MDL score."""
    if N < 1:
        raise ValueError("N must be positive")
    return edge_penalty(schema, i, j) * _log(N, base) / (2 * N)


def edge_gain(
    cost: float, schema: Schema, i: int, j: int, N: int, base: float = LOG_BASE
) -> float:
    """MDL decrease from adding the arc i-j (in either direction)."""
    if N < 1:
        raise ValueError("N must be positive")
    return N * cost - edge_penalty(schema, i, j) * _log(N, base) / 2


def score_edge(dataset: Dataset, i: int, j: int, base: float = LOG_BASE) -> EdgeScore:
    i, j = min(i, j), max(i, j)
    schema, N = dataset.schema, dataset.N
    cost = arc_cost(dataset, i, j, base)
    return EdgeScore(
        i=i,
        j=j,
        cost=cost,
        threshold=edge_threshold(schema, i, j, N, base),
        gain=edge_gain(cost, schema, i, j, N, base),
        penalty=edge_penalty(schema, i, j),
    )


def naive_structure(schema: Schema) -> NetworkStructure:
    return NetworkStructure(schema, ())


def structure_from_edges(
    schema: Schema, edges: Iterable[tuple[int, int]]
) -> NetworkStructure:
    """Orient an undirected forest away from the lowest index of each tree."""
    edges = list(edges)
    if not _is_forest(len(schema.attributes), edges):
        raise StructureError("edges contain an undirected cycle")
    adjacency: dict[int, list[int]] = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    arcs = []
    seen: set[int] = set()
    for root in sorted(adjacency):
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            node = stack.pop()
            for nxt in sorted(adjacency[node]):
                if nxt not in seen:
                    seen.add(nxt)
                    arcs.append((node, nxt))
                    stack.append(nxt)
    return NetworkStructure(schema, tuple(arcs))
