import math

import numpy as np
import pytest

from augbayes.dataset import Dataset
from augbayes.errors import StructureError
from augbayes.mdl import (
    NetworkStructure,
    arc_cost,
    edge_gain,
    edge_threshold,
    mdl_score,
    mdl_terms,
    parameter_count,
    reduced_mdl_score,
    score_edge,
    structure_from_edges,
)

from helpers import make_schema, random_dataset


def random_structure(rng, schema):
    """Random directed forest: each attribute takes at most one earlier parent."""
    order = list(rng.permutation(schema.feature_indices))
    arcs = []
    for pos, k in enumerate(order):
        if pos and rng.random() < 0.6:
            arcs.append((int(order[rng.integers(pos)]), int(k)))
    return NetworkStructure(schema, arcs)


def components(structure):
    label = {k: k for k in structure.schema.feature_indices}

    def find(x):
        while label[x] != x:
            x = label[x]
        return x

    for p, c in structure.augmenting_arcs:
        label[find(p)] = find(c)
    return find


# --- structure invariants ---

def test_structure_rejects_two_parents():
    schema = make_schema([2, 2, 2])
    with pytest.raises(StructureError, match="more than one"):
        NetworkStructure(schema, [(1, 3), (2, 3)])


def test_structure_rejects_cycles_and_class_arcs():
    schema = make_schema([2, 2, 2])
    with pytest.raises(StructureError):
        NetworkStructure(schema, [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(StructureError, match="class"):
        NetworkStructure(schema, [(0, 1)])
    with pytest.raises(StructureError):
        structure_from_edges(schema, [(1, 2), (2, 3), (1, 3)])


def test_structure_from_edges_roots_lowest_index():
    schema = make_schema([2, 2, 2, 2, 2])
    s = structure_from_edges(schema, [(3, 2), (2, 1), (5, 4)])
    assert set(s.augmenting_arcs) == {(1, 2), (2, 3), (4, 5)}


# --- parameter counts ---

def test_parameter_count_naive():
    assert parameter_count(NetworkStructure(make_schema([2, 2, 2]))) == 7


def test_parameter_count_one_arc():
    assert parameter_count(NetworkStructure(make_schema([2, 2, 2]), [(1, 2)])) == 9


def test_parameter_count_ternary_child():
    schema = make_schema([2, 3])
    naive = parameter_count(NetworkStructure(schema))
    with_arc = parameter_count(NetworkStructure(schema, [(1, 2)]))
    # child moves from 2*2 = 4 to 2*2*2 = 8 parameters
    assert with_arc - naive == 4
    assert with_arc == 1 + 2 + 8


# --- scores ---

def test_mdl_score_with_class_independent_attributes():
    schema = make_schema([2, 2, 2])
    rows = []
    for r in range(100):
        x1 = (r // 2) % 2
        rows.append([r % 2, x1, x1, 1 - x1])
    ds = Dataset(schema, rows)
    expected = 7 * math.log(100) / 2
    assert mdl_score(NetworkStructure(schema), ds) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(16.1181, abs=1e-4)


@pytest.mark.parametrize("seed", range(20))
def test_total_equals_per_node_decomposition(seed):
    rng = np.random.default_rng(seed)
    cards = list(rng.integers(2, 4, size=rng.integers(2, 6)))
    ds = random_dataset(seed, cards, class_card=int(rng.integers(2, 4)), N=int(rng.integers(30, 300)))
    s = random_structure(rng, ds.schema)
    assert abs(sum(mdl_terms(s, ds).values()) - mdl_score(s, ds)) <= 1e-9


@pytest.mark.parametrize("seed", range(20))
def test_full_and_reduced_differences_agree(seed):
    rng = np.random.default_rng(100 + seed)
    ds = random_dataset(seed, [2, 3, 2, 3], class_card=3, N=150)
    a, b = random_structure(rng, ds.schema), random_structure(rng, ds.schema)
    full = mdl_score(a, ds) - mdl_score(b, ds)
    reduced = reduced_mdl_score(a, ds) - reduced_mdl_score(b, ds)
    assert abs(full - reduced) <= 1e-9


# --- threshold and gain ---

def test_threshold_binary_pair():
    schema = make_schema([2, 2])
    assert edge_threshold(schema, 1, 2, 100) == pytest.approx(0.04605170185988092, abs=1e-15)


def test_threshold_ternary_pair():
    schema = make_schema([3, 3])
    assert edge_threshold(schema, 1, 2, 1000) == pytest.approx(0.027631021115928547, abs=1e-15)


def test_threshold_degenerate_cardinality_and_symmetry():
    schema = make_schema([1, 3, 2], class_card=3)
    assert edge_threshold(schema, 1, 2, 50) == 0.0
    assert edge_threshold(schema, 2, 3, 77) == edge_threshold(schema, 3, 2, 77)


def test_threshold_rejects_class():
    with pytest.raises(StructureError):
        edge_threshold(make_schema([2, 2]), 0, 1, 10)
    with pytest.raises(StructureError):
        edge_gain(0.1, make_schema([2, 2]), 2, 0, 10)


def test_gain_at_threshold_is_zero():
    schema = make_schema([3, 2], class_card=3)
    t = edge_threshold(schema, 1, 2, 250)
    assert edge_gain(t, schema, 1, 2, 250) == pytest.approx(0.0, abs=1e-12)


def test_gain_binary_example():
    schema = make_schema([2, 2])
    assert edge_gain(0.1, schema, 1, 2, 100) == pytest.approx(5.394829814011908, abs=1e-12)


def test_gain_with_zero_cost_is_penalty():
    schema = make_schema([3, 2], class_card=2)
    assert edge_gain(0.0, schema, 1, 2, 40) == pytest.approx(-2 * 2 * 1 * math.log(40) / 2)
    assert edge_gain(0.0, schema, 1, 2, 40) < 0


@pytest.mark.parametrize("seed", range(10))
def test_edge_score_invariants(seed):
    ds = random_dataset(seed, [2, 3, 3, 2], class_card=2, N=120)
    feats = ds.schema.feature_indices
    for a in feats:
        for b in feats:
            if a < b:
                e = score_edge(ds, a, b)
                assert e.threshold == pytest.approx(e.penalty * math.log(ds.N) / (2 * ds.N), abs=0)
                assert (e.gain > 0) == (e.cost > e.threshold)


# --- score properties over randomized structures ---

@pytest.mark.parametrize("seed", range(30))
def test_gain_consistency_and_direction_invariance(seed):
    rng = np.random.default_rng(seed)
    cards = list(rng.integers(2, 4, size=5))
    ds = random_dataset(seed, cards, class_card=int(rng.integers(2, 4)), N=int(rng.integers(50, 400)))
    base = random_structure(rng, ds.schema)
    find = components(base)
    parents = base.parents()
    roots = [k for k, p in parents.items() if p is None]
    score = mdl_score(base, ds)
    for i in roots:
        for j in roots:
            if i < j and find(i) != find(j):
                forward = mdl_score(base.with_arc(i, j), ds)
                backward = mdl_score(base.with_arc(j, i), ds)
                assert abs(forward - backward) <= 1e-9
                gain = edge_gain(arc_cost(ds, i, j), ds.schema, i, j, ds.N)
                assert abs((forward - score) + gain) <= 1e-9


@pytest.mark.parametrize("seed", range(30))
def test_removing_sub_threshold_arc_improves_score(seed):
    rng = np.random.default_rng(seed)
    ds = random_dataset(seed, [2, 3, 2, 3, 2], class_card=2, N=200, link_prob=0.3)
    s = random_structure(rng, ds.schema)
    score = mdl_score(s, ds)
    for p, c in s.augmenting_arcs:
        if arc_cost(ds, p, c) < edge_threshold(ds.schema, p, c, ds.N):
            assert mdl_score(s.without_arc(p, c), ds) < score


@pytest.mark.parametrize("seed", range(20))
def test_ranking_sign_is_base_invariant(seed):
    rng = np.random.default_rng(seed)
    ds = random_dataset(seed, [2, 2, 3, 3], class_card=2, N=300)
    a, b = random_structure(rng, ds.schema), random_structure(rng, ds.schema)
    nat = mdl_score(a, ds) - mdl_score(b, ds)
    bits = mdl_score(a, ds, base=2) - mdl_score(b, ds, base=2)
    assert np.sign(nat) == np.sign(bits) or abs(nat) < 1e-9
    assert bits == pytest.approx(nat / math.log(2), rel=1e-9, abs=1e-9)
