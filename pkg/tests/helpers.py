"""Synthetic data builders shared by the test modules."""
from __future__ import annotations

import numpy as np

from augbayes.dataset import Attribute, Dataset, Schema


def make_schema(cards, class_card=2, class_pos=0) -> Schema:
    attrs = [Attribute(f"x{k + 1}", tuple(str(v) for v in range(c))) for k, c in enumerate(cards)]
    attrs.insert(class_pos, Attribute("c", tuple(f"k{v}" for v in range(class_card))))
    return Schema(tuple(attrs), class_pos)


def random_dataset(seed, cards, class_card=2, N=200, class_pos=0, link_prob=0.6) -> Dataset:
    """Each attribute copies a function of (random earlier attribute, class)
    with a random strength, otherwise is uniform noise."""
    rng = np.random.default_rng(seed)
    schema = make_schema(cards, class_card, class_pos)
    feats = schema.feature_indices
    rows = np.zeros((N, len(cards) + 1), dtype=np.int64)
    c = rng.integers(class_card, size=N)
    rows[:, class_pos] = c
    for pos, k in enumerate(feats):
        card = cards[pos]
        noise = rng.integers(card, size=N)
        strength = rng.uniform(0.0, 0.95)
        if pos > 0 and rng.random() < link_prob:
            parent = feats[rng.integers(pos)]
            signal = (rows[:, parent] + rng.integers(2) * c) % card
        else:
            signal = (c * rng.integers(card)) % card
        keep = rng.random(N) < strength
        rows[:, k] = np.where(keep, signal, noise)
    return Dataset(schema, rows)


def independent_dataset(seed, cards, class_card=2, N=5000) -> Dataset:
    """Attributes depend on the class only, never on each other."""
    rng = np.random.default_rng(seed)
    schema = make_schema(cards, class_card)
    rows = np.zeros((N, len(cards) + 1), dtype=np.int64)
    c = rng.integers(class_card, size=N)
    rows[:, 0] = c
    for pos, card in enumerate(cards):
        probs = rng.dirichlet(np.ones(card), size=class_card)
        u = rng.random(N)[:, None]
        rows[:, pos + 1] = np.minimum((u >= np.cumsum(probs[c], axis=1)).sum(axis=1), card - 1)
    return Dataset(schema, rows)


def chained_dataset(seed, cards, class_card=2, N=500, flip=0.1) -> Dataset:
    """Every attribute is a noisy copy of one shared latent: all pairs dependent."""
    rng = np.random.default_rng(seed)
    schema = make_schema(cards, class_card)
    rows = np.zeros((N, len(cards) + 1), dtype=np.int64)
    rows[:, 0] = rng.integers(class_card, size=N)
    latent = rng.integers(2, size=N)
    for pos, card in enumerate(cards):
        noisy = np.where(rng.random(N) < flip, rng.integers(card, size=N), latent % card)
        rows[:, pos + 1] = noisy
    return Dataset(schema, rows)


def write_rows_csv(path, header, rows, delimiter=","):
    lines = [delimiter.join(header)] + [delimiter.join(r) for r in rows]
    path.write_text("\n".join(lines) + "\n")
    return path
