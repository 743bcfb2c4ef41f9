"""Shared corpora for the randomized suites.

Everything is reproducible from the fixed seeds below; failure messages in
the suites echo the offending matrix so a case can be replayed directly.
"""

from __future__ import annotations

import random

import pytest

from moment_fiber import torus

CORPUS_SEED = 20260810

# Hand-picked degenerate shapes that random sampling hits rarely.
SPECIAL_ROWS = [
    [[0]],
    [[1]],
    [[1], [0]],
    [[1], [-1]],
    [[1], [1]],
    [[1], [1], [-2]],
    [[1, 0], [0, 1]],
    [[1, 0], [-1, 0], [0, 1]],
    [[2, 4]],
    [[1, 0], [-1, 0]],
    [[0], [0], [3]],
]


def random_weight_matrix(
    rng: random.Random, max_n: int = 10, max_r: int = 6, max_entry: int = 5
) -> torus.WeightMatrix:
    n = rng.randint(1, max_n)
    r = rng.randint(1, max_r)
    rows = [
        [rng.randint(-max_entry, max_entry) for _ in range(r)]
        for _ in range(n)
    ]
    if rng.random() < 0.15:
        rows[rng.randrange(n)] = [0] * r
    if n >= 2 and rng.random() < 0.15:
        rows[rng.randrange(n)] = list(rows[rng.randrange(n)])
    return torus.WeightMatrix.from_rows(rows)


def build_corpus(count: int, seed: int = CORPUS_SEED) -> list[torus.WeightMatrix]:
    rng = random.Random(seed)
    corpus = [torus.WeightMatrix.from_rows(rows) for rows in SPECIAL_ROWS]
    while len(corpus) < count:
        corpus.append(random_weight_matrix(rng))
    return corpus


@pytest.fixture(scope="session")
def corpus() -> list[torus.WeightMatrix]:
    return build_corpus(500)


@pytest.fixture(scope="session")
def small_corpus() -> list[torus.WeightMatrix]:
    return build_corpus(120)
