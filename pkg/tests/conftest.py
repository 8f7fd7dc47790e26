"""Shared generators and independent brute-force oracles for the test suite.

The oracles here deliberately avoid the library's elimination code paths:
rank is measured by enumerating the row span, dependence by trying all
subsets, so the fast implementations are checked against first principles.
"""

import itertools
import random

import pytest

from czsynth.f2linalg import BitMatrix
from czsynth.graphcore import Graph
from czsynth.intervalwords import DOWord


def span_size_rank(rows, ncols):
    """Rank via |span| = 2^rank; rows are int bit masks (<= ~20 rows)."""
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    size = len(span)
    rank = 0
    while (1 << rank) < size:
        rank += 1
    assert (1 << rank) == size
    return rank


def brute_rank(m: BitMatrix) -> int:
    return span_size_rank(m.data, m.cols)


def brute_dependent_witness(m: BitMatrix):
    """All (v, T) with row v = xor of rows T, v not in T, smallest first."""
    found = []
    for v in range(m.rows):
        others = [i for i in range(m.rows) if i != v]
        for k in range(len(others) + 1):
            for combo in itertools.combinations(others, k):
                acc = 0
                for i in combo:
                    acc ^= m.data[i]
                if acc == m.data[v]:
                    found.append((v, set(combo)))
    return found


def random_graph(n, rng, p=0.5):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(n, rng, p=0.5):
    tree = [(rng.randrange(i), i) for i in range(1, n)]
    extra = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, set(tree) | set(extra))


def random_tree(n, rng):
    return Graph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_word(n, rng):
    letters = [f"v{i:03d}" for i in range(n)] * 2
    rng.shuffle(letters)
    return DOWord(letters)


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n):
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete_graph(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def all_graphs(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[k] for k in range(len(pairs))
                                   if (mask >> k) & 1])


@pytest.fixture
def rng():
    return random.Random(20250808)
