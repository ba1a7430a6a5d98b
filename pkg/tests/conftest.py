import random

import networkx as nx
import pytest

from twinwidth.structures import BinaryStructure
from twinwidth.trigraph import ContractionSequence, Trigraph

# seven-vertex example graph, vertices a..g as 0..6
SEVEN_EDGES = [
    (0, 1), (0, 3), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5),
    (2, 4), (2, 5), (3, 4), (3, 6), (4, 6), (5, 6),
]
# e+f -> 7, a+d -> 8, b+ef -> 9, ad+g -> 10, c+bef -> 11, then the last two
SEVEN_PAIRS = [(4, 5), (0, 3), (1, 7), (8, 6), (2, 9), (10, 11)]


def seven_graph():
    return Trigraph.from_graph(7, SEVEN_EDGES)


def seven_sequence():
    return ContractionSequence.from_pairs(seven_graph(), SEVEN_PAIRS)


def atlas(max_n, min_n=1):
    """Non-isomorphic graphs as (n, edges), from the networkx graph atlas."""
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if min_n <= n <= max_n:
            out.append((n, sorted(tuple(sorted(e)) for e in g.edges())))
    return out


def random_graph(n, p, rng):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def random_tree(n, rng):
    return [(rng.randrange(v), v) for v in range(1, n)]


def graph_structure(n, edges):
    return BinaryStructure.graph(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240611)
