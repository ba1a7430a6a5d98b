import itertools
import math

import pytest

from twinwidth.fo.formula import brute_force_check, parse_formula
from twinwidth.fo.mtree import (
    Coder,
    Node,
    PartitionContext,
    codes,
    complete_tree,
    copy_tree,
    depth,
    is_reduct,
    isomorphic,
    minimax_eval,
    path_tree,
    pruned_shuffle,
    reduce,
    restrict_to_root,
    same_tree,
    sequence_graph,
    sg_radius,
    shuffle,
    size,
    tuples,
    walk,
)
from twinwidth.structures import BinaryStructure

from conftest import graph_structure, random_graph
from oracles import (
    all_tuples,
    check_swap,
    connected_rooted,
    is_code_preserving_embedding,
    red_graph,
    set_code,
    siblings_equivalent,
    subtree_iso,
)


def random_subtree(T, rng, keep=0.6):
    """Random parent-closed subtree whose leaves all sit at full depth."""
    ell = depth(T)

    def rec(node, d):
        if d == ell:
            return Node(node.vertex, [], node.origin, node.id)
        kids = [rec(ch, d + 1) for ch in node.children if rng.random() < keep]
        kids = [k for k in kids if k is not None]
        if not kids:
            return None
        return Node(node.vertex, kids, node.origin, node.id)

    while True:
        out = rec(T, 0)
        if out is not None:
            return out


def test_path_and_complete_trees():
    P = path_tree(3, 4)
    assert tuples(P) == [(), (3,), (3, 3), (3, 3, 3), (3, 3, 3, 3)]
    T = complete_tree(range(3), 3)
    assert size(T) == 1 + 3 + 9 + 27 and depth(T) == 3
    assert sorted(tuples(T)) == sorted(all_tuples(3, 3))
    C = copy_tree(T)
    assert same_tree(C, T) and C is not T


def test_triangle_reduct():
    K3 = graph_structure(3, [(0, 1), (0, 2), (1, 2)])
    R = reduce(complete_tree(range(3), 2), Coder(K3))
    assert len(R.children) == 1
    assert len(R.children[0].children) == 2
    assert is_reduct(R, Coder(K3))


def test_reduct_idempotent_and_embedded(rng):
    for _ in range(20):
        n = rng.randint(1, 5)
        S = graph_structure(n, random_graph(n, 0.5, rng))
        T = random_subtree(complete_tree(range(n), 3), rng)
        coder = Coder(S)
        R = reduce(T, coder)
        assert is_reduct(R, coder)
        assert same_tree(reduce(R, coder), R)
        assert is_code_preserving_embedding(R, T, S)
        assert isomorphic(R, reduce(copy_tree(T), Coder(S)), coder)


def _sibling_pairs(T):
    for node, t in walk(T):
        for x, y in itertools.combinations(node.children, 2):
            yield x, y, t


def test_codes_match_exhaustive_equivalence(rng):
    """Equal sibling codes exactly when an exhaustive search finds a swap."""
    seen_equal = seen_diff = 0
    for _ in range(25):
        # few vertex types, so that many siblings are twins
        n = rng.randint(1, 5)
        kind = [rng.randrange(2) for _ in range(n)]
        arc = {(a, b): rng.random() < 0.5 for a in range(2) for b in range(2)}
        S = BinaryStructure(
            n,
            {"E": {(u, v) for u in range(n) for v in range(n) if u != v and arc[kind[u], kind[v]]}},
            {"U": {v for v in range(n) if kind[v]}},
        )
        parts = [rng.randrange(2) for _ in range(n)]
        for part_of in (None, parts.__getitem__):
            T = random_subtree(complete_tree(range(n), 3), rng, 0.7)
            c = codes(T, Coder(S, part_of))
            for x, y, anc in _sibling_pairs(T):
                equal = c[x.id] == c[y.id]
                assert equal == siblings_equivalent(S, x, y, anc, part_of)
                if equal:
                    seen_equal += 1
                    f = subtree_iso(S, x, y, anc, anc, part_of)
                    assert check_swap(S, x, y, anc, f, part_of)
                else:
                    seen_diff += 1
    assert seen_equal > 10 and seen_diff > 10


def test_reduct_size_independent_of_n():
    sizes = set()
    for n in range(3, 8):
        Kn = graph_structure(n, itertools.combinations(range(n), 2))
        sizes.add(size(reduce(complete_tree(range(n), 3), Coder(Kn))))
    assert len(sizes) == 1


def test_minimax_invariance(rng):
    for _ in range(30):
        n = rng.randint(1, 5)
        S = graph_structure(n, random_graph(n, 0.5, rng))
        phi = parse_formula(
            rng.choice(
                [
                    "A x E y E(x,y)",
                    "E x A y (x=y | E(x,y))",
                    "A x A y E z (E(x,z) & !E(y,z) | x=y)",
                    "E x E y E z (E(x,y) & E(y,z) & E(x,z))",
                ]
            )
        )
        T = complete_tree(range(n), phi.length)
        want = brute_force_check(S, phi)
        assert minimax_eval(T, phi, S) == want
        assert minimax_eval(reduce(T, Coder(S)), phi, S) == want
    with pytest.raises(ValueError):
        minimax_eval(path_tree(0, 1), parse_formula("A x A y x=y"), graph_structure(1, []))


def test_shuffle_of_paths_is_complete_tree():
    for V in ([0], [0, 1], [0, 1, 2]):
        for ell in (1, 2, 3):
            T = shuffle([path_tree(v, ell) for v in V], ell)
            assert sorted(tuples(T)) == sorted(tuples(complete_tree(V, ell)))


def test_shuffle_interleaving_count():
    for a, b in ((1, 1), (2, 3), (3, 3)):
        T = shuffle([path_tree(0, a), path_tree(1, b)], a + b)
        top = [t for t in tuples(T) if len(t) == a + b]
        assert len(top) == math.comb(a + b, a)
        assert all(t.count(0) == a for t in top)


def test_union_shuffle():
    for A, B in (([0], [1]), ([0, 1], [2]), ([0], [1, 2])):
        for ell in (1, 2, 3):
            T = shuffle([complete_tree(A, ell), complete_tree(B, ell)], ell)
            assert sorted(tuples(T)) == sorted(tuples(complete_tree(A + B, ell)))


def test_shuffle_records_origin():
    T = shuffle([path_tree(0, 2), path_tree(1, 2)], 2)
    for node, _ in walk(T):
        if node.origin is not None:
            k, _ = node.origin
            assert node.vertex == k


# red graph on parts 1..15
PARTS_RED = [(1, 2), (2, 3), (8, 6), (6, 3), (8, 9), (9, 7), (7, 6), (12, 15), (12, 11),
            (7, 4), (10, 14), (4, 10)]


def parts_context():
    nb = {p: set() for p in range(1, 16)}
    for a, b in PARTS_RED:
        nb[a].add(b)
        nb[b].add(a)
    return PartitionContext(lambda v: v, nb.__getitem__, sg_radius(5)), nb


def test_fifteen_part_sequence_graph():
    ctx, nb = parts_context()
    tup = (8, 3, 8, 1, 9)
    view = sequence_graph(tup, ctx, 5)
    assert len(view.components) == 1 and set(view.local_roots) == {8}
    assert connected_rooted(tup, {p: p for p in nb}, nb, 5) == (True, 8)


def _random_setup(rng, n, ell):
    edges = random_graph(n, rng.random(), rng)
    S = graph_structure(n, edges)
    labels = [rng.randrange(max(1, n - 1)) for _ in range(n)]
    parts = [[v for v in range(n) if labels[v] == k] for k in set(labels)]
    ctx = PartitionContext.from_parts(S, parts, ell)
    index = {v: i for i, p in enumerate(parts) for v in p}
    red = red_graph(n, edges, parts)
    return S, parts, ctx, index, red


def test_sequence_graph_against_oracle(rng):
    for _ in range(40):
        n, ell = rng.randint(2, 7), rng.randint(1, 4)
        S, parts, ctx, index, red = _random_setup(rng, n, ell)
        for _ in range(10):
            tup = tuple(rng.randrange(n) for _ in range(rng.randint(1, ell)))
            view = sequence_graph(tup, ctx, ell)
            connected, first = connected_rooted(tup, index, red, ell)
            assert (len(view.components) == 1) == connected
            assert view.local_roots[0] == first
            # earlier neighbours of every entry are pairwise adjacent
            edges = set(view.edges)
            for k in range(len(tup)):
                back = [j for j in range(k) if (j, k) in edges]
                assert all((a, b) in edges for a, b in itertools.combinations(back, 2))
            # local root of each entry is the part of the least index of its component
            for comp in view.components:
                for k in comp:
                    assert view.roots[k] == min(comp)


def test_restrict_and_pruned_shuffle_reconstruct(rng):
    for _ in range(25):
        n, ell = rng.randint(1, 4), rng.randint(1, 3)
        S, parts, ctx, index, red = _random_setup(rng, n, ell)
        full = complete_tree(range(n), ell)
        rooted = []
        for X in range(len(parts)):
            TX = restrict_to_root(full, X, ctx, ell)
            want = [
                t
                for t in all_tuples(n, ell)
                if not t or connected_rooted(t, index, red, ell) == (True, X)
            ]
            assert sorted(tuples(TX)) == sorted(want)
            rooted.append((X, TX))
        P = pruned_shuffle(rooted, ell, ctx)
        assert sorted(tuples(P)) == sorted(tuples(full))
    with pytest.raises(ValueError):
        pruned_shuffle([(0, path_tree(0, 1)), (0, path_tree(0, 1))], 1, ctx)


def test_restriction_of_reduction(rng):
    for _ in range(25):
        n, ell = rng.randint(1, 5), rng.randint(1, 3)
        S, parts, ctx, index, red = _random_setup(rng, n, ell)
        part_of = index.__getitem__
        T = complete_tree(range(n), ell)
        R = reduce(T, Coder(S, part_of))
        for X in range(len(parts)):
            small = restrict_to_root(R, X, ctx, ell)
            big = restrict_to_root(T, X, ctx, ell)
            assert is_code_preserving_embedding(small, big, S, part_of)
            assert set_code(small, S, part_of) == set_code(big, S, part_of)
