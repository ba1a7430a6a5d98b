import itertools

import pytest

from twinwidth.matrix import (
    Division,
    division_mixed_value,
    encode_adjacency,
    is_mixed_minor,
    mixed_value,
    normalize_pair,
    refinement_factor,
    refines,
)
from twinwidth.pipeline import (
    PipelineStuck,
    coarsening_to_contractions,
    division_error,
    division_sequence,
    matrix_pipeline,
    merge_tree_order,
    refine_to_partition_sequence,
    replay_matrix_contractions,
    symmetric_sequence_from_order,
    threshold_schedule,
    twin_ordered_divisions,
    twin_ordered_is_mixed_free,
)
from twinwidth.search import exact_twinwidth
from twinwidth.structures import BinaryStructure
from twinwidth.trigraph import ContractionSequence, Trigraph, verify_sequence

from conftest import atlas
from gen import blowup, random_matrix, staircase
from oracles import error_value_naive, mixed_minor_exists, mixed_value_naive


def _one_fusion(D, E):
    """E arises from D by fusing one pair of adjacent parts on one side."""
    for a, b in ((D.rows, E.rows), (D.cols, E.cols)):
        if a == b:
            continue
        if len(b) != len(a) - 1:
            return False
        return any(b == a[:i] + ((a[i][0], a[i + 1][1]),) + a[i + 2 :] for i in range(len(a) - 1))
    return False


def test_division_sequence_shape(rng):
    for _ in range(30):
        M = random_matrix(rng.randint(1, 9), rng.randint(1, 9), rng)
        res = division_sequence(M, 1, threshold=10**6)
        assert res.ok
        assert res.divisions[0] == Division.finest(len(M), len(M[0]))
        assert res.divisions[-1] == Division.coarsest(len(M), len(M[0]))
        for D, E in zip(res.divisions, res.divisions[1:]):
            assert _one_fusion(D, E)
        assert res.values == [division_mixed_value(M, D) for D in res.divisions]


def test_division_sequence_respects_threshold(rng):
    for _ in range(30):
        M = staircase(rng.randint(2, 10), rng.randint(2, 10), rng)
        res = division_sequence(M, 2, threshold=3)
        if res.ok:
            assert max(res.values) <= 3


def test_stuck_result_carries_a_real_witness():
    I = [[int(i == j) for j in range(6)] for i in range(6)]
    # a permutation matrix with a 2-mixed minor but no 3-mixed minor
    P = [[int(j == (2 * i) % 7) for j in range(7)] for i in range(7)]
    assert mixed_minor_exists(P, 2) and not mixed_minor_exists(P, 3)
    res = division_sequence(P, 2, threshold=0)
    assert not res.ok and res.stuck is not None
    assert res.witness is not None and is_mixed_minor(P, res.witness)
    assert division_sequence(I, 1, threshold=10).ok


def test_mixed_value_fusion_never_increases(rng):
    for _ in range(200):
        n, m = rng.randint(2, 10), rng.randint(1, 10)
        M = random_matrix(n, m, rng, rng.randint(2, 3))
        cuts = sorted(rng.sample(range(1, n), rng.randint(1, n - 1)))
        R = Division.from_cuts(n, m, cuts, ()).rows
        a = rng.randrange(m)
        C = (a, rng.randint(a + 1, m))
        i = rng.randrange(len(R) - 1)
        fused = R[:i] + ((R[i][0], R[i + 1][1]),) + R[i + 2 :]
        before = mixed_value(M, C, R, "col").value
        after = mixed_value(M, C, fused, "col").value
        assert after <= before
        assert before == mixed_value_naive(M, C, R, "col")


def test_refinement_chain(rng):
    for _ in range(20):
        M = blowup(rng.randint(2, 10), rng.randint(2, 10), 3, rng)
        res = division_sequence(M, 2, threshold=4)
        if not res.ok:
            continue
        pairs = refine_to_partition_sequence(res.divisions, M)
        for D, P in zip(res.divisions, pairs):
            assert refines(P, D.to_pair())
        for P, Q in zip(pairs, pairs[1:]):
            assert refines(P, Q)


def test_coarsening_bound_and_replay(rng):
    done = 0
    while done < 25:
        n, m = rng.randint(2, 10), rng.randint(2, 10)
        M = staircase(n, m, rng) if done % 2 else blowup(n, m, 3, rng)
        res = matrix_pipeline(M, 2)
        assert res.ok
        co = res.coarsening
        assert co.bound == co.r * co.t and co.max_error <= co.bound
        for P, Q in zip(co.pairs, co.pairs[1:]):
            assert refinement_factor(P, Q) <= co.r
        # re-walk the steps and re-measure every pair with the naive oracle
        rows = [(i,) for i in range(n)]
        cols = [(j,) for j in range(m)]
        for axis, a, b in co.steps:
            side = rows if axis == "row" else cols
            side.remove(a)
            side.remove(b)
            side.append(tuple(sorted(a + b)))
            assert error_value_naive(M, rows, cols) <= co.bound
        assert len(rows) == 1 and len(cols) == 1
        final, reds = replay_matrix_contractions(M, co.steps)
        assert (final.rows, final.cols) == (1, 1) and len(reds) == len(co.steps) + 1
        done += 1


def test_coarsening_rejects_non_chain():
    M = [[0, 1], [1, 0]]
    P = normalize_pair([(0, 1)], [(0,), (1,)])
    Q = normalize_pair([(0,), (1,)], [(0, 1)])
    with pytest.raises(ValueError):
        coarsening_to_contractions([P, Q], M)


def test_threshold_schedule():
    s = threshold_schedule(1)
    assert s[:4] == [0, 1, 2, 4] and s == sorted(set(s))


def test_clique_identity_order_width_zero():
    for n in (2, 5, 8):
        S = BinaryStructure.graph(n, itertools.combinations(range(n), 2))
        seq, _ = symmetric_sequence_from_order(S, list(range(n)), 2)
        assert seq.is_full() and verify_sequence(seq, 0).valid


def test_path_order_against_exact():
    for n in range(2, 10):
        edges = [(i, i + 1) for i in range(n - 1)]
        S = BinaryStructure.graph(n, edges)
        seq, _ = symmetric_sequence_from_order(S, list(range(n)), 3)
        assert seq.is_full()
        w = verify_sequence(seq, None, respect_unary=False).width
        assert w >= exact_twinwidth(Trigraph.from_graph(n, edges))[0]


def test_symmetric_pipeline_rejects_mixed_order():
    # the identity order of this graph has a 2-mixed minor
    n = 6
    S = BinaryStructure.graph(n, [(0, 3), (1, 4), (2, 5), (0, 4), (1, 5)])
    assert mixed_minor_exists(encode_adjacency(S).matrix.tolist(), 2)
    with pytest.raises(PipelineStuck) as err:
        symmetric_sequence_from_order(S, list(range(n)), 2)
    assert is_mixed_minor(encode_adjacency(S).matrix, err.value.witness)


def test_twin_order_is_mixed_free():
    for n, edges in atlas(7, 2):
        d, seq = exact_twinwidth(Trigraph.from_graph(n, edges))
        order = merge_tree_order(seq)
        M = encode_adjacency(BinaryStructure.graph(n, edges), order).matrix
        divs = twin_ordered_divisions(seq, order)
        holds, t = twin_ordered_is_mixed_free(M, divs)
        assert holds
        assert t == division_error(M, divs)
        # the zero diagonal adds at most two to the red degree
        assert t <= d + 2


def test_twin_order_rejects_incompatible_order():
    P4 = Trigraph.from_graph(4, [(0, 1), (1, 2), (2, 3)])
    seq = ContractionSequence.from_pairs(P4, [(0, 1), (4, 2), (5, 3)])
    assert merge_tree_order(seq) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        twin_ordered_divisions(seq, [0, 2, 1, 3])
