"""From mixed-free orders to contraction sequences.

division sequence (greedy fusions with bounded mixed value)
  -> refinement of each division by row and column types
  -> elementary contractions between consecutive partition pairs
"""

from collections import namedtuple

from .config import CapExceeded, cap
from .matrix import (
    AlphabetMatrix,
    Division,
    as_matrix,
    default_threshold,
    division_mixed_value,
    encode_adjacency,
    error_value,
    has_grid_minor,
    has_mixed_minor,
    normalize_pair,
    refinement_factor,
    refines,
)
from .structures import as_structure
from .trigraph import SequenceBuilder, verify_sequence

DivisionResult = namedtuple(
    "DivisionResult", "ok divisions values threshold stuck aux witness"
)


def _part_value(M, part, other, axis):
    """Mixed value of a consecutive part; ``axis`` names the part's side."""
    a, b = part
    zones = cuts = 0
    if axis == "row":
        for c in other:
            zones += M.corners_in(a, b - 1, c[0], c[1] - 1) > 0
        for c in other[:-1]:
            cuts += M.corners_in(a, b - 1, c[1] - 1, c[1]) > 0
    else:
        for r in other:
            zones += M.corners_in(r[0], r[1] - 1, a, b - 1) > 0
        for r in other[:-1]:
            cuts += M.corners_in(r[1] - 1, r[1], a, b - 1) > 0
    return zones + cuts


def _fuse(parts, i):
    return parts[:i] + ((parts[i][0], parts[i + 1][1]),) + parts[i + 2 :]


def division_sequence(M, t=1, threshold=None, symmetric=False):
    """Greedy fusions from the finest division, keeping the mixed value at most
    ``threshold``.

    The side with more parts is scanned first (rows on ties), adjacent pairs left to
    right, and the first admissible fusion is taken.  In symmetric mode a row fusion
    is immediately followed by the same column fusion.  When no fusion is admissible,
    the result carries the auxiliary mixed-zone matrices and, when one is found, a
    t-mixed minor of ``M`` extracted from a t-grid minor of an auxiliary matrix."""
    M = as_matrix(M)
    if threshold is None:
        threshold = default_threshold(t)
    if symmetric and M.rows != M.cols:
        raise ValueError("symmetric mode needs a square matrix")
    D = Division.finest(M.rows, M.cols)
    divisions = [D]
    values = [division_mixed_value(M, D)]
    while len(D.rows) > 1 or len(D.cols) > 1:
        nxt = _next_symmetric(M, D, threshold) if symmetric else _next_fusion(M, D, threshold)
        if nxt is None:
            aux, witness = _obstruction(M, D, t)
            return DivisionResult(False, divisions, values, threshold, D, aux, witness)
        for E in nxt:
            divisions.append(E)
            values.append(division_mixed_value(M, E))
        D = divisions[-1]
    return DivisionResult(True, divisions, values, threshold, None, None, None)


def _next_fusion(M, D, threshold):
    sides = ["row", "col"] if len(D.rows) >= len(D.cols) else ["col", "row"]
    for side in sides:
        parts = D.rows if side == "row" else D.cols
        other = D.cols if side == "row" else D.rows
        for i in range(len(parts) - 1):
            fused = (parts[i][0], parts[i + 1][1])
            if _part_value(M, fused, other, side) <= threshold:
                if side == "row":
                    return [Division(_fuse(D.rows, i), D.cols)]
                return [Division(D.rows, _fuse(D.cols, i))]
    return None


def _next_symmetric(M, D, threshold):
    for i in range(len(D.rows) - 1):
        rows = _fuse(D.rows, i)
        if _part_value(M, rows[i], D.cols, "row") > threshold:
            continue
        cols = _fuse(D.cols, i)
        if _part_value(M, cols[i], rows, "col") > threshold:
            continue
        if _part_value(M, rows[i], cols, "row") > threshold:
            continue
        return [Division(rows, D.cols), Division(rows, cols)]
    return None


def _pairs(parts, offset):
    out = []
    i = offset
    if offset:
        out.append(parts[0])
    while i + 1 < len(parts):
        out.append((parts[i][0], parts[i + 1][1]))
        i += 2
    if i < len(parts):
        out.append(parts[i])
    return tuple(out)


def _obstruction(M, D, t):
    """Auxiliary 0/1 matrices of mixed zones on paired parts; a grid minor in one of them
    spreads to a mixed minor of M."""
    if len(D.rows) >= len(D.cols):
        big = tuple((D.rows[2 * i][0], D.rows[2 * i + 1][1]) for i in range(len(D.rows) // 2))
        options = [(big, _pairs(D.cols, 0)), (big, _pairs(D.cols, 1))]
    else:
        big = tuple((D.cols[2 * i][0], D.cols[2 * i + 1][1]) for i in range(len(D.cols) // 2))
        options = [(_pairs(D.rows, 0), big), (_pairs(D.rows, 1), big)]
    aux = []
    witness = None
    for rows, cols in options:
        A = [[int(M.zone_mixed(r, c)) for c in cols] for r in rows]
        aux.append((rows, cols, A))
        if witness is not None or not rows or not cols:
            continue
        if len(rows) > cap("grid") or len(cols) > cap("grid"):
            continue
        if not any(any(row) for row in A):
            continue
        G = has_grid_minor(AlphabetMatrix(A), t)
        if G is not None:
            witness = Division(
                tuple((rows[a][0], rows[b - 1][1]) for a, b in G.rows),
                tuple((cols[a][0], cols[b - 1][1]) for a, b in G.cols),
            )
    return aux, witness


def _run_keys(M, part, other, axis):
    """Row (or column) types of one part: per maximal run of non-mixed zones without
    mixed cuts, horizontal runs contribute the row's symbol and vertical runs a shared
    key."""
    a, b = part
    codes = M.codes if axis == "row" else M.codes.T
    mixed_zone = [_zone_mixed(M, part, c, axis) for c in other]
    mixed_cut = [_cut_mixed(M, part, c, axis) for c in other[:-1]]
    runs = []
    current = []
    for j, c in enumerate(other):
        if mixed_zone[j]:
            if current:
                runs.append(current)
            current = []
            continue
        if current and mixed_cut[j - 1]:
            runs.append(current)
            current = []
        current.append(c)
    if current:
        runs.append(current)
    keys = {x: [] for x in range(a, b)}
    for run in runs:
        lo, hi = run[0][0], run[-1][1]
        block = codes[a:b, lo:hi]
        if (block == block[0:1, :]).all():
            for x in keys:
                keys[x].append(None)
        else:
            # a non-mixed, non-vertical zone is horizontal: every line is constant
            for x in keys:
                keys[x].append(int(codes[x, lo]))
    return {x: tuple(k) for x, k in keys.items()}


def _zone_mixed(M, part, other_part, axis):
    if axis == "row":
        return M.zone_mixed(part, other_part)
    return M.zone_mixed(other_part, part)


def _cut_mixed(M, part, other_part, axis):
    a, b = part
    end = other_part[1]
    if axis == "row":
        return M.corners_in(a, b - 1, end - 1, end) > 0
    return M.corners_in(end - 1, end, a, b - 1) > 0


def _split(M, parts, other, axis):
    out = []
    for part in parts:
        keys = _run_keys(M, part, other, axis)
        groups = {}
        for x in range(*part):
            groups.setdefault(keys[x], []).append(x)
        out.extend(tuple(g) for g in groups.values())
    return out


def refine_division(M, D, symmetric=False):
    M = as_matrix(M)
    rows = _split(M, D.rows, D.cols, "row")
    cols = _split(M, D.cols, D.rows, "col")
    if symmetric:
        rows = cols = _meet(rows, cols)
    return normalize_pair(rows, cols)


def _meet(a, b):
    where = {x: i for i, p in enumerate(b) for x in p}
    out = {}
    for i, p in enumerate(a):
        for x in p:
            out.setdefault((i, where[x]), []).append(x)
    return list(out.values())


def refine_to_partition_sequence(divs, M, symmetric=False):
    """One partition pair per division: every part is split by row (column) types."""
    M = as_matrix(M)
    if not divs:
        raise ValueError("empty division sequence")
    return [refine_division(M, D, symmetric) for D in divs]


Coarsening = namedtuple("Coarsening", "steps pairs r t bound max_error")


def coarsening_to_contractions(pairs, M, symmetric=False):
    """Elementary merges through a refining chain of partition pairs.

    The chain is completed with the finest pair in front and the coarsest pair at the
    end when missing.  Each step is ``(axis, part_a, part_b)`` with parts given as
    sorted index tuples; in symmetric mode the axis is ``"both"``.  Every intermediate
    pair is checked against the bound ``r * t``."""
    M = as_matrix(M)
    finest = normalize_pair([(i,) for i in range(M.rows)], [(j,) for j in range(M.cols)])
    coarsest = normalize_pair([tuple(range(M.rows))], [tuple(range(M.cols))])
    chain = list(pairs)
    if not chain or chain[0] != finest:
        chain.insert(0, finest)
    if chain[-1] != coarsest:
        chain.append(coarsest)
    for P, Q in zip(chain, chain[1:]):
        if not refines(P, Q):
            raise ValueError("partition chain is not a refinement chain")
        if symmetric and (P.rows != P.cols):
            raise ValueError("symmetric coarsening needs equal row and column partitions")
    r = max(refinement_factor(P, Q) for P, Q in zip(chain, chain[1:])) if len(chain) > 1 else 1
    t = max(error_value(P, M) for P in chain)
    bound = r * t
    steps = []
    max_error = error_value(chain[0], M)
    for P, Q in zip(chain, chain[1:]):
        cur_rows = [tuple(p) for p in P.rows]
        cur_cols = [tuple(p) for p in P.cols]
        axes = ("both",) if symmetric else ("row", "col")
        for axis in axes:
            target = Q.rows if axis != "col" else Q.cols
            cur = cur_rows if axis != "col" else cur_cols
            where = {x: i for i, q in enumerate(target) for x in q}
            groups = {}
            for p in cur:
                groups.setdefault(where[p[0]], []).append(p)
            for members in groups.values():
                acc = members[0]
                for p in members[1:]:
                    merged = tuple(sorted(acc + p))
                    steps.append((axis, acc, p))
                    for side in ([cur_rows, cur_cols] if axis == "both" else [cur]):
                        side.remove(acc)
                        side.remove(p)
                        side.append(merged)
                    acc = merged
                    pair = normalize_pair(cur_rows, cur_cols)
                    e = error_value(pair, M)
                    max_error = max(max_error, e)
                    if e > bound:
                        raise AssertionError(f"error value {e} exceeds the bound {bound}")
    return Coarsening(steps, chain, r, t, bound, max_error)


PipelineResult = namedtuple(
    "PipelineResult", "ok threshold divisions pairs coarsening witness stuck"
)


def threshold_schedule(t):
    top = default_threshold(t)
    out = [0]
    k = 1
    while k < top:
        out.append(k)
        k *= 2
    out.append(top)
    return sorted(set(out))


def matrix_pipeline(M, t=1, threshold=None, symmetric=False):
    """Division sequence, refinement and coarsening.  Without an explicit threshold the
    thresholds 0, 1, 2, 4, ... up to the default are tried in turn and the first one
    that completes is used."""
    M = as_matrix(M)
    schedule = [threshold] if threshold is not None else threshold_schedule(t)
    last = None
    for th in schedule:
        res = division_sequence(M, t, th, symmetric)
        if res.ok:
            pairs = refine_to_partition_sequence(res.divisions, M, symmetric)
            co = coarsening_to_contractions(pairs, M, symmetric)
            return PipelineResult(True, th, res.divisions, pairs, co, None, None)
        last = res
        if res.witness is not None:
            break
    return PipelineResult(False, last.threshold, last.divisions, None, None, last.witness, last.stuck)


def replay_matrix_contractions(M, steps):
    """Apply elementary steps with the matrix contraction rule; red numbers per step."""
    from .matrix import matrix_contract, red_number

    M = as_matrix(M)
    rows = [(i,) for i in range(M.rows)]
    cols = [(j,) for j in range(M.cols)]
    out = [red_number(M)]
    for axis, a, b in steps:
        for side, ax in ((rows, "row"), (cols, "col")):
            if axis not in (ax, "both"):
                continue
            ia, ib = side.index(a), side.index(b)
            M = matrix_contract(M, ia, ib, ax)
            side[ia] = tuple(sorted(a + b))
            del side[ib]
        out.append(red_number(M))
    return M, out


class PipelineStuck(RuntimeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def symmetric_sequence_from_order(S, order, t, check=True, threshold=None):
    """Vertex contraction sequence of a structure from an order whose encoded matrix is
    t-mixed free.  The encoded matrix must be mixed-symmetric; the pipeline runs in
    symmetric mode and each symmetric step becomes one vertex contraction."""
    S = as_structure(S)
    enc = encode_adjacency(S, order)
    M = enc.matrix
    if check:
        try:
            minor = has_mixed_minor(M, t)
        except CapExceeded:
            minor = None
        if minor is not None:
            raise PipelineStuck(f"the order has a {t}-mixed minor", minor)
    res = matrix_pipeline(M, t, threshold, symmetric=True)
    if not res.ok:
        raise PipelineStuck(
            "no division sequence within the threshold"
            + (" (mixed minor found)" if res.witness is not None else " (inconclusive at cap)"),
            res.witness,
        )
    order = enc.order
    builder = SequenceBuilder(S)
    for _axis, a, b in res.coarsening.steps:
        builder.merge(order[a[0]], order[b[0]])
    seq = builder.sequence()
    report = verify_sequence(seq, None, respect_unary=False)
    if not report.valid:
        raise AssertionError(f"pipeline produced an invalid sequence: {report.reason}")
    return seq, res


def merge_tree_order(seq):
    """Leaf order of the merge tree of a full sequence: every part of every level is an
    interval, and merged parts are adjacent intervals."""
    initial = seq.initial
    leaves = {v: [v] for v in (range(initial.n) if hasattr(initial, "relations") else initial.vertices)}
    for u, v, w in seq.steps:
        leaves[w] = leaves.pop(u) + leaves.pop(v)
    order = []
    for part in sorted(leaves.values(), key=lambda p: p[0]):
        order.extend(part)
    return order


def twin_ordered_divisions(seq, order):
    """The division sequence of the adjacency matrix under ``order`` induced by a vertex
    sequence: each contraction is a row fusion followed by the matching column fusion."""
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    ranges = {v: (pos[v], pos[v] + 1) for v in order}
    D = Division.finest(n, n)
    out = [D]
    for u, v, w in seq.steps:
        a, b = sorted([ranges.pop(u), ranges.pop(v)])
        if a[1] != b[0]:
            raise ValueError("order is not compatible with the sequence")
        ranges[w] = (a[0], b[1])
        i = D.rows.index(a)
        rows = _fuse(D.rows, i)
        D = Division(rows, D.cols)
        out.append(D)
        D = Division(rows, _fuse(D.cols, i))
        out.append(D)
    return out


def division_error(M, divs):
    """Largest error value along a division sequence."""
    M = as_matrix(M)
    return max(error_value(D.to_pair(), M) for D in divs)


def twin_ordered_is_mixed_free(M, divs):
    """With t the largest error value of the division sequence, check that M has no
    (2t+2)-mixed minor.  Returns ``(holds, t)``."""
    M = as_matrix(M)
    for D in divs:
        for parts, n in ((D.rows, M.rows), (D.cols, M.cols)):
            if parts[0][0] != 0 or parts[-1][1] != n:
                raise ValueError("not a division of M")
    t = division_error(M, divs)
    return has_mixed_minor(M, 2 * t + 2) is None, t
