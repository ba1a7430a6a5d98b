"""Exact and heuristic contraction sequences on trigraphs."""

from .config import CapExceeded, cap
from .trigraph import (
    ContractionSequence,
    SequenceBuilder,
    Trigraph,
    verify_sequence,
)

BLACK, NONE, RED = 1, 0, 2


def _masks(G):
    index = {v: i for i, v in enumerate(G.vertices)}
    blk = [0] * G.n
    red = [0] * G.n
    for u, v in G.black_edges():
        blk[index[u]] |= 1 << index[v]
        blk[index[v]] |= 1 << index[u]
    for u, v in G.red_edges():
        red[index[u]] |= 1 << index[v]
        red[index[v]] |= 1 << index[u]
    return blk, red


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _PartOracle:
    """Relations between vertex sets given as bitmasks, memoized."""

    def __init__(self, G):
        self.blk, self.red = _masks(G)
        self._cache = {}

    def relation(self, P, Q):
        key = (P, Q) if P < Q else (Q, P)
        rel = self._cache.get(key)
        if rel is None:
            rel = self._relation(P, Q)
            self._cache[key] = rel
        return rel

    def _relation(self, P, Q):
        full = empty = True
        for p in _bits(P):
            if self.red[p] & Q:
                return RED
            hit = self.blk[p] & Q
            if hit:
                empty = False
            if hit != Q:
                full = False
            if not full and not empty:
                return RED
        return BLACK if full else NONE


def _red_degrees(oracle, parts):
    deg = [0] * len(parts)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if oracle.relation(parts[i], parts[j]) == RED:
                deg[i] += 1
                deg[j] += 1
    return deg


def _safe_twins(oracle, parts):
    """Two parts with identical relations to every other part, if any (first pair in
    index order)."""
    k = len(parts)
    rows = [tuple(oracle.relation(parts[i], parts[j]) if i != j else -1 for j in range(k)) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            ri, rj = rows[i], rows[j]
            if all(ri[x] == rj[x] for x in range(k) if x != i and x != j):
                return i, j
    return None


def exact_twinwidth(G):
    """Twin-width of a trigraph by iterative deepening over vertex partitions.

    Returns ``(d, seq)`` where ``seq`` is a witnessing ``d``-sequence."""
    if isinstance(G, ContractionSequence):
        raise TypeError("expected a trigraph")
    if not isinstance(G, Trigraph):
        G = G.to_trigraph()
    n = G.n
    if n > cap("exact"):
        raise CapExceeded(f"exact twin-width is capped at {cap('exact')} vertices, got {n}")
    vs = G.vertices
    if n <= 1:
        return 0, ContractionSequence(G, [])
    oracle = _PartOracle(G)
    start = tuple(1 << i for i in range(n))
    start_degree = max(_red_degrees(oracle, list(start)))
    failed = {}

    def solve(parts, d):
        # parts is sorted by lowest vertex; returns a list of index pairs or None
        if len(parts) - 1 <= d:
            return [(0, 1)] * (len(parts) - 1)
        key = parts
        if failed.get(key, -1) >= d:
            return None
        twins = _safe_twins(oracle, parts)
        if twins is not None:
            moves = [twins]
        else:
            moves = [(i, j) for i in range(len(parts)) for j in range(i + 1, len(parts))]
        for i, j in moves:
            merged = parts[i] | parts[j]
            rest = [p for x, p in enumerate(parts) if x != i and x != j]
            child = tuple(sorted(rest + [merged], key=lambda m: m & -m))
            if max(_red_degrees(oracle, list(child))) > d:
                continue
            tail = solve(child, d)
            if tail is not None:
                return [(i, j)] + tail
        failed[key] = d
        return None

    d = start_degree
    while True:
        plan = solve(start, d)
        if plan is not None:
            break
        d += 1
    builder = SequenceBuilder(G)
    parts = start
    for i, j in plan:
        a, b = parts[i], parts[j]
        builder.merge(vs[(a & -a).bit_length() - 1], vs[(b & -b).bit_length() - 1])
        rest = [p for x, p in enumerate(parts) if x != i and x != j]
        parts = tuple(sorted(rest + [a | b], key=lambda m: m & -m))
    seq = builder.sequence()
    report = verify_sequence(seq, d)
    assert report.valid and report.width == d, report
    return d, seq


def twin_pairs(G):
    """All pairs of current vertices that are false or true twins (no red edges)."""
    vs = G.vertices
    out = []
    for i, u in enumerate(vs):
        nu = G.black_neighbors(u)
        if G.red_neighbors(u):
            continue
        for v in vs[i + 1 :]:
            if G.red_neighbors(v):
                continue
            if nu - {v} == G.black_neighbors(v) - {u}:
                out.append((u, v))
    return out


def cograph_zero_sequence(G):
    """Contract the lexicographically smallest twin pair until one vertex is left;
    ``None`` if the process gets stuck."""
    if not isinstance(G, Trigraph):
        G = G.to_trigraph()
    if G.red_edges():
        return None
    H = G._copy()
    steps = []
    nxt = G.fresh_id()
    while H.n > 1:
        pair = _first_twins(H)
        if pair is None:
            return None
        u, v = pair
        H._merge(u, v, nxt)
        steps.append((u, v, nxt))
        nxt += 1
    return ContractionSequence(G, steps)


def _first_twins(H):
    vs = sorted(H._black)
    for i, u in enumerate(vs):
        nu = H._black[u]
        for v in vs[i + 1 :]:
            nv = H._black[v]
            if len(nu) - (v in nu) != len(nv) - (u in nv):
                continue
            if nu - {v} == nv - {u}:
                return u, v
    return None


def greedy_sequence(G):
    """At each step contract the pair minimising the resulting maximum red degree, then
    the resulting number of red edges, then the pair itself."""
    if not isinstance(G, Trigraph):
        G = G.to_trigraph()
    H = G._copy()
    nxt = G.fresh_id()
    steps = []
    red_count = len(G.red_edges())
    while H.n > 1:
        best = None
        vs = sorted(H._black)
        deg = {x: len(H._red[x]) for x in vs}
        ranked = sorted(vs, key=lambda x: -deg[x])
        for i, u in enumerate(vs):
            bu, ru = H._black[u], H._red[u]
            for v in vs[i + 1 :]:
                bv, rv = H._black[v], H._red[v]
                nred = (ru | rv | (bu ^ bv)) - {u, v}
                worst = len(nred)
                if best is not None and worst > best[0]:
                    continue
                for x in nred:
                    dx = deg[x] + 1 - (u in H._red[x]) - (v in H._red[x])
                    if dx > worst:
                        worst = dx
                for x in ranked:
                    if x != u and x != v and x not in nred:
                        if deg[x] > worst:
                            worst = deg[x]
                        break
                edges = red_count - len(ru) - len(rv) + (v in ru) + len(nred)
                key = (worst, edges, u, v)
                if best is None or key < best:
                    best = key
        worst, edges, u, v = best
        H._merge(u, v, nxt)
        steps.append((u, v, nxt))
        nxt += 1
        red_count = edges
    return ContractionSequence(G, steps)


def apex_sequence(G, seqG, X):
    """Sequence for G plus an apex adjacent (black) to X, of width at most 2(d+1).

    Every contraction of ``seqG`` is simulated separately inside X and outside X; the
    apex and the two remaining sides are contracted at the very end."""
    X = set(X)
    if not X <= set(G.vertices):
        raise ValueError("X must be a subset of the vertices")
    report = verify_sequence(seqG, None)
    if not report.valid or seqG.initial != G:
        raise ValueError("seqG is not a valid sequence of G")
    if not seqG.is_full():
        raise ValueError("seqG must be a full sequence")
    apex = G.fresh_id()
    H = Trigraph(
        list(G.vertices) + [apex],
        list(G.black_edges()) + [(apex, x) for x in sorted(X)],
        G.red_edges(),
    )
    builder = SequenceBuilder(H)
    # each part of G keeps one original representative per side
    reps = {v: (v if v in X else None, None if v in X else v) for v in G.vertices}
    for u, v, w in seqG.steps:
        (ux, uy), (vx, vy) = reps.pop(u), reps.pop(v)
        if ux is not None and vx is not None:
            builder.merge(ux, vx)
        if uy is not None and vy is not None:
            builder.merge(uy, vy)
        reps[w] = (ux if ux is not None else vx, uy if uy is not None else vy)
    (last,) = reps.values()
    left = [x for x in last if x is not None]
    if len(left) == 2:
        builder.merge(left[0], left[1])
    builder.merge(left[0], apex)
    return builder.sequence()
