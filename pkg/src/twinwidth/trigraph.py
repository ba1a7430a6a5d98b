"""Trigraphs, contractions and contraction sequences."""

from collections import namedtuple

from .structures import (
    BinaryStructure,
    DegreeHistogram,
    PartitionTracker,
    homogeneous_structure,
)


def _pair(u, v):
    return (u, v) if u < v else (v, u)


class Trigraph:
    """Vertices with disjoint sets of black and red edges.  Values are immutable."""

    __slots__ = ("_black", "_red")

    def __init__(self, vertices, black=(), red=()):
        self._black = {v: set() for v in vertices}
        self._red = {v: set() for v in self._black}
        for kind, edges in ((self._black, black), (self._red, red)):
            for u, v in edges:
                if u == v:
                    raise ValueError(f"self-loop at {u}")
                if u not in kind or v not in kind:
                    raise ValueError(f"edge {(u, v)} has an endpoint outside the vertex set")
                kind[u].add(v)
                kind[v].add(u)
        for u, nb in self._black.items():
            if nb & self._red[u]:
                raise ValueError(f"vertex {u} has an edge that is both black and red")

    @classmethod
    def from_graph(cls, n, edges):
        return cls(range(n), edges)

    @property
    def n(self):
        return len(self._black)

    @property
    def vertices(self):
        return tuple(sorted(self._black))

    def __contains__(self, v):
        return v in self._black

    def black_edges(self):
        return sorted({_pair(u, v) for u, nb in self._black.items() for v in nb})

    def red_edges(self):
        return sorted({_pair(u, v) for u, nb in self._red.items() for v in nb})

    def black_neighbors(self, v):
        return frozenset(self._black[v])

    def red_neighbors(self, v):
        return frozenset(self._red[v])

    def has_black(self, u, v):
        return v in self._black[u]

    def has_red(self, u, v):
        return v in self._red[u]

    def red_degree(self):
        return max((len(r) for r in self._red.values()), default=0)

    def fresh_id(self):
        return max(self._black, default=-1) + 1

    def __eq__(self, other):
        return (
            isinstance(other, Trigraph)
            and self._black == other._black
            and self._red == other._red
        )

    def __hash__(self):
        return hash((self.vertices, tuple(self.black_edges()), tuple(self.red_edges())))

    def __repr__(self):
        return (
            f"Trigraph(n={self.n}, black={len(self.black_edges())}, "
            f"red={len(self.red_edges())})"
        )

    def _copy(self):
        t = Trigraph.__new__(Trigraph)
        t._black = {v: set(nb) for v, nb in self._black.items()}
        t._red = {v: set(nb) for v, nb in self._red.items()}
        return t

    def _merge(self, u, v, w):
        """In-place contraction; returns the set of vertices whose red degree may have
        changed (the merged vertex included)."""
        if u == v:
            raise ValueError("cannot contract a vertex with itself")
        for x in (u, v):
            if x not in self._black:
                raise KeyError(f"unknown vertex {x}")
        if w in self._black:
            raise ValueError(f"vertex id {w} is not fresh")
        bu, bv = self._black.pop(u), self._black.pop(v)
        ru, rv = self._red.pop(u), self._red.pop(v)
        black = (bu & bv) - {u, v}
        red = (ru | rv | (bu ^ bv)) - {u, v}
        for x in bu | bv | ru | rv:
            if x == u or x == v:
                continue
            bx, rx = self._black[x], self._red[x]
            bx.discard(u)
            bx.discard(v)
            rx.discard(u)
            rx.discard(v)
            if x in black:
                bx.add(w)
            else:
                rx.add(w)
        self._black[w] = black
        self._red[w] = red
        return red | ru | rv | {w}


def contract(G, u, v, w=None):
    """G/u,v.  A neighbour is black to ``w`` iff black to both, absent iff absent from
    both, red otherwise."""
    if w is None:
        w = G.fresh_id()
    H = G._copy()
    H._merge(u, v, w)
    return H


def red_degree(G):
    return G.red_degree()


def complement(G):
    """Swap edges and non-edges, keeping red edges."""
    vs = G.vertices
    black = []
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if not G.has_black(u, v) and not G.has_red(u, v):
                black.append((u, v))
    return Trigraph(vs, black, G.red_edges())


def induced_subtrigraph(G, keep):
    keep = set(keep)
    return Trigraph(
        sorted(keep),
        [e for e in G.black_edges() if e[0] in keep and e[1] in keep],
        [e for e in G.red_edges() if e[0] in keep and e[1] in keep],
    )


def homogeneous(G, A, B):
    """A and B are fully adjacent or fully non-adjacent, without red edges between them.
    For binary structures the check is per relation, in both orientations."""
    if isinstance(G, BinaryStructure):
        return homogeneous_structure(G, A, B)
    A, B = set(A), set(B)
    if not A or not B:
        raise ValueError("homogeneity needs two nonempty sets")
    if A & B:
        raise ValueError("homogeneity needs disjoint sets")
    seen = set()
    for a in A:
        if G.red_neighbors(a) & B:
            return False
        for b in B:
            seen.add(G.has_black(a, b))
            if len(seen) > 1:
                return False
    return True


ContractionStep = namedtuple("ContractionStep", "u v w")


class ContractionSequence:
    """Initial trigraph (or binary structure) plus contraction steps ``(u, v, w)``."""

    __slots__ = ("initial", "steps", "_width")

    def __init__(self, initial, steps):
        self.initial = initial
        self.steps = tuple(ContractionStep(*s) for s in steps)
        self._width = None

    @classmethod
    def from_pairs(cls, initial, pairs):
        """Steps given as current-id pairs; merged ids are ``base + step index``."""
        base = _base_id(initial)
        return cls(initial, [(u, v, base + i) for i, (u, v) in enumerate(pairs)])

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return f"ContractionSequence(n={self.initial.n}, steps={len(self.steps)})"

    def pairs(self):
        return [(s.u, s.v) for s in self.steps]

    def is_full(self):
        return len(self.steps) == max(self.initial.n - 1, 0)

    @property
    def width(self):
        if self._width is None:
            self._width = verify_sequence(self, None).width
        return self._width

    def vertex_merges(self):
        """The same sequence as merges of sets of original vertices, each step given by
        one original representative per side."""
        rep = {v: v for v in _vertex_ids(self.initial)}
        out = []
        for u, v, w in self.steps:
            out.append((rep[u], rep[v]))
            rep[w] = rep.pop(u)
            rep.pop(v)
        return out


def _vertex_ids(obj):
    if isinstance(obj, BinaryStructure):
        return range(obj.n)
    return obj.vertices


def _base_id(obj):
    if isinstance(obj, BinaryStructure):
        return obj.n
    return obj.fresh_id()


class SequenceBuilder:
    """Collects contractions named by original vertices and emits a sequence with the
    standard fresh ids."""

    def __init__(self, initial):
        self.initial = initial
        self._parent = {v: v for v in _vertex_ids(initial)}
        self._current = {v: v for v in self._parent}
        self._next = _base_id(initial)
        self.steps = []

    def _find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def current(self, x):
        """Current vertex id of the part containing original vertex ``x``."""
        return self._current[self._find(x)]

    def same(self, x, y):
        return self._find(x) == self._find(y)

    def merge(self, x, y):
        rx, ry = self._find(x), self._find(y)
        if rx == ry:
            raise ValueError(f"{x} and {y} are already in the same part")
        w = self._next
        self._next += 1
        self.steps.append((self._current[rx], self._current[ry], w))
        self._parent[ry] = rx
        self._current[rx] = w
        del self._current[ry]
        return w

    def sequence(self):
        return ContractionSequence(self.initial, self.steps)


VerifyReport = namedtuple(
    "VerifyReport", "valid per_step_red_degree width failed_step reason"
)


def replay(seq):
    """Yield the trigraph before the first step and after each step (copies)."""
    G = seq.initial
    if isinstance(G, BinaryStructure):
        G = G.to_trigraph()
    yield G
    for u, v, w in seq.steps:
        G = contract(G, u, v, w)
        yield G


def verify_sequence(seq, d, respect_unary=True):
    """Replay ``seq``; valid iff every step applies and every trigraph (the input
    included) has red degree at most ``d`` (``d=None`` only measures the width).
    On augmented structures a step may only merge parts with equal unary signatures
    unless ``respect_unary`` is false.

    ``failed_step`` is the index of the first offending step (``-1`` for the input)."""
    initial = seq.initial
    if isinstance(initial, BinaryStructure):
        return _verify_structure(seq, d, respect_unary)
    G = initial._copy()
    hist = DegreeHistogram(len(r) for r in G._red.values())
    degrees = [hist.max()]
    failed, reason = None, None
    if d is not None and degrees[0] > d:
        failed, reason = -1, f"input red degree {degrees[0]} exceeds {d}"
    used = set(G._black)
    for i, (u, v, w) in enumerate(seq.steps):
        if u not in G._black or v not in G._black or u == v:
            return VerifyReport(False, degrees, max(degrees), i, f"step {i}: bad pair {(u, v)}")
        if w in used:
            return VerifyReport(False, degrees, max(degrees), i, f"step {i}: id {w} not fresh")
        used.add(w)
        before = {}
        for x in G._red[u] | G._red[v] | G._black[u] | G._black[v] | {u, v}:
            before[x] = len(G._red[x])
        G._merge(u, v, w)
        for x, k in before.items():
            hist.remove(k)
            if x in G._red:
                hist.add(len(G._red[x]))
        hist.add(len(G._red[w]))
        degrees.append(hist.max())
        if d is not None and failed is None and degrees[-1] > d:
            failed, reason = i, f"step {i}: red degree {degrees[-1]} exceeds {d}"
    width = max(degrees)
    return VerifyReport(failed is None, degrees, width, failed, reason)


def _verify_structure(seq, d, respect_unary):
    S = seq.initial
    tracker = PartitionTracker(S)
    degrees = [0]
    failed, reason = None, None
    used = set(range(S.n))
    for i, (u, v, w) in enumerate(seq.steps):
        if u not in tracker.size or v not in tracker.size or u == v:
            return VerifyReport(False, degrees, max(degrees), i, f"step {i}: bad pair {(u, v)}")
        if w in used:
            return VerifyReport(False, degrees, max(degrees), i, f"step {i}: id {w} not fresh")
        if (
            respect_unary
            and S.unary
            and S.unary_signature(tracker.representative(u))
            != S.unary_signature(tracker.representative(v))
        ):
            return VerifyReport(
                False, degrees, max(degrees), i, f"step {i}: unary predicates differ"
            )
        used.add(w)
        tracker.merge(u, v, w)
        degrees.append(tracker.red_degree())
        if d is not None and failed is None and degrees[-1] > d:
            failed, reason = i, f"step {i}: red degree {degrees[-1]} exceeds {d}"
    return VerifyReport(failed is None, degrees, max(degrees), failed, reason)


class PartitionView:
    """Partitions P_n, P_{n-1}, ... of the original vertices along a sequence.

    Level ``n - i`` is the partition after ``i`` steps.  Part ids are the current
    trigraph vertex ids (original ids for untouched singletons, the merged id ``w``
    otherwise)."""

    def __init__(self, seq):
        report = verify_sequence(seq, None)
        if not report.valid:
            raise ValueError(f"invalid sequence: {report.reason}")
        self.seq = seq
        self.n = seq.initial.n
        self.merges = list(seq.steps)

    def levels(self):
        return list(range(self.n, self.n - len(self.merges) - 1, -1))

    def _steps_for(self, level):
        i = self.n - level
        if not 0 <= i <= len(self.merges):
            raise ValueError(f"level {level} outside the sequence")
        return i

    def partition(self, level):
        i = self._steps_for(level)
        parts = {v: frozenset([v]) for v in _vertex_ids(self.seq.initial)}
        for u, v, w in self.merges[:i]:
            parts[w] = parts.pop(u) | parts.pop(v)
        return parts

    def red_graph(self, level):
        """Edges between non-homogeneous parts, computed from the original graph."""
        parts = self.partition(level)
        G = self.seq.initial
        ids = sorted(parts)
        edges = set()
        for a_i, a in enumerate(ids):
            for b in ids[a_i + 1 :]:
                if not homogeneous(G, parts[a], parts[b]):
                    edges.add(_pair(a, b))
        return edges


def sequence_to_partitions(seq):
    return PartitionView(seq)
