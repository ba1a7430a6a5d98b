"""Binary structures (graphs, digraphs, several relations, unary predicates).

The domain of a structure is always ``range(n)``.  A graph is the special case of
a single symmetric, irreflexive relation named ``E``.
"""

from itertools import combinations


class BinaryStructure:
    """Finite structure with named binary relations and named unary relations."""

    __slots__ = ("n", "relations", "unary", "out", "inn", "_names")

    def __init__(self, n, relations=None, unary=None):
        if n < 0:
            raise ValueError("domain size must be non-negative")
        self.n = n
        rels = {}
        for name, pairs in (relations or {}).items():
            pairs = frozenset((int(u), int(v)) for u, v in pairs)
            for u, v in pairs:
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError(f"pair {(u, v)} of {name} outside the domain")
            rels[name] = pairs
        un = {}
        for name, members in (unary or {}).items():
            if name in rels:
                raise ValueError(f"relation name {name!r} used twice")
            members = frozenset(int(v) for v in members)
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} of {name} outside the domain")
            un[name] = members
        self.relations = rels
        self.unary = un
        self._names = tuple(sorted(rels))
        self.out = {}
        self.inn = {}
        for name, pairs in rels.items():
            out = [set() for _ in range(n)]
            inn = [set() for _ in range(n)]
            for u, v in pairs:
                out[u].add(v)
                inn[v].add(u)
            self.out[name] = out
            self.inn[name] = inn

    @classmethod
    def graph(cls, n, edges):
        pairs = set()
        for u, v in edges:
            if u == v:
                raise ValueError("graphs have no self-loops")
            pairs.add((u, v))
            pairs.add((v, u))
        return cls(n, {"E": pairs})

    @property
    def relation_names(self):
        return self._names

    @property
    def unary_names(self):
        return tuple(sorted(self.unary))

    def is_graph(self):
        if self._names != ("E",) or self.unary:
            return False
        pairs = self.relations["E"]
        return all((v, u) in pairs and u != v for u, v in pairs)

    def edges(self):
        """Undirected edge list (u < v) of a graph structure."""
        return sorted((u, v) for u, v in self.relations.get("E", ()) if u < v)

    def holds(self, name, u, v):
        return v in self.out[name][u]

    def unary_signature(self, v):
        return tuple(v in self.unary[name] for name in self.unary_names)

    def adjacency_label(self, u, v):
        """Per relation, the pair (u->v, v->u) of arc indicators."""
        return tuple(
            (v in self.out[name][u], u in self.out[name][v]) for name in self._names
        )

    def fingerprint(self):
        return (
            self.n,
            tuple((name, tuple(sorted(self.relations[name]))) for name in self._names),
            tuple((name, tuple(sorted(self.unary[name]))) for name in self.unary_names),
        )

    def __eq__(self, other):
        return isinstance(other, BinaryStructure) and self.fingerprint() == other.fingerprint()

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self):
        sizes = ", ".join(f"{k}:{len(v)}" for k, v in sorted(self.relations.items()))
        return f"BinaryStructure(n={self.n}, {sizes})"

    def to_trigraph(self):
        from .trigraph import Trigraph

        if not self.is_graph():
            raise ValueError("only graph structures convert to trigraphs")
        return Trigraph(range(self.n), self.edges())

    def complement_graph(self):
        if not self.is_graph():
            raise ValueError("complement is defined here for graphs only")
        edges = set(self.edges())
        return BinaryStructure.graph(
            self.n, [p for p in combinations(range(self.n), 2) if p not in edges]
        )


def as_structure(obj):
    """Accept a BinaryStructure or a black-only Trigraph on range(n)."""
    if isinstance(obj, BinaryStructure):
        return obj
    from .trigraph import Trigraph

    if isinstance(obj, Trigraph):
        if obj.red_edges():
            raise ValueError("trigraph with red edges is not a structure")
        if set(obj.vertices) != set(range(obj.n)):
            raise ValueError("trigraph vertices must be 0..n-1")
        return BinaryStructure.graph(obj.n, obj.black_edges())
    raise TypeError(f"cannot interpret {type(obj).__name__} as a structure")


def homogeneous_structure(S, A, B):
    """Per relation, one cross pair in the relation forces all of them (both orientations)."""
    A, B = set(A), set(B)
    if not A or not B:
        raise ValueError("homogeneity needs two nonempty sets")
    if A & B:
        raise ValueError("homogeneity needs disjoint sets")
    total = len(A) * len(B)
    for name in S.relation_names:
        out = S.out[name]
        fwd = sum(len(out[a] & B) for a in A)
        bwd = sum(len(out[b] & A) for b in B)
        if fwd not in (0, total) or bwd not in (0, total):
            return False
    return True


class DegreeHistogram:
    """Multiset of non-negative integers with a cheap maximum."""

    def __init__(self, values=()):
        self._count = {}
        self._max = 0
        for k in values:
            self.add(k)

    def add(self, k):
        self._count[k] = self._count.get(k, 0) + 1
        if k > self._max:
            self._max = k

    def remove(self, k):
        c = self._count[k] - 1
        if c:
            self._count[k] = c
        else:
            del self._count[k]
            while self._max > 0 and self._max not in self._count:
                self._max -= 1

    def max(self):
        return self._max if self._count else 0


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _swap(vec):
    out = []
    for i in range(0, len(vec), 2):
        out.append(vec[i + 1])
        out.append(vec[i])
    return tuple(out)


class PartitionTracker:
    """Vertex partition under merges, with the red graph of non-homogeneous part pairs.

    Parts are named by integer ids; initially part ``v`` is ``{v}``.  Cross counts
    between adjacent parts are kept so that merging costs time proportional to the
    number of parts linked to the merged ones.
    """

    def __init__(self, S):
        self.S = S
        n = S.n
        self._parent = list(range(n))
        self._label = list(range(n))
        self._root = {v: v for v in range(n)}
        self.size = {v: 1 for v in range(n)}
        width = 2 * len(S.relation_names)
        zero = (0,) * width
        links = {v: {} for v in range(n)}
        for p, name in enumerate(S.relation_names):
            for u, v in S.relations[name]:
                if u == v:
                    continue
                lu = links[u].get(v, zero)
                lu = lu[: 2 * p] + (lu[2 * p] + 1,) + lu[2 * p + 1 :]
                links[u][v] = lu
                lv = links[v].get(u, zero)
                lv = lv[: 2 * p + 1] + (lv[2 * p + 1] + 1,) + lv[2 * p + 2 :]
                links[v][u] = lv
        self._links = links
        self._zero = zero
        self.red = {v: set() for v in range(n)}
        self._hist = DegreeHistogram([0] * n)

    def parts(self):
        return list(self.size)

    def members(self, part):
        root = self._root[part]
        return [v for v in range(self.S.n) if self.find_root(v) == root]

    def representative(self, part):
        """An original vertex of ``part``."""
        return self._root[part]

    def find_root(self, v):
        parent = self._parent
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            parent[v], v = r, parent[v]
        return r

    def part_of(self, v):
        return self._label[self.find_root(v)]

    def _is_red(self, counts, total):
        return any(c != 0 and c != total for c in counts)

    def merge(self, a, b, w):
        """Merge parts ``a`` and ``b`` into the fresh part ``w``; returns parts whose red
        adjacency changed."""
        if a == b or a not in self.size or b not in self.size:
            raise KeyError(f"cannot merge parts {a} and {b}")
        if w in self.size:
            raise KeyError(f"part id {w} already in use")
        ra, rb = self._root.pop(a), self._root.pop(b)
        if self.size[a] < self.size[b]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._label[ra] = w
        self._root[w] = ra
        size = self.size.pop(a) + self.size.pop(b)
        self.size[w] = size

        hist = self._hist
        hist.remove(len(self.red[a]))
        hist.remove(len(self.red[b]))
        la, lb = self._links.pop(a), self._links.pop(b)
        if len(la) < len(lb):
            la, lb = lb, la
        for y, vec in lb.items():
            la[y] = _add(la[y], vec) if y in la else vec
        la.pop(a, None)
        la.pop(b, None)
        self._links[w] = la

        before = {y: len(self.red[y]) for y in la}
        touched = {w}
        for y in self.red.pop(a) | self.red.pop(b):
            if y in (a, b):
                continue
            self.red[y].discard(a)
            self.red[y].discard(b)
            touched.add(y)
        reds = set()
        for y, vec in la.items():
            ly = self._links[y]
            ly.pop(a, None)
            ly.pop(b, None)
            ly[w] = _swap(vec)
            if self._is_red(vec, size * self.size[y]):
                reds.add(y)
                self.red[y].add(w)
                touched.add(y)
        self.red[w] = reds
        for y, k in before.items():
            if k != len(self.red[y]):
                hist.remove(k)
                hist.add(len(self.red[y]))
        hist.add(len(reds))
        return touched

    def red_degree(self):
        return self._hist.max()

    def red_edges(self):
        return {frozenset((x, y)) for x, ys in self.red.items() for y in ys}


def structure_red_degrees(S, steps):
    """Replay vertex merges ``(u, v, w)`` on a structure; red degree before and after
    every merge."""
    tracker = PartitionTracker(S)
    degrees = [tracker.red_degree()]
    for u, v, w in steps:
        tracker.merge(u, v, w)
        degrees.append(tracker.red_degree())
    return degrees
