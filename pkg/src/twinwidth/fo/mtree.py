"""Morphism trees: rooted trees whose non-root nodes are mapped to vertices.

A node at depth i stands for the tuple of vertices on its root path.  Siblings are
compared through canonical codes: the code of a node combines its profile (equality
and adjacency with every ancestor, its own unary signature and loop label, and its
part when a partition is given) with the multiset of its children's codes.  Two
siblings have the same code exactly when some automorphism of the tree swaps them.
"""

import itertools
from collections import namedtuple

from ..config import CapExceeded, cap
from ..structures import homogeneous_structure

_fresh = itertools.count()


class Node:
    __slots__ = ("id", "vertex", "children", "origin")

    def __init__(self, vertex=None, children=None, origin=None, id=None):
        self.id = next(_fresh) if id is None else id
        self.vertex = vertex
        self.children = children if children is not None else []
        self.origin = origin

    def __repr__(self):
        return f"Node({self.vertex}, {len(self.children)} children)"


def path_tree(v, ell):
    """MT_ell({v}): a path of ell nodes all mapped to v."""
    root = Node()
    cur = root
    for _ in range(ell):
        nxt = Node(v)
        cur.children.append(nxt)
        cur = nxt
    return root


def complete_tree(vertices, ell):
    """MT_ell(V): one node per tuple of length at most ell."""
    vertices = list(vertices)

    def grow(node, depth):
        if depth == ell:
            return
        for v in vertices:
            child = Node(v)
            node.children.append(child)
            grow(child, depth + 1)

    root = Node()
    grow(root, 0)
    return root


def walk(T):
    """Pre-order ``(node, tuple)`` pairs, the root included with the empty tuple."""
    stack = [(T, ())]
    while stack:
        node, t = stack.pop()
        yield node, t
        for ch in reversed(node.children):
            stack.append((ch, t + (ch.vertex,)))


def tuples(T):
    return [t for _, t in walk(T)]


def size(T):
    return sum(1 for _ in walk(T))


def depth(T):
    return max(len(t) for _, t in walk(T))


def copy_tree(T):
    return Node(T.vertex, [copy_tree(c) for c in T.children], T.origin, T.id)


# ---------------------------------------------------------------- codes and reducts


class Coder:
    """Profiles and interned codes for nodes of morphism trees in a structure.

    ``part_of`` (optional) maps a vertex to its part; when given, codes include the
    part so that only reductions respecting the partition are found."""

    def __init__(self, S, part_of=None):
        self.S = S
        self.part_of = part_of
        self._rels = [S.out[name] for name in S.relation_names]
        self._unary = [S.unary[name] for name in S.unary_names]
        self._table = {}

    def label(self, a, v):
        return tuple((v in out[a], a in out[v]) for out in self._rels)

    def profile(self, v, ancestors):
        part = self.part_of(v) if self.part_of is not None else None
        own = (self.label(v, v), tuple(v in u for u in self._unary))
        rel = tuple((a == v, self.label(a, v)) for a in ancestors)
        return part, own, rel

    def intern(self, key):
        code = self._table.get(key)
        if code is None:
            code = len(self._table)
            self._table[key] = code
        return code

    def code_of(self, profile, child_codes):
        return self.intern((profile, tuple(sorted(child_codes))))


def codes(T, coder):
    """Code of every node (by node id) of the unmodified tree."""
    out = {}

    def rec(node, anc):
        kids = [rec(ch, anc + (ch.vertex,)) for ch in node.children]
        prof = None if not anc else coder.profile(anc[-1], anc[:-1])
        c = coder.code_of(prof, kids)
        out[node.id] = c
        return c

    rec(T, ())
    return out


def reduce(T, coder):
    """A reduct of T: bottom-up, among siblings with equal codes only the one with the
    least id survives.  Node ids are kept, so the result is deterministic."""

    def rec(node, anc):
        kept = {}
        for ch in node.children:
            sub, c = rec(ch, anc + (ch.vertex,))
            prev = kept.get(c)
            if prev is None or sub.id < prev.id:
                kept[c] = sub
        children = sorted(kept.values(), key=lambda x: x.id)
        prof = None if not anc else coder.profile(anc[-1], anc[:-1])
        new = Node(node.vertex, children, node.origin, node.id)
        return new, coder.code_of(prof, kept)

    return rec(T, ())[0]


def is_reduct(T, coder):
    c = codes(T, coder)
    for node, _ in walk(T):
        kids = [c[ch.id] for ch in node.children]
        if len(kids) != len(set(kids)):
            return False
    return True


def same_tree(T1, T2):
    """Node-for-node equality (ids, vertices and child order)."""
    if T1.id != T2.id or T1.vertex != T2.vertex or len(T1.children) != len(T2.children):
        return False
    return all(same_tree(a, b) for a, b in zip(T1.children, T2.children))


def isomorphic(T1, T2, coder):
    """Morphism trees in the same structure are isomorphic iff their roots' codes agree."""
    return codes(T1, coder)[T1.id] == codes(T2, coder)[T2.id]


# ---------------------------------------------------------------- minimax


def minimax_eval(T, phi, S, body=None):
    """Value of the game tree: leaves (depth ell) score the body on their tuple, the
    depth-i nodes take max for an existential Q_{i+1} and min for a universal one."""
    from .formula import compile_body

    ell = phi.length
    if ell == 0:
        raise ValueError("sentences without variables are not supported")
    if body is None:
        body = compile_body(S, phi.body, phi.variables)
    qs = [q for q, _ in phi.quantifiers]
    t = [None] * ell

    def rec(node, d):
        if d == ell:
            if node.children:
                raise ValueError(f"tree is deeper than the formula length {ell}")
            return body(t)
        if not node.children:
            raise ValueError(f"leaf at depth {d}, formula length is {ell}")
        want = qs[d] == "E"
        for ch in node.children:
            t[d] = ch.vertex
            if rec(ch, d + 1) == want:
                return want
        return not want

    return rec(T, 0)


# ---------------------------------------------------------------- shuffles


def shuffle(trees, ell, accept=None):
    """ell-shuffle of morphism trees: one node per interleaving of current paths of the
    input trees, truncated at depth ell.  Every new node records ``origin = (k, id)``
    of the input node it copies.  ``accept(entries, child, k)`` may veto extensions;
    ``entries`` lists ``(node, k)`` along the current path."""
    root = Node()
    pos = [t for t in trees]
    entries = []

    def grow(parent, d):
        if d == ell:
            return
        for k in range(len(trees)):
            for ch in pos[k].children:
                if accept is not None and not accept(entries, ch, k):
                    continue
                new = Node(ch.vertex, origin=(k, ch.id))
                parent.children.append(new)
                saved = pos[k]
                pos[k] = ch
                entries.append((ch, k))
                grow(new, d + 1)
                entries.pop()
                pos[k] = saved

    grow(root, 0)
    return root


class PartitionContext:
    """A partition of a structure's domain with its red graph (parts joined when they
    are not homogeneous).  Distances are breadth-first and truncated at ``radius``."""

    def __init__(self, part_of, neighbors, radius):
        self.part = part_of
        self.neighbors = neighbors
        self.radius = radius
        self._balls = {}

    @classmethod
    def from_parts(cls, S, parts, ell):
        parts = [frozenset(p) for p in parts]
        ids = {}
        for i, p in enumerate(parts):
            for v in p:
                ids[v] = i
        red = {i: set() for i in range(len(parts))}
        for i, j in itertools.combinations(range(len(parts)), 2):
            if not homogeneous_structure(S, parts[i], parts[j]):
                red[i].add(j)
                red[j].add(i)
        return cls(ids.__getitem__, red.__getitem__, sg_radius(ell))

    def ball(self, a, radius=None):
        r = self.radius if radius is None else radius
        key = (a, r)
        out = self._balls.get(key)
        if out is None:
            out = bfs_ball(self.neighbors, [a], r)
            self._balls[key] = out
        return out

    def within(self, a, b, r):
        if a == b:
            return True
        if r <= 0:
            return False
        d = self.ball(a).get(b)
        return d is not None and d <= r


def bfs_ball(neighbors, sources, radius):
    dist = {s: 0 for s in sources}
    frontier = list(sources)
    for d in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for y in neighbors(x):
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    return dist


def sg_radius(ell):
    """Largest distance threshold that occurs in an ell-sequence graph."""
    return 3 ** max(ell - 2, 0)


def root_index(parts, roots, new_part, ctx, ell):
    """Index of the local root of a new last entry in part ``new_part``: the smallest
    index in its component of the sequence graph.  ``parts``/``roots`` describe the
    earlier entries (their parts and local-root indices)."""
    k = len(parts)
    r = 3 ** (ell - k - 1)
    best = k
    for j in range(k):
        if roots[j] < best and ctx.within(parts[j], new_part, r):
            best = roots[j]
    return best


SequenceGraphView = namedtuple("SequenceGraphView", "edges components local_roots roots")


def sequence_graph(vertices, ctx, ell):
    """ell-sequence graph of a tuple: edge jk (j < k, 1-based) when the parts of the
    entries are at distance at most 3^(ell-k) in the red graph.  Indices are 0-based in
    the result; ``local_roots`` gives the part of the least index of each component."""
    parts = [ctx.part(v) for v in vertices]
    i = len(parts)
    edges = []
    for k in range(i):
        for j in range(k):
            if ctx.within(parts[j], parts[k], 3 ** (ell - k - 1)):
                edges.append((j, k))
    comp = list(range(i))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for j, k in edges:
        a, b = find(j), find(k)
        if a != b:
            comp[max(a, b)] = min(a, b)
    roots = [min(x for x in range(i) if find(x) == find(k)) for k in range(i)]
    groups = {}
    for k in range(i):
        groups.setdefault(roots[k], []).append(k)
    return SequenceGraphView(
        edges, list(groups.values()), [parts[r] for r in roots], roots
    )


def _rooted_acceptor(parts_of_trees, ctx, ell):
    state = {"parts": [], "roots": []}

    def accept(entries, ch, k):
        d = len(entries)
        parts, roots = state["parts"], state["roots"]
        del parts[d:], roots[d:]
        p = ctx.part(ch.vertex)
        r = root_index(parts, roots, p, ctx, ell)
        root_part = p if r == d else parts[r]
        if root_part != parts_of_trees[k]:
            return False
        parts.append(p)
        roots.append(r)
        return True

    return accept


def pruned_shuffle(rooted, ell, ctx):
    """Pruned ell-shuffle of ``[(X, tree), ...]`` where each tree lives in (G, P, X):
    an entry copied from the tree of X is kept only if its local root is X."""
    parts = [X for X, _ in rooted]
    if len(set(parts)) != len(parts):
        raise ValueError("pruned shuffles take one tree per part")
    return shuffle([T for _, T in rooted], ell, _rooted_acceptor(parts, ctx, ell))


def restrict_to_root(T, X, ctx, ell):
    """(T, m)_X: the root plus the nodes whose tuple is a connected tuple rooted at X."""

    def rec(node, parts, roots):
        kids = []
        d = len(parts)
        for ch in node.children:
            p = ctx.part(ch.vertex)
            r = root_index(parts, roots, p, ctx, ell)
            if r != 0 or (d == 0 and p != X):
                continue
            kids.append(rec(ch, parts + [p], roots + [r]))
        return Node(node.vertex, kids, node.origin, node.id)

    return rec(T, [], [])


def check_rooted(T, X, ctx, ell):
    """Nodes of T whose tuple is not a connected tuple rooted at X."""
    bad = []
    for node, t in walk(T):
        if not t:
            continue
        view = sequence_graph(t, ctx, ell)
        if len(view.components) != 1 or view.local_roots[0] != X:
            bad.append(t)
    return bad


def build_restricted(trees, X, ell, old, new, coder, limit=None):
    """Reduct of the restriction to X (connected tuples for the ``new`` partition) of
    the pruned ell-shuffle of ``trees = [(Y, tree)]`` (pruning for the ``old``
    partition), generated depth-first and reduced on the way up."""
    if limit is None:
        limit = cap("reduct")
    n_trees = len(trees)
    pos = [T for _, T in trees]
    origin = [Y for Y, _ in trees]
    vs, op, npart, oroot, nroot = [], [], [], [], []
    count = [0]

    def grow(d):
        kept = {}
        if d == ell:
            return kept
        r = 3 ** (ell - d - 1)
        for k in range(n_trees):
            for ch in pos[k].children:
                v = ch.vertex
                po = old.part(v)
                ro = d
                for j in range(d):
                    if oroot[j] < ro and old.within(op[j], po, r):
                        ro = oroot[j]
                if (po if ro == d else op[ro]) != origin[k]:
                    continue
                pn = new.part(v)
                if d == 0:
                    if pn != X:
                        continue
                    rn = 0
                else:
                    rn = d
                    for j in range(d):
                        if nroot[j] < rn and new.within(npart[j], pn, r):
                            rn = nroot[j]
                    if rn != 0:
                        continue
                saved = pos[k]
                pos[k] = ch
                vs.append(v)
                op.append(po)
                npart.append(pn)
                oroot.append(ro)
                nroot.append(rn)
                sub = grow(d + 1)
                vs.pop()
                op.pop()
                npart.pop()
                oroot.pop()
                nroot.pop()
                pos[k] = saved
                c = coder.code_of(coder.profile(v, vs), sub)
                if c not in kept:
                    count[0] += 1
                    if count[0] > limit:
                        raise CapExceeded(
                            f"reduct exceeds {limit} nodes; formula length too large"
                        )
                    kept[c] = Node(v, list(sub.values()))
        return kept

    return Node(None, list(grow(0).values()))
