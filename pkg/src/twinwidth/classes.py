"""Witness constructors for graph classes of bounded twin-width: contraction sequences
(grids, kings graphs, unit balls, bounded boolean-width) and mixed-free orders
(posets, pattern-avoiding permutations, Lex-DFS)."""

import math
from collections import namedtuple
from fractions import Fraction
from itertools import combinations, product

from .structures import BinaryStructure
from .trigraph import ContractionSequence, SequenceBuilder, Trigraph, verify_sequence


# ---------------------------------------------------------------- grids and kings


def _coords(n, d):
    return list(product(range(n), repeat=d))


def grid_schedule(d, n):
    """Merges (as pairs of coordinates) contracting [n]^d to one vertex: the schedule
    for dimension d-1 is run in parallel in every layer, then the layers are merged
    along the red path."""
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    if d == 1:
        return [((0,), (i,)) for i in range(1, n)]
    inner = grid_schedule(d - 1, n)
    out = []
    for a, b in inner:
        for i in range(n):
            out.append((a + (i,), b + (i,)))
    base = (0,) * (d - 1)
    for i in range(1, n):
        out.append((base + (0,), base + (i,)))
    return out


def red_grid(d, n, diagonals=False):
    """All-red trigraph on [n]^d, vertices numbered in lexicographic coordinate order."""
    coords = _coords(n, d)
    index = {c: i for i, c in enumerate(coords)}
    red = []
    for c in coords:
        for delta in product((-1, 0, 1), repeat=d):
            if not any(delta):
                continue
            if not diagonals and sum(map(abs, delta)) != 1:
                continue
            o = tuple(x + y for x, y in zip(c, delta))
            if o in index and index[c] < index[o]:
                red.append((index[c], index[o]))
    return Trigraph(range(len(coords)), red=red), coords


def project_schedule(G, coord_of, schedule, builder=None):
    """Run a coordinate schedule on the vertices of G present in ``coord_of``; merges
    touching a part without present vertices are skipped."""
    rep = {}
    for v, c in coord_of.items():
        if c in rep:
            raise ValueError(f"two vertices share coordinate {c}")
        rep[c] = v
    parent = {}

    def find(c):
        parent.setdefault(c, c)
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    if builder is None:
        builder = SequenceBuilder(G)
    for a, b in schedule:
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        va, vb = rep.get(ra), rep.get(rb)
        parent[rb] = ra
        if va is not None and vb is not None:
            builder.merge(va, vb)
        rep[ra] = va if va is not None else vb
    return builder


def grid_sequence(d, n, G=None, coord_of=None):
    """Sequence of width at most 3d for the red grid R_n^d, or for a subgraph of P_n^d
    given as a trigraph ``G`` with coordinates ``coord_of``."""
    if G is None:
        G, coords = red_grid(d, n)
        coord_of = {i: c for i, c in enumerate(coords)}
    builder = project_schedule(G, coord_of, grid_schedule(d, n))
    _finish(builder, G)
    return builder.sequence()


def _finish(builder, G):
    vs = sorted(G.vertices) if isinstance(G, Trigraph) else list(range(G.n))
    for v in vs[1:]:
        if not builder.same(vs[0], v):
            builder.merge(vs[0], v)


def kings_sequence(H, coord_of, n=None):
    """Sequence of width at most 2(3^d - 1) for a subgraph of the d-dimensional n-grid
    with diagonals (edges may be black or red)."""
    if not coord_of:
        return ContractionSequence(H, [])
    d = len(next(iter(coord_of.values())))
    if n is None:
        n = 1 + max(x for c in coord_of.values() for x in c)
    for v, c in coord_of.items():
        if len(c) != d or any(not 0 <= x < n for x in c):
            raise ValueError(f"coordinate {c} of {v} outside [n]^d")
    for u, v in list(H.black_edges()) + list(H.red_edges()):
        if max(abs(x - y) for x, y in zip(coord_of[u], coord_of[v])) > 1:
            raise ValueError(f"edge {(u, v)} joins non-adjacent cells")
    builder = project_schedule(H, coord_of, grid_schedule(d, n))
    _finish(builder, H)
    return builder.sequence()


def kings_bound(d):
    return 2 * (3**d - 1)


# ---------------------------------------------------------------- unit balls


def _sqdist(a, b):
    return sum((Fraction(x) - Fraction(y)) ** 2 for x, y in zip(a, b))


def check_ball_graph(centers, G, subgraph=False):
    """Edges join centers at distance at most 2; without ``subgraph`` every such pair is
    an edge.  Returns the list of violations."""
    bad = []
    edges = {tuple(sorted(e)) for e in G.black_edges()}
    for u, v in combinations(range(len(centers)), 2):
        close = _sqdist(centers[u], centers[v]) <= 4
        if (u, v) in edges and not close:
            bad.append(("far edge", u, v))
        if close and (u, v) not in edges and not subgraph:
            bad.append(("missing edge", u, v))
    return bad


def unit_ball_graph(centers):
    edges = [
        (u, v)
        for u, v in combinations(range(len(centers)), 2)
        if _sqdist(centers[u], centers[v]) <= 4
    ]
    return Trigraph(range(len(centers)), edges)


UnitBallResult = namedtuple("UnitBallResult", "sequence k bound supercells")


def unit_ball_sequence(d, centers, G=None, subgraph=False):
    """Contract every supercell (ceil(sqrt d)^d cells of side 2/sqrt d, anchored at the
    minimum coordinate per axis) to one vertex, then run the kings schedule on the
    supercells.  ``k`` is the largest number of centers in one cell."""
    if d < 1:
        raise ValueError("dimension must be positive")
    if G is None:
        G = unit_ball_graph(centers)
    bad = check_ball_graph(centers, G, subgraph)
    if bad:
        raise ValueError(f"graph does not match the configuration: {bad[:3]}")
    n = len(centers)
    if n == 0:
        return UnitBallResult(ContractionSequence(G, []), 0, 0, {})
    side = 2 / math.sqrt(d)
    lo = [min(float(c[i]) for c in centers) for i in range(d)]
    cells = {}
    for v, c in enumerate(centers):
        key = tuple(int(math.floor((float(c[i]) - lo[i]) / side)) for i in range(d))
        cells.setdefault(key, []).append(v)
    k = max(len(vs) for vs in cells.values())
    if not G.black_edges():
        # clique number 1: every contraction keeps the graph edgeless
        builder = SequenceBuilder(G)
        _finish(builder, G)
        return UnitBallResult(builder.sequence(), k, 0, {})
    m = math.ceil(math.sqrt(d))
    supercells = {}
    for key, vs in cells.items():
        supercells.setdefault(tuple(x // m for x in key), []).extend(vs)
    builder = SequenceBuilder(G)
    for key in sorted(supercells):
        vs = sorted(supercells[key])
        for v in vs[1:]:
            builder.merge(vs[0], v)
    reps = {sorted(vs)[0]: key for key, vs in supercells.items()}
    size = 1 + max(x for key in supercells for x in key)
    project_schedule(G, reps, grid_schedule(d, size), builder)
    _finish(builder, G)
    bound = (3 * m) ** d * k
    return UnitBallResult(builder.sequence(), k, bound, supercells)


# ---------------------------------------------------------------- boolean-width


def tree_leaves(T):
    if isinstance(T, tuple):
        return tree_leaves(T[0]) + tree_leaves(T[1])
    return [T]


def _subtrees(T):
    yield T
    if isinstance(T, tuple):
        yield from _subtrees(T[0])
        yield from _subtrees(T[1])


def cut_classes(G, A, limit=None):
    """Number of distinct neighbourhoods in B = V - A of subsets of A."""
    A = set(A)
    index = {v: i for i, v in enumerate(sorted(set(G.vertices) - A))}
    singles = set()
    for a in A:
        mask = 0
        for b in G.black_neighbors(a):
            if b in index:
                mask |= 1 << index[b]
        singles.add(mask)
    closure = {0}
    for s in singles:
        closure |= {c | s for c in closure}
        if limit is not None and len(closure) > limit:
            return len(closure)
    return len(closure)


def boolean_width(G, T, cap_k=8):
    """Boolean-width of the decomposition tree T (nested pairs of vertex ids), or None
    when above ``cap_k``."""
    leaves = tree_leaves(T)
    if sorted(leaves) != sorted(G.vertices):
        raise ValueError("tree leaves are not the vertex set")
    worst = 1
    limit = 2**cap_k
    for sub in _subtrees(T):
        if sub is T:
            continue
        c = cut_classes(G, tree_leaves(sub), limit)
        if c > limit:
            return None
        worst = max(worst, c)
    return math.ceil(math.log2(worst)) if worst > 1 else 0


def _remove_leaf(T, v, w=None):
    """Delete leaf v (smoothing its parent) and optionally rename leaf ``w[0]`` to
    ``w[1]``."""
    if not isinstance(T, tuple):
        if w is not None and T == w[0]:
            return w[1]
        return T
    left, right = T
    if left == v:
        return _remove_leaf(right, v, w)
    if right == v:
        return _remove_leaf(left, v, w)
    return (_remove_leaf(left, v, w), _remove_leaf(right, v, w))


def _count(T):
    return len(tree_leaves(T))


def boolw_sequence(G, T, k, stats=None):
    """Contraction sequence of width at most 2^(k+1) - 1 from a decomposition tree of
    boolean-width at most k.

    While more than 2^k vertices remain, descend from the root to the larger child
    until the subtree has at most 2^(k+1) leaves, contract the first pair of its leaves
    with identical relations to the vertices outside, and smooth the tree.  When no such
    pair exists the pair creating the fewest red edges is used; ``stats["fallbacks"]``
    counts how often."""
    bw = boolean_width(G, T)
    if bw is None or bw > k:
        raise ValueError(f"decomposition tree has boolean-width above {k}")
    H = G._copy()
    nxt = G.fresh_id()
    steps = []
    fallback = 0
    while H.n > 1:
        if H.n <= 2**k + 1:
            vs = sorted(H._black)
            u, v = vs[0], vs[1]
        else:
            node = T
            while _count(node) > 2 ** (k + 1):
                a, b = node
                node = a if _count(a) >= _count(b) else b
            inside = sorted(tree_leaves(node))
            outside = set(H._black) - set(inside)
            pair = None
            for u, v in combinations(inside, 2):
                if (H._black[u] & outside) == (H._black[v] & outside) and (
                    H._red[u] & outside
                ) == (H._red[v] & outside):
                    pair = (u, v)
                    break
            if pair is None:
                fallback += 1
                pair = _least_red_pair(H, inside)
            u, v = pair
        H._merge(u, v, nxt)
        steps.append((u, v, nxt))
        T = _remove_leaf(T, v, (u, nxt))
        nxt += 1
    if stats is not None:
        stats["fallbacks"] = fallback
    return ContractionSequence(G, steps)


def _least_red_pair(H, inside):
    best = None
    for u, v in combinations(inside, 2):
        red = (H._red[u] | H._red[v] | (H._black[u] ^ H._black[v])) - {u, v}
        key = (len(red), u, v)
        if best is None or key < best:
            best = key
    return best[1], best[2]


def random_boolw2_instance(n, rng):
    """Random graph with a decomposition tree of boolean-width at most 2: every vertex
    carries one of two labels, and joining two subtrees adds edges according to the
    labels and then relabels."""
    vertices = list(range(n))
    rng.shuffle(vertices)
    edges = set()
    trees = [v for v in vertices]
    labels = [{v: rng.randrange(2)} for v in vertices]
    while len(trees) > 1:
        i = rng.randrange(len(trees) - 1)
        A, B = trees[i], trees[i + 1]
        la, lb = labels[i], labels[i + 1]
        join = {(x, y) for x in range(2) for y in range(2) if rng.random() < 0.5}
        for a, xa in la.items():
            for b, xb in lb.items():
                if (xa, xb) in join:
                    edges.add((min(a, b), max(a, b)))
        relabel_a = [rng.randrange(2) for _ in range(2)]
        relabel_b = [rng.randrange(2) for _ in range(2)]
        merged = {a: relabel_a[x] for a, x in la.items()}
        merged.update({b: relabel_b[x] for b, x in lb.items()})
        trees[i : i + 2] = [(A, B)]
        labels[i : i + 2] = [merged]
    return Trigraph(range(n), sorted(edges)), trees[0]


def cotree_decomposition(n, rng):
    """Random cograph with its cotree as a decomposition tree."""
    trees = list(range(n))
    rng.shuffle(trees)
    members = [[v] for v in trees]
    edges = set()
    while len(trees) > 1:
        i = rng.randrange(len(trees) - 1)
        if rng.random() < 0.5:
            for a in members[i]:
                for b in members[i + 1]:
                    edges.add((min(a, b), max(a, b)))
        trees[i : i + 2] = [(trees[i], trees[i + 1])]
        members[i : i + 2] = [members[i] + members[i + 1]]
    return Trigraph(range(n), sorted(edges)), trees[0]


# ---------------------------------------------------------------- posets


class Poset:
    """Strict partial order on range(n)."""

    def __init__(self, n, less):
        self.n = n
        less = {(int(a), int(b)) for a, b in less}
        for a, b in less:
            if a == b:
                raise ValueError("strict order must be irreflexive")
            if (b, a) in less:
                raise ValueError("strict order must be antisymmetric")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("pair outside the domain")
        up = [set() for _ in range(n)]
        for a, b in less:
            up[a].add(b)
        for a, b in less:
            if not up[b] <= up[a]:
                raise ValueError("strict order must be transitive")
        self.less = frozenset(less)
        self.up = up

    @classmethod
    def from_cover(cls, n, pairs):
        up = [set() for _ in range(n)]
        for a, b in pairs:
            up[a].add(b)
        closure = set()
        for a in range(n):
            stack = list(up[a])
            seen = set()
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(up[x])
            if a in seen:
                raise ValueError("cover relation has a cycle")
            closure |= {(a, x) for x in seen}
        return cls(n, closure)

    def lt(self, a, b):
        return b in self.up[a]

    def comparable(self, a, b):
        return self.lt(a, b) or self.lt(b, a)

    def structure(self):
        """Binary structure with the relation ``le`` (loops included)."""
        pairs = set(self.less) | {(v, v) for v in range(self.n)}
        return BinaryStructure(self.n, {"le": pairs})


def min_chain_partition(P):
    """Minimum chain cover by maximum matching between two copies of the domain."""
    n = P.n
    match_right = [-1] * n
    match_left = [-1] * n

    def augment(a, seen):
        for b in sorted(P.up[a]):
            if b in seen:
                continue
            seen.add(b)
            if match_right[b] == -1 or augment(match_right[b], seen):
                match_right[b] = a
                match_left[a] = b
                return True
        return False

    for a in range(n):
        augment(a, set())
    chains = []
    for a in range(n):
        if match_right[a] == -1:
            chain = [a]
            while match_left[chain[-1]] != -1:
                chain.append(match_left[chain[-1]])
            chains.append(chain)
    chains.sort(key=lambda c: c[0])
    return chains


def poset_order(P):
    """Chains of a minimum chain partition, one after the other, each increasing.
    Returns ``(order, width)``."""
    chains = min_chain_partition(P)
    order = [v for c in chains for v in c]
    return order, len(chains)


def random_poset(n, width, rng, density=0.5):
    """Random poset that is a union of ``width`` chains (so of width at most ``width``)."""
    chains = [[] for _ in range(width)]
    vertices = list(range(n))
    rng.shuffle(vertices)
    for i, v in enumerate(vertices):
        chains[i % width if i < width else rng.randrange(width)].append(v)
    less = set()
    for c in chains:
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                less.add((c[i], c[j]))
    for a, b in combinations(range(n), 2):
        if rng.random() < density / n:
            if (b, a) not in less:
                less.add((a, b))
    # transitive closure, dropping random arcs that would close a cycle
    return Poset.from_cover(n, _acyclic(n, less))


def _acyclic(n, arcs):
    out = set()
    up = [set() for _ in range(n)]

    def reaches(a, b):
        stack, seen = [a], set()
        while stack:
            x = stack.pop()
            if x == b:
                return True
            if x in seen:
                continue
            seen.add(x)
            stack.extend(up[x])
        return False

    chain_first = sorted(arcs)
    for a, b in chain_first:
        if not reaches(b, a):
            out.add((a, b))
            up[a].add(b)
    return out


# ---------------------------------------------------------------- permutations


def permutation_matrix(tau):
    """M_tau with a 1 at row i, column tau(i) (tau given 1-based)."""
    n = len(tau)
    return [[1 if tau[i] == j + 1 else 0 for j in range(n)] for i in range(n)]


def permutation_structure(tau):
    """D_tau on {1..n, 1'..n'} (0-based: i and n+i): a total order on each copy as a
    relation containing (i, j) for i >= j, and double arcs between i and tau(i)'.
    Returns ``(structure, order)`` with the order 1..n, 1'..n'."""
    n = len(tau)
    if sorted(tau) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..n")
    order1 = {(i, j) for i in range(n) for j in range(n) if i >= j}
    order2 = {(n + i, n + j) for i, j in order1}
    match = set()
    for i, t in enumerate(tau):
        match.add((i, n + t - 1))
        match.add((n + t - 1, i))
    S = BinaryStructure(2 * n, {"order": order1, "order_prime": order2, "match": match})
    return S, list(range(2 * n))


def contains_pattern(tau, sigma):
    """sigma is a pattern of tau: choose rows of M_tau; the columns are then forced and
    the induced submatrix must equal M_sigma."""
    k = len(sigma)
    target = permutation_matrix(sigma)
    for rows in combinations(range(len(tau)), k):
        cols = sorted(tau[r] - 1 for r in rows)
        sub = [[1 if tau[r] - 1 == c else 0 for c in cols] for r in rows]
        if sub == target:
            return True
    return False


def random_avoiding_231(n, rng):
    """Uniform split recursion: tau = L n R with every value of L below every value
    of R, L and R avoiding 231 themselves."""
    if n == 0:
        return []
    p = rng.randrange(n)
    left = random_avoiding_231(p, rng)
    right = random_avoiding_231(n - 1 - p, rng)
    return left + [n] + [x + p for x in right]


# ---------------------------------------------------------------- Lex-DFS


LexStep = namedtuple("LexStep", "active words chosen")


def lexdfs_order(G, audit=None):
    """Discovery order of the Lex-DFS: the active vertex is the last discovered vertex
    with an undiscovered neighbour; among the components of the undiscovered vertices
    meeting its neighbourhood, the one whose neighbourhood word over the discovery order
    is lexicographically largest is entered, at its smallest neighbour of the active
    vertex.  Components of G are handled one after the other."""
    vs = sorted(G.vertices)
    nb = {v: set(G.black_neighbors(v)) | set(G.red_neighbors(v)) for v in vs}
    discovered = []
    seen = set()
    for start in vs:
        if start in seen:
            continue
        discovered.append(start)
        seen.add(start)
        pos = {start: len(discovered) - 1}
        base = len(discovered) - 1
        while True:
            active = None
            for v in reversed(discovered[base:]):
                if nb[v] - seen:
                    active = v
                    break
            if active is None:
                break
            comps = _components(nb, set(x for x in vs if x not in seen))
            words = []
            for comp in comps:
                if not comp & nb[active]:
                    continue
                touch = set()
                for x in comp:
                    touch |= nb[x]
                word = tuple(int(discovered[i] in touch) for i in range(base, len(discovered)))
                words.append((word, comp))
            best_word = max(w for w, _ in words)
            comp = next(c for w, c in words if w == best_word)
            chosen = min(comp & nb[active])
            if audit is not None:
                audit.append(LexStep(active, [w for w, _ in words], chosen))
            pos[chosen] = len(discovered)
            discovered.append(chosen)
            seen.add(chosen)
    return discovered


def _components(nb, alive):
    comps = []
    left = set(alive)
    while left:
        s = left.pop()
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y in left:
                    left.discard(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def lexdfs_mixed_bound(t):
    """Order guarantee for K_t-minor-free graphs: 2 (2^(4t+1) + 1)^2."""
    return 2 * (2 ** (4 * t + 1) + 1) ** 2


def check_sequence_bound(seq, bound):
    rep = verify_sequence(seq, bound)
    return rep.valid, rep.width
