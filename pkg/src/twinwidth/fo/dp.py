"""Model checking along a contraction sequence.

For every part X of the current partition we keep a reduct of the morphism tree of
connected tuples rooted at X.  A merge only changes the trees of parts close to the
merged part in the red graph; those are rebuilt from the trees of the previous
partition by a pruned shuffle, restricted to X and reduced.
"""

from collections import OrderedDict, namedtuple
from concurrent.futures import ThreadPoolExecutor

from ..structures import PartitionTracker, as_structure
from ..trigraph import Trigraph, verify_sequence
from .formula import (
    FormulaError,
    PrenexFormula,
    brute_force_check,
    compile_body,
    free_variables,
    parse,
    parse_formula,
    to_prenex,
)
from .mtree import (
    Coder,
    PartitionContext,
    bfs_ball,
    build_restricted,
    minimax_eval,
    path_tree,
    sg_radius,
    size,
)

StepStats = namedtuple("StepStats", "step merged touched max_reduct")


class DPState:
    """Partition, red graph and the reduct table of one run of the dynamic program."""

    def __init__(self, S, ell, threads=1):
        if ell < 1:
            raise ValueError("formula length must be at least 1")
        self.S = S
        self.ell = ell
        self.threads = threads
        self.tracker = PartitionTracker(S)
        self.members = {v: [v] for v in range(S.n)}
        self.table = {v: path_tree(v, ell) for v in range(S.n)}
        self.next_id = S.n
        self.stats = []

    def parts(self):
        return self.tracker.parts()


def dp_init(S, ell, threads=1):
    return DPState(as_structure(S), ell, threads)


def _old_view(tracker, a, b, w, small_id, small_set, large_id, red_a, red_b, radius):
    """The partition and red graph just before ``a`` and ``b`` were merged into ``w``."""

    def part(v):
        p = tracker.part_of(v)
        if p != w:
            return p
        return small_id if v in small_set else large_id

    def neighbors(p):
        if p == a:
            return red_a
        if p == b:
            return red_b
        out = set(tracker.red[p])
        out.discard(w)
        if p in red_a:
            out.add(a)
        if p in red_b:
            out.add(b)
        return out

    return PartitionContext(part, neighbors, radius)


def dp_step(state, a, b):
    """Merge parts ``a`` and ``b``; returns the id of the new part."""
    tracker = state.tracker
    if a == b or a not in tracker.size or b not in tracker.size:
        raise ValueError(f"cannot merge parts {a} and {b}")
    ell = state.ell
    w = state.next_id
    state.next_id += 1
    red_a, red_b = set(tracker.red[a]), set(tracker.red[b])
    ma, mb = state.members.pop(a), state.members.pop(b)
    if len(ma) < len(mb):
        small_id, small, large_id, large = a, ma, b, mb
    else:
        small_id, small, large_id, large = b, mb, a, ma
    small_set = set(small)
    tracker.merge(a, b, w)
    large.extend(small)
    state.members[w] = large

    radius = sg_radius(ell)
    old = _old_view(tracker, a, b, w, small_id, small_set, large_id, red_a, red_b, radius)
    new = PartitionContext(tracker.part_of, tracker.red.__getitem__, radius)
    affected = sorted(bfs_ball(tracker.red.__getitem__, [w], 3**ell))
    reach = (3 ** (ell - 1) - 1) // 2
    table = state.table

    def rebuild(X):
        trees = []
        for Z in sorted(bfs_ball(tracker.red.__getitem__, [X], reach)):
            if Z == w:
                trees.append((a, table[a]))
                trees.append((b, table[b]))
            else:
                trees.append((Z, table[Z]))
        coder = Coder(state.S, tracker.part_of)
        return build_restricted(trees, X, ell, old, new, coder)

    if state.threads > 1 and len(affected) > 1:
        with ThreadPoolExecutor(max_workers=state.threads) as pool:
            results = list(pool.map(rebuild, affected))
    else:
        results = [rebuild(X) for X in affected]
    del table[a], table[b]
    for X, T in zip(affected, results):
        table[X] = T
    state.stats.append(
        StepStats(len(state.stats), (a, b, w), len(affected), max(size(T) for T in results))
    )
    return w


def _merges(S, seq):
    """Vertex merges of ``seq`` as pairs of original representatives, completed to a
    full sequence when it stops early."""
    if seq is None:
        merges = []
    else:
        if seq.initial.n != S.n:
            raise ValueError("sequence and structure have different sizes")
        report = verify_sequence(seq, None)
        if not report.valid:
            raise ValueError(f"invalid sequence: {report.reason}")
        merges = seq.vertex_merges()
    parent = list(range(S.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in merges:
        parent[find(y)] = find(x)
    roots = sorted({find(v) for v in range(S.n)})
    return merges + [(roots[0], r) for r in roots[1:]]


def run_dp(S, seq, ell, threads=1):
    """Final reduct MT'_ell(S) computed along ``seq``; returns the DP state."""
    S = as_structure(S)
    if S.n == 0:
        raise ValueError("empty structures are not supported")
    state = dp_init(S, ell, threads)
    for x, y in _merges(S, seq):
        dp_step(state, state.tracker.part_of(x), state.tracker.part_of(y))
    return state


def final_reduct(state):
    (T,) = state.table.values()
    return T


class ModelChecker:
    """Caches the final reduct per formula length, so every further sentence of the
    same length is decided on a tree of bounded size."""

    def __init__(self, S, seq=None, threads=1):
        self.S = as_structure(S)
        self.seq = seq
        self.threads = threads
        self.states = {}

    def state(self, ell):
        st = self.states.get(ell)
        if st is None:
            st = run_dp(self.S, self.seq, ell, self.threads)
            self.states[ell] = st
        return st

    def reduct(self, ell):
        return final_reduct(self.state(ell))

    def check(self, phi):
        phi = _as_prenex(phi)
        if phi.length == 0:
            raise FormulaError("sentences without variables are not supported")
        body = compile_body(self.S, phi.body, phi.variables)
        return minimax_eval(self.reduct(phi.length), phi, self.S, body)


def _as_prenex(phi, free=None):
    if isinstance(phi, str):
        return parse_formula(phi, free)
    if isinstance(phi, PrenexFormula):
        return phi
    return to_prenex(phi, tuple(free or ()))


_CACHE = OrderedDict()
_CACHE_SIZE = 8


def model_check(S, seq, phi, threads=1):
    """Decide ``S |= phi`` from a contraction sequence of S."""
    S = as_structure(S)
    phi = _as_prenex(phi)
    if phi.length == 0:
        raise FormulaError("sentences without variables are not supported")
    key = (S.fingerprint(), None if seq is None else tuple(seq.pairs()), phi.length)
    T = _CACHE.get(key)
    if T is None:
        T = final_reduct(run_dp(S, seq, phi.length, threads))
        _CACHE[key] = T
        if len(_CACHE) > _CACHE_SIZE:
            _CACHE.popitem(last=False)
    else:
        _CACHE.move_to_end(key)
    return minimax_eval(T, phi, S)


def interpret(S, seq, phi, free=None):
    """Graph on the domain of S with an edge uv (u != v) when both phi(u, v) and
    phi(v, u) hold.  ``phi`` has exactly two free variables, taken in order of first
    occurrence unless ``free`` names them."""
    S = as_structure(S)
    if seq is not None:
        if seq.initial.n != S.n or not verify_sequence(seq, None).valid:
            raise ValueError("invalid sequence for this structure")
    f = parse(phi) if isinstance(phi, str) else phi
    fv = free_variables(f) if free is None else list(free)
    if len(fv) != 2:
        raise FormulaError(f"expected exactly two free variables, got {len(fv)}")
    extra = [v for v in free_variables(f) if v not in fv]
    if extra:
        raise FormulaError(f"free variable {extra[0]!r}")
    x, y = fv
    p = to_prenex(f, (x, y))
    holds = {}
    for u in range(S.n):
        for v in range(S.n):
            if u != v:
                holds[u, v] = brute_force_check(S, p, {x: u, y: v})
    edges = [(u, v) for u in range(S.n) for v in range(u + 1, S.n) if holds[u, v] and holds[v, u]]
    return Trigraph(range(S.n), edges)

