"""Text formats.  Vertices are 1-based in files and 0-based in memory.

graph      ``n m`` then ``u v`` per edge, optional ``R u v`` red edges, ``#`` comments
sequence   ``n`` then ``u v`` per step; the step-th merged vertex is ``n + step``
structure  ``n r s`` then ``REL name k`` + k pairs and ``UNARY name k`` + k vertices
matrix     ``rows cols sym...`` then one row of symbols per line
"""

from fractions import Fraction

from .structures import BinaryStructure
from .trigraph import ContractionSequence, Trigraph


def _lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _ints(line, count=None):
    try:
        vals = [int(x) for x in line.split()]
    except ValueError:
        raise ValueError(f"expected integers, got {line!r}") from None
    if count is not None and len(vals) != count:
        raise ValueError(f"expected {count} integers, got {line!r}")
    return vals


def parse_graph(text):
    lines = list(_lines(text))
    if not lines:
        raise ValueError("empty graph file")
    n, m = _ints(lines[0], 2)
    black, red = [], []
    for line in lines[1:]:
        if line.startswith("R"):
            u, v = _ints(line[1:], 2)
            red.append((u - 1, v - 1))
        else:
            u, v = _ints(line, 2)
            black.append((u - 1, v - 1))
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"vertex out of range in {line!r}")
    if len(black) + len(red) != m:
        raise ValueError(f"header announces {m} edges, found {len(black) + len(red)}")
    return Trigraph(range(n), black, red)


def parse_arcs(text):
    """Graph file read as ordered pairs ``u v`` (used for order relations)."""
    lines = list(_lines(text))
    if not lines:
        raise ValueError("empty relation file")
    n, m = _ints(lines[0], 2)
    arcs = [tuple(x - 1 for x in _ints(line, 2)) for line in lines[1:]]
    if len(arcs) != m:
        raise ValueError(f"header announces {m} pairs, found {len(arcs)}")
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"pair {(u + 1, v + 1)} out of range")
    return n, arcs


def format_graph(G):
    idx = {v: i + 1 for i, v in enumerate(G.vertices)}
    black, red = G.black_edges(), G.red_edges()
    out = [f"{G.n} {len(black) + len(red)}"]
    out += [f"{idx[u]} {idx[v]}" for u, v in black]
    out += [f"R {idx[u]} {idx[v]}" for u, v in red]
    return "\n".join(out) + "\n"


def parse_sequence(text, initial):
    lines = list(_lines(text))
    if not lines:
        raise ValueError("empty sequence file")
    (n,) = _ints(lines[0], 1)
    if n != initial.n:
        raise ValueError(f"sequence is for {n} vertices, structure has {initial.n}")
    pairs = [tuple(x - 1 for x in _ints(line, 2)) for line in lines[1:]]
    return ContractionSequence.from_pairs(initial, pairs)


def format_sequence(seq):
    initial = seq.initial
    ids = range(initial.n) if isinstance(initial, BinaryStructure) else initial.vertices
    idx = {v: i + 1 for i, v in enumerate(ids)}
    out = [str(initial.n)]
    nxt = initial.n + 1
    for u, v, w in seq.steps:
        out.append(f"{idx[u]} {idx[v]}")
        idx[w] = nxt
        nxt += 1
    return "\n".join(out) + "\n"


def parse_structure(text):
    lines = list(_lines(text))
    if not lines:
        raise ValueError("empty structure file")
    n, r, s = _ints(lines[0], 3)
    rels, unary = {}, {}
    i = 1
    while i < len(lines):
        head = lines[i].split()
        if len(head) != 3 or head[0] not in ("REL", "UNARY"):
            raise ValueError(f"expected a REL or UNARY block, got {lines[i]!r}")
        kind, name, k = head[0], head[1], int(head[2])
        body = lines[i + 1 : i + 1 + k]
        if len(body) != k:
            raise ValueError(f"block {name} is truncated")
        if name in rels or name in unary:
            raise ValueError(f"duplicate relation name {name!r}")
        if kind == "REL":
            rels[name] = [tuple(x - 1 for x in _ints(line, 2)) for line in body]
        else:
            unary[name] = [_ints(line, 1)[0] - 1 for line in body]
        i += 1 + k
    if len(rels) != r or len(unary) != s:
        raise ValueError("relation counts do not match the header")
    return BinaryStructure(n, rels, unary)


def format_structure(S):
    out = [f"{S.n} {len(S.relations)} {len(S.unary)}"]
    for name in S.relation_names:
        pairs = sorted(S.relations[name])
        out.append(f"REL {name} {len(pairs)}")
        out += [f"{u + 1} {v + 1}" for u, v in pairs]
    for name in S.unary_names:
        members = sorted(S.unary[name])
        out.append(f"UNARY {name} {len(members)}")
        out += [str(v + 1) for v in members]
    return "\n".join(out) + "\n"


def parse_structure_or_graph(text):
    """Structure files start with three integers, graph files with two."""
    first = next(_lines(text), "")
    if len(first.split()) == 3:
        return parse_structure(text)
    G = parse_graph(text)
    if G.red_edges():
        raise ValueError("red edges are not allowed here")
    return BinaryStructure.graph(G.n, G.black_edges())


def parse_matrix(text):
    lines = list(_lines(text))
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    rows, cols = int(head[0]), int(head[1])
    alphabet = head[2:]
    if not alphabet:
        raise ValueError("matrix header needs an alphabet")
    if "r" in alphabet:
        raise ValueError("the symbol r is reserved")
    body = [line.split() for line in lines[1:]]
    if len(body) != rows or any(len(row) != cols for row in body):
        raise ValueError(f"matrix body is not {rows}x{cols}")
    conv = {a: _symbol(a) for a in alphabet}
    for row in body:
        for x in row:
            if x not in conv:
                raise ValueError(f"symbol {x!r} not in the alphabet")
    return [[conv[x] for x in row] for row in body]


def _symbol(a):
    try:
        return int(a)
    except ValueError:
        return a


def format_matrix(M):
    alphabet = sorted({x for row in M for x in row}, key=str)
    out = [" ".join([str(len(M)), str(len(M[0]) if M else 0)] + [str(a) for a in alphabet])]
    out += [" ".join(str(x) for x in row) for row in M]
    return "\n".join(out) + "\n"


def parse_order(text, n):
    vals = [x - 1 for line in _lines(text) for x in _ints(line)]
    if sorted(vals) != list(range(n)):
        raise ValueError("order is not a permutation of the domain")
    return vals


def parse_permutation(text):
    vals = [x for line in _lines(text) for x in _ints(line)]
    if sorted(vals) != list(range(1, len(vals) + 1)):
        raise ValueError("not a permutation of 1..n")
    return vals


def parse_balls(text):
    lines = list(_lines(text))
    (d,) = _ints(lines[0], 1)
    centers = []
    for line in lines[1:]:
        c = tuple(Fraction(x) for x in line.split())
        if len(c) != d:
            raise ValueError(f"center {line!r} is not {d}-dimensional")
        centers.append(c)
    return d, centers


def parse_tree(text):
    """Nested parentheses such as ``((1,2),(3,4))``; leaves are 1-based vertices.
    Returns nested 2-tuples over 0-based vertices."""
    s = "".join(text.split())
    pos = 0

    def node():
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            left = node()
            if pos >= len(s) or s[pos] != ",":
                raise ValueError(f"expected ',' at position {pos}")
            pos += 1
            right = node()
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ')' at position {pos}")
            pos += 1
            return (left, right)
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a leaf at position {pos}")
        return int(s[start:pos]) - 1

    tree = node()
    if pos != len(s):
        raise ValueError(f"trailing input at position {pos}")
    return tree


def format_tree(tree):
    if isinstance(tree, tuple):
        return f"({format_tree(tree[0])},{format_tree(tree[1])})"
    return str(tree + 1)
