"""Matrices over a finite alphabet: corners, mixed zones, minors, divisions and
partition pairs.

Indices are 0-based.  A division stores half-open ``(start, stop)`` ranges; zones are
given the same way.  The red symbol is the string ``"r"``.
"""

from collections import namedtuple
from fractions import Fraction
import numpy as np

from .config import CapExceeded, cap

RED = "r"


class AlphabetMatrix:
    """Immutable matrix of hashable symbols, with an integer code view and corner
    prefix sums for constant-time mixedness queries."""

    __slots__ = ("entries", "rows", "cols", "symbols", "codes", "_corner_sum")

    def __init__(self, entries):
        rows = [tuple(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows have different lengths")
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0])
        index = {}
        codes = np.empty((self.rows, self.cols), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                codes[i, j] = index.setdefault(x, len(index))
        self.symbols = tuple(index)
        self.codes = codes
        self._corner_sum = None

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, AlphabetMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"AlphabetMatrix({self.rows}x{self.cols}, alphabet={len(self.symbols)})"

    @property
    def alphabet_size(self):
        return len([s for s in self.symbols if s != RED])

    def tolist(self):
        return [list(r) for r in self.entries]

    def corner_grid(self):
        """0/1 array of shape (rows-1, cols-1): 1 where the 2x2 block at (i, j) is mixed."""
        c = self.codes
        if self.rows < 2 or self.cols < 2:
            return np.zeros((max(self.rows - 1, 0), max(self.cols - 1, 0)), dtype=np.int64)
        a, b = c[:-1, :-1], c[:-1, 1:]
        d, e = c[1:, :-1], c[1:, 1:]
        vertical = (a == d) & (b == e)
        horizontal = (a == b) & (d == e)
        return (~vertical & ~horizontal).astype(np.int64)

    def _sums(self):
        if self._corner_sum is None:
            k = self.corner_grid()
            s = np.zeros((k.shape[0] + 1, k.shape[1] + 1), dtype=np.int64)
            if k.size:
                s[1:, 1:] = k.cumsum(0).cumsum(1)
            self._corner_sum = s
        return self._corner_sum

    def corners_in(self, r0, r1, c0, c1):
        """Number of corners whose top-left cell lies in rows [r0, r1) x cols [c0, c1)."""
        if r1 <= r0 or c1 <= c0:
            return 0
        s = self._sums()
        r1 = min(r1, s.shape[0] - 1)
        c1 = min(c1, s.shape[1] - 1)
        if r1 <= r0 or c1 <= c0:
            return 0
        return int(s[r1, c1] - s[r0, c1] - s[r1, c0] + s[r0, c0])

    def zone_mixed(self, rows, cols):
        """Corner-based mixedness of the zone ``rows x cols`` (half-open ranges)."""
        (r0, r1), (c0, c1) = rows, cols
        return self.corners_in(r0, r1 - 1, c0, c1 - 1) > 0


def as_matrix(M):
    return M if isinstance(M, AlphabetMatrix) else AlphabetMatrix(M)


def _check_zone(M, rows, cols):
    (r0, r1), (c0, c1) = rows, cols
    if not (0 <= r0 < r1 <= M.rows and 0 <= c0 < c1 <= M.cols):
        raise ValueError(f"empty or out-of-range zone {rows} x {cols}")


def is_vertical(M, rows=None, cols=None):
    M = as_matrix(M)
    rows = rows or (0, M.rows)
    cols = cols or (0, M.cols)
    _check_zone(M, rows, cols)
    z = M.codes[rows[0] : rows[1], cols[0] : cols[1]]
    return bool((z == z[0:1, :]).all())


def is_horizontal(M, rows=None, cols=None):
    M = as_matrix(M)
    rows = rows or (0, M.rows)
    cols = cols or (0, M.cols)
    _check_zone(M, rows, cols)
    z = M.codes[rows[0] : rows[1], cols[0] : cols[1]]
    return bool((z == z[:, 0:1]).all())


def is_mixed(M, rows=None, cols=None):
    """Neither vertical (constant columns) nor horizontal (constant rows)."""
    return not is_vertical(M, rows, cols) and not is_horizontal(M, rows, cols)


def corners(M):
    """Top-left positions ``(i, j)`` of all mixed 2x2 contiguous blocks."""
    M = as_matrix(M)
    k = M.corner_grid()
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(k))]


class Division(namedtuple("Division", "rows cols")):
    """Consecutive row parts and column parts, as half-open ranges."""

    __slots__ = ()

    @classmethod
    def from_cuts(cls, nrows, ncols, row_cuts, col_cuts):
        """``row_cuts`` lists the number of rows before each boundary (cut after row c)."""
        return cls(_ranges(nrows, row_cuts), _ranges(ncols, col_cuts))

    @classmethod
    def finest(cls, nrows, ncols):
        return cls(tuple((i, i + 1) for i in range(nrows)), tuple((j, j + 1) for j in range(ncols)))

    @classmethod
    def coarsest(cls, nrows, ncols):
        return cls(((0, nrows),), ((0, ncols),))

    def row_cuts(self):
        return tuple(b for _, b in self.rows[:-1])

    def col_cuts(self):
        return tuple(b for _, b in self.cols[:-1])

    def shape(self):
        return len(self.rows), len(self.cols)

    def to_pair(self):
        return PartitionPair(
            tuple(tuple(range(a, b)) for a, b in self.rows),
            tuple(tuple(range(a, b)) for a, b in self.cols),
        )

    def format(self):
        def side(name, parts):
            return name + " " + " ".join(
                f"part{i + 1}={a + 1}..{b}" for i, (a, b) in enumerate(parts)
            )

        return side("ROWS", self.rows) + "\n" + side("COLS", self.cols)


def _ranges(n, cuts):
    cuts = list(cuts)
    if cuts != sorted(set(cuts)) or any(not 0 < c < n for c in cuts):
        raise ValueError(f"cuts {cuts} are not strictly increasing inside 1..{n - 1}")
    bounds = [0] + cuts + [n]
    return tuple((bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1))


def check_division(M, D):
    for parts, n in ((D.rows, M.rows), (D.cols, M.cols)):
        if not parts or parts[0][0] != 0 or parts[-1][1] != n:
            raise ValueError("division does not cover the matrix")
        for (a, b), (c, _) in zip(parts, parts[1:]):
            if b != c:
                raise ValueError("division parts are not consecutive")
        if any(a >= b for a, b in parts):
            raise ValueError("division has an empty part")


MixedEntry = namedtuple("MixedEntry", "zones cuts value")
MixedReport = namedtuple("MixedReport", "rows cols value")


def mixed_value(M, part, other, axis="col"):
    """Mixed zones plus mixed cuts of a consecutive part against the other side's division.

    With ``axis="col"``, ``part`` is a column range and ``other`` the row division
    (list of row ranges); with ``axis="row"`` the roles swap."""
    M = as_matrix(M)
    a, b = part
    if not a < b:
        raise ValueError("part must be a nonempty consecutive range")
    zones = cuts = 0
    if axis == "col":
        for rng in other:
            zones += M.zone_mixed(rng, part)
        for (_, end), _next in zip(other, other[1:]):
            cuts += M.corners_in(end - 1, end, a, b - 1) > 0
    elif axis == "row":
        for rng in other:
            zones += M.zone_mixed(part, rng)
        for (_, end), _next in zip(other, other[1:]):
            cuts += M.corners_in(a, b - 1, end - 1, end) > 0
    else:
        raise ValueError("axis must be 'row' or 'col'")
    return MixedEntry(zones, cuts, zones + cuts)


def mixed_report(M, D):
    M = as_matrix(M)
    rows = [mixed_value(M, r, D.cols, "row") for r in D.rows]
    cols = [mixed_value(M, c, D.rows, "col") for c in D.cols]
    value = max([e.value for e in rows + cols], default=0)
    return MixedReport(rows, cols, value)


def division_mixed_value(M, D):
    return mixed_report(M, D).value


def _minor_search(M, t, zone_ok, limit):
    """Backtracking over row cuts with a greedy shortest-prefix choice of columns.

    ``zone_ok`` is monotone under enlarging a zone, so for fixed rows the greedy column
    division succeeds whenever any column division does."""
    n, m = M.rows, M.cols
    if t < 1:
        raise ValueError("t must be at least 1")
    if n > limit or m > limit:
        raise CapExceeded(f"exhaustive minor search is capped at {limit}x{limit}")
    if t > n or t > m:
        return None

    def columns(row_parts, need):
        cuts = []
        start = 0
        for k in range(need):
            if k == need - 1:
                stop = m
                if start >= m or not all(zone_ok(r, (start, stop)) for r in row_parts):
                    return None
            else:
                stop = start + 1
                while stop <= m - (need - k - 1):
                    if all(zone_ok(r, (start, stop)) for r in row_parts):
                        break
                    stop += 1
                else:
                    return None
                cuts.append(stop)
            start = stop
        return cuts

    def extend(row_parts, start):
        k = len(row_parts)
        if k == t - 1:
            parts = row_parts + [(start, n)]
            cols = columns(parts, t)
            return (parts, cols) if cols is not None else None
        for stop in range(start + 1, n - (t - k - 1) + 1):
            parts = row_parts + [(start, stop)]
            if columns(parts, t) is None:
                continue
            found = extend(parts, stop)
            if found is not None:
                return found
        return None

    found = extend([], 0)
    if found is None:
        return None
    parts, cols = found
    return Division(tuple(parts), _ranges(m, cols))


def has_grid_minor(M, t):
    """A (t, t)-division of a 0/1 matrix in which every zone contains a 1, or None."""
    M = as_matrix(M)
    ones = (M.codes == M.symbols.index(1)).astype(np.int64) if 1 in M.symbols else None
    if ones is None:
        return None
    s = np.zeros((M.rows + 1, M.cols + 1), dtype=np.int64)
    s[1:, 1:] = ones.cumsum(0).cumsum(1)

    def ok(r, c):
        return s[r[1], c[1]] - s[r[0], c[1]] - s[r[1], c[0]] + s[r[0], c[0]] > 0

    return _minor_search(M, t, ok, cap("grid"))


def has_mixed_minor(M, t):
    """A (t, t)-division in which every zone is mixed, or None."""
    M = as_matrix(M)
    return _minor_search(M, t, M.zone_mixed, cap("mixed"))


def is_grid_minor(M, D):
    M = as_matrix(M)
    return all(
        any(M.entries[i][j] == 1 for i in range(*r) for j in range(*c))
        for r in D.rows
        for c in D.cols
    )


def is_mixed_minor(M, D):
    M = as_matrix(M)
    return all(is_mixed(M, r, c) for r in D.rows for c in D.cols)


PartitionPair = namedtuple("PartitionPair", "rows cols")


def normalize_pair(rows, cols):
    """Parts as sorted tuples, parts ordered by their smallest index."""
    rows = tuple(sorted(tuple(sorted(p)) for p in rows))
    cols = tuple(sorted(tuple(sorted(p)) for p in cols))
    return PartitionPair(rows, cols)


def check_pair(M, P):
    for parts, n in ((P.rows, M.rows), (P.cols, M.cols)):
        flat = sorted(x for p in parts for x in p)
        if flat != list(range(n)) or any(not p for p in parts):
            raise ValueError("not a partition of the index set")


def _side_errors(codes, parts, other):
    """For each part, the number of parts of ``other`` (indices on the second axis)
    meeting it in a non-constant zone."""
    out = []
    for p in parts:
        sub = codes[list(p), :]
        const = (sub == sub[0:1, :]).all(axis=0)
        first = sub[0]
        count = 0
        for q in other:
            q = list(q)
            if not const[q].all() or (first[q] != first[q[0]]).any():
                count += 1
        out.append(count)
    return out


def error_values(M, P):
    """Per row part and per column part, the number of non-constant zones it meets."""
    M = as_matrix(M)
    return (
        _side_errors(M.codes, P.rows, P.cols),
        _side_errors(M.codes.T, P.cols, P.rows),
    )


def error_value(P, M):
    rows, cols = error_values(M, P)
    return max(rows + cols, default=0)


def refines(P, Q):
    """Every part of P lies inside a part of Q (on both axes)."""
    for a, b in ((P.rows, Q.rows), (P.cols, Q.cols)):
        where = {x: i for i, q in enumerate(b) for x in q}
        for p in a:
            if len({where[x] for x in p}) != 1:
                return False
    return True


def refinement_factor(P, Q):
    """Largest number of parts of P inside one part of Q."""
    best = 0
    for a, b in ((P.rows, Q.rows), (P.cols, Q.cols)):
        where = {x: i for i, q in enumerate(b) for x in q}
        count = {}
        for p in a:
            k = where[p[0]]
            count[k] = count.get(k, 0) + 1
        best = max(best, max(count.values(), default=0))
    return best


def matrix_contract(M, i, j, axis):
    """Contract rows (``axis="row"``) or columns ``i`` and ``j``: keep ``i``, delete
    ``j``, and write ``r`` wherever the two differ."""
    M = as_matrix(M)
    rows = M.tolist()
    if axis == "row":
        if not (0 <= i < M.rows and 0 <= j < M.rows) or i == j:
            raise ValueError(f"bad row pair {(i, j)}")
        rows[i] = [x if x == y else RED for x, y in zip(rows[i], rows[j])]
        del rows[j]
    elif axis == "col":
        if not (0 <= i < M.cols and 0 <= j < M.cols) or i == j:
            raise ValueError(f"bad column pair {(i, j)}")
        for row in rows:
            if row[i] != row[j]:
                row[i] = RED
            del row[j]
    else:
        raise ValueError("axis must be 'row' or 'col'")
    return AlphabetMatrix(rows)


def red_number(M):
    M = as_matrix(M)
    if RED not in M.symbols:
        return 0
    red = M.codes == M.symbols.index(RED)
    return int(max(red.sum(axis=1).max(), red.sum(axis=0).max()))


def c_t(t):
    """The grid-minor density constant 8/3 (t+1)^2 2^(4t), as an exact fraction."""
    return Fraction(8, 3) * (t + 1) ** 2 * 2 ** (4 * t)


def default_threshold(t):
    return int(min(2 * c_t(t), cap("threshold")))


EncodedStructure = namedtuple("EncodedStructure", "matrix order relations")


def _code(forward, backward):
    if forward and backward:
        return 2
    if forward:
        return 1
    if backward:
        return -1
    return 0


def encode_adjacency(S, order=None):
    """Adjacency matrix of a binary structure under ``order``: per relation 2 for arcs
    both ways, 1 forward only, -1 backward only, 0 none.  A loop gives 1 on the
    diagonal.  Cells are tuples when there are several relations."""
    from .structures import as_structure

    S = as_structure(S)
    n = S.n
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of the domain")
    names = S.relation_names
    rows = []
    for u in order:
        row = []
        for v in order:
            cell = []
            for name in names:
                out = S.out[name]
                if u == v:
                    cell.append(1 if u in out[u] else 0)
                else:
                    cell.append(_code(v in out[u], u in out[v]))
            row.append(cell[0] if len(names) == 1 else tuple(cell))
        rows.append(row)
    return EncodedStructure(AlphabetMatrix(rows), tuple(order), names)


def is_mixed_symmetric(M):
    """Off the diagonal: 0/2 entries are mirrored, -1/1 entries are negated."""
    M = as_matrix(M)
    if M.rows != M.cols:
        return False
    for i in range(M.rows):
        for j in range(i + 1, M.cols):
            a, b = M.entries[i][j], M.entries[j][i]
            aa = a if isinstance(a, tuple) else (a,)
            bb = b if isinstance(b, tuple) else (b,)
            if len(aa) != len(bb):
                return False
            for x, y in zip(aa, bb):
                if x in (0, 2):
                    if y != x:
                        return False
                elif x in (-1, 1):
                    if y != -x:
                        return False
                else:
                    return False
    return True
