"""Quasi-matrices and binary quasi-minors.

A quasi-matrix may leave positions empty.  Its entry graph is the
bipartite graph on rows and columns with one edge per entry; a binary
subquasi-matrix is an entry subset in which every touched row and column
has exactly two entries, i.e. a disjoint union of cycles of the entry
graph.  Each union of c cycles carries 2^(c-1) binary quasi-determinants
up to sign: per cycle the entries split into the two alternating perfect
matchings, and each term of a quasi-determinant takes one matching per
cycle.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .poly import GuardExceeded, Mono, VarUniverse

MAX_BINARY_SIZE = 12  # rows + cols of an emitted binary subquasi-matrix


class QuasiMatrix:
    """Rows x cols grid with entries (variable ids) at some positions."""

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows, n_cols, entries):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries = dict(entries)
        for (r, c) in self.entries:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise ValueError("entry out of range: %r" % ((r, c),))

    def cells(self):
        return sorted(self.entries)

    def row_cells(self, r):
        return sorted((rr, c) for (rr, c) in self.entries if rr == r)

    def col_cells(self, c):
        return sorted((r, cc) for (r, cc) in self.entries if cc == c)

    def is_full(self):
        return len(self.entries) == self.n_rows * self.n_cols

    def subquasi(self, cells):
        cells = set(cells)
        missing = cells - set(self.entries)
        if missing:
            raise ValueError("positions without entries: %r" % (sorted(missing),))
        return QuasiMatrix(self.n_rows, self.n_cols, {p: self.entries[p] for p in cells})

    def canonical(self):
        """Drop empty rows and columns; returns (matrix, row_map, col_map)
        where the maps list original indices in order."""
        rows = sorted({r for r, _ in self.entries})
        cols = sorted({c for _, c in self.entries})
        rinv = {r: i for i, r in enumerate(rows)}
        cinv = {c: i for i, c in enumerate(cols)}
        ent = {(rinv[r], cinv[c]): v for (r, c), v in self.entries.items()}
        return QuasiMatrix(len(rows), len(cols), ent), rows, cols

    def pretty(self, names, row_labels=None, col_labels=None, empty="."):
        grid = []
        header = None
        if col_labels is not None:
            header = [""] + [str(c) for c in col_labels]
        for r in range(self.n_rows):
            row = [str(row_labels[r]) if row_labels is not None else ""]
            for c in range(self.n_cols):
                v = self.entries.get((r, c))
                row.append(empty if v is None else names(v))
            grid.append(row)
        if header:
            grid.insert(0, header)
        widths = [max(len(row[i]) for row in grid) for i in range(len(grid[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in grid]
        return "\n".join(lines)

    def __repr__(self):
        return "QuasiMatrix(%dx%d, %d entries)" % (self.n_rows, self.n_cols, len(self.entries))


class BinaryQuasiMatrix:
    """A union of vertex-disjoint cycles of the entry graph of ``parent``.

    ``cycles`` stores each cycle as its cells in cyclic walk order, so
    even- and odd-indexed cells are the two alternating matchings.
    """

    __slots__ = ("parent", "cycles", "cells")

    def __init__(self, parent, cycles):
        self.parent = parent
        self.cycles = tuple(tuple(cy) for cy in cycles)
        cells = []
        for cy in self.cycles:
            cells.extend(cy)
        self.cells = frozenset(cells)
        if len(cells) != len(self.cells):
            raise ValueError("cycles overlap")
        self.validate()

    def rows(self):
        return sorted({r for r, _ in self.cells})

    def cols(self):
        return sorted({c for _, c in self.cells})

    def size(self):
        """rows + cols touched."""
        return len(self.rows()) + len(self.cols())

    def validate(self):
        rdeg, cdeg = {}, {}
        for (r, c) in self.cells:
            if (r, c) not in self.parent.entries:
                raise ValueError("cell %r has no entry" % ((r, c),))
            rdeg[r] = rdeg.get(r, 0) + 1
            cdeg[c] = cdeg.get(c, 0) + 1
        if any(d != 2 for d in rdeg.values()) or any(d != 2 for d in cdeg.values()):
            raise ValueError("not binary: some touched row/column lacks exactly two entries")
        for cy in self.cycles:
            if len(cy) < 4 or len(cy) % 2:
                raise ValueError("malformed cycle %r" % (cy,))
            for i, cell in enumerate(cy):
                nxt = cy[(i + 1) % len(cy)]
                same_row = cell[0] == nxt[0]
                same_col = cell[1] == nxt[1]
                if same_row == same_col:
                    raise ValueError("cells %r and %r are not adjacent" % (cell, nxt))

    def matchings(self):
        """Per cycle, the two alternating matchings (tuples of cells)."""
        out = []
        for cy in self.cycles:
            out.append((cy[0::2], cy[1::2]))
        return out

    def __repr__(self):
        return "BinaryQuasiMatrix(cycles=%r)" % (self.cycles,)


class Binomial:
    """Sign-normalized difference of two entry products.

    The term whose monomial key is smallest under the global symbol order
    carries +1.  Cell sets are kept so structural facts (one entry per
    touched column in each term) stay checkable after emission.
    """

    __slots__ = ("plus", "minus", "plus_cells", "minus_cells")

    def __init__(self, plus, minus, plus_cells=(), minus_cells=()):
        if minus.exps < plus.exps:
            plus, minus = minus, plus
            plus_cells, minus_cells = minus_cells, plus_cells
        self.plus = plus
        self.minus = minus
        self.plus_cells = frozenset(plus_cells)
        self.minus_cells = frozenset(minus_cells)

    @classmethod
    def from_matchings(cls, qm, plus_cells, minus_cells):
        return cls(_cells_mono(qm, plus_cells), _cells_mono(qm, minus_cells), plus_cells, minus_cells)

    def is_zero(self):
        return self.plus == self.minus

    def to_poly(self, universe):
        return universe.from_terms([(self.plus, Fraction(1)), (self.minus, Fraction(-1))])

    def key(self):
        return (self.plus.exps, self.minus.exps)

    def __eq__(self, other):
        return isinstance(other, Binomial) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Binomial(%r - %r)" % (self.plus, self.minus)


def _cells_mono(qm, cells):
    counts = {}
    for cell in cells:
        v = qm.entries[cell]
        counts[v] = counts.get(v, 0) + 1
    return Mono(tuple(counts.items()))


def _entry_graph_cycles(qm, max_vertices):
    """All simple cycles of the bipartite entry graph with at most
    ``max_vertices`` vertices, as cell walks.  Rows are vertices
    0..n_rows-1, columns n_rows..n_rows+n_cols-1; each cycle is emitted
    once, anchored at its smallest vertex."""
    R = qm.n_rows
    adj = {}
    for (r, c) in qm.entries:
        adj.setdefault(r, []).append(R + c)
        adj.setdefault(R + c, []).append(r)
    for v in adj:
        adj[v].sort()
    cycles = []
    verts = sorted(adj)

    def cells_of(path):
        out = []
        for i, v in enumerate(path):
            w = path[(i + 1) % len(path)]
            r, c = (v, w - R) if v < R else (w, v - R)
            out.append((r, c))
        return tuple(out)

    def dfs(path, seen):
        v = path[-1]
        for w in adj[v]:
            if w == path[0]:
                if len(path) >= 4 and path[1] < path[-1]:
                    cycles.append(cells_of(path))
            elif w > path[0] and w not in seen and len(path) < max_vertices:
                seen.add(w)
                path.append(w)
                dfs(path, seen)
                path.pop()
                seen.remove(w)

    for s in verts:
        dfs([s], {s})
    cycles.sort(key=lambda cy: (len(cy), tuple(sorted(cy))))
    return cycles


def binary_subquasi_enumerate(qm, max_size=MAX_BINARY_SIZE):
    """Yield every binary subquasi-matrix of ``qm`` with rows+cols at most
    ``max_size``, as vertex-disjoint cycle unions, in a deterministic order."""
    if max_size > MAX_BINARY_SIZE:
        raise GuardExceeded("max_size %d exceeds the hard guard %d" % (max_size, MAX_BINARY_SIZE))
    cycles = _entry_graph_cycles(qm, max_size)
    vert_sets = []
    for cy in cycles:
        vs = set()
        for r, c in cy:
            vs.add(("r", r))
            vs.add(("c", c))
        vert_sets.append(vs)
    out = []

    def rec(start, chosen, used, total):
        for i in range(start, len(cycles)):
            extra = len(vert_sets[i])
            if total + extra > max_size or used & vert_sets[i]:
                continue
            chosen.append(cycles[i])
            out.append(BinaryQuasiMatrix(qm, tuple(chosen)))
            rec(i + 1, chosen, used | vert_sets[i], total + extra)
            chosen.pop()

    rec(0, [], set(), 0)
    return out


def quasi_determinants(bqm):
    """All binary quasi-determinants of one binary quasi-matrix, up to sign,
    zero differences dropped."""
    qm = bqm.parent
    match = bqm.matchings()
    seen = set()
    out = []
    for bits in product((0, 1), repeat=len(match)):
        plus, minus = [], []
        for b, (ma, mb) in zip(bits, match):
            plus.extend(ma if b == 0 else mb)
            minus.extend(mb if b == 0 else ma)
        bino = Binomial.from_matchings(qm, tuple(plus), tuple(minus))
        if bino.is_zero() or bino.key() in seen:
            continue
        seen.add(bino.key())
        out.append(bino)
    return out


def ibin_generators(qm, max_size=MAX_BINARY_SIZE):
    """All binary quasi-minors of ``qm`` up to sign, deduplicated."""
    seen = set()
    out = []
    for bqm in binary_subquasi_enumerate(qm, max_size):
        for bino in quasi_determinants(bqm):
            if bino.key() in seen:
                continue
            seen.add(bino.key())
            out.append(bino)
    return out


def rewrite_as_two_minors(delta, qm, universe):
    """Express a binary quasi-minor ``delta`` of a full matrix ``qm`` as a
    combination sum(multiplier * 2x2 minor); returns [(Poly, Poly)].

    Recursion: with W1 any entry of the minus term, V1 the plus entry in
    W1's row and V2 the plus entry in W1's column, and U the matrix entry
    closing the rectangle, delta splits into (V1*V2 - U*W1) times the rest
    of the plus term, plus W1 times a smaller binary quasi-minor; when U's
    position already sits in the minus term the small minor degenerates
    and both cells drop out.
    """
    if not qm.is_full():
        raise ValueError("rewriting needs a full matrix")
    pairs = []

    def emit(coeff, mult_cells, plus_cells, minus_cells):
        mult = universe.term(coeff, _cells_mono(qm, mult_cells))
        bino = Binomial.from_matchings(qm, tuple(plus_cells), tuple(minus_cells))
        sign = 1 if bino.plus_cells == frozenset(plus_cells) else -1
        pairs.append((mult * sign, bino.to_poly(universe)))

    def rec(plus, minus, mult_cells):
        n = len(plus)
        if n == 2:
            emit(1, mult_cells, plus, minus)
            return
        w1 = min(minus)
        v1 = next(p for p in plus if p[0] == w1[0])
        v2 = next(p for p in plus if p[1] == w1[1])
        u = (v2[0], v1[1])
        rest = [p for p in plus if p not in (v1, v2)]
        emit(1, mult_cells + rest, (v1, v2), (u, w1))
        minus2 = [p for p in minus if p != w1]
        if u in minus2:
            # only possible for n >= 4: the rectangle entry is a minus cell
            rec(rest, [p for p in minus2 if p != u], mult_cells + [w1, u])
        else:
            rec([u] + rest, minus2, mult_cells + [w1])

    rec(sorted(delta.plus_cells), sorted(delta.minus_cells), [])
    return pairs


def expand_combination(pairs, universe):
    total = universe.zero()
    for mult, gen in pairs:
        total = total + mult * gen
    return total


def generic_matrix(n_rows, n_cols, pattern=None, with_s_column=False, domain="QQ", prefix="a"):
    """A generic (quasi-)matrix with one fresh symbol per entry, optionally
    augmented on the left with a column of fresh sequence symbols.

    Returns (QuasiMatrix, VarUniverse).  ``pattern`` restricts the entry
    positions of the generic block (0-based cells).
    """
    cells = sorted(pattern) if pattern is not None else [(r, c) for r in range(n_rows) for c in range(n_cols)]
    for (r, c) in cells:
        if not (0 <= r < n_rows and 0 <= c < n_cols):
            raise ValueError("pattern cell out of range: %r" % ((r, c),))
    T_names = ["%s%d%d" % (prefix, r + 1, c + 1) for (r, c) in cells]
    if len(set(T_names)) != len(T_names):
        T_names = ["%s_%d_%d" % (prefix, r + 1, c + 1) for (r, c) in cells]
    s_names = ["s%d" % (i + 1) for i in range(n_rows)] if with_s_column else []
    universe = VarUniverse(s_names=s_names, T_names=T_names, domain=domain)
    shift = 1 if with_s_column else 0
    entries = {}
    if with_s_column:
        for r in range(n_rows):
            entries[(r, 0)] = universe.vid("s%d" % (r + 1))
    for nm, (r, c) in zip(T_names, cells):
        entries[(r, c + shift)] = universe.vid(nm)
    qm = QuasiMatrix(n_rows, n_cols + shift, entries)
    return qm, universe
