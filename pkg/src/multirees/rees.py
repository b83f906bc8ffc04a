"""Presentations of multi-Rees algebras over a fixed sequence.

Blocks of presentation variables T[l;...] stand for the degree-a_l
monomials in the chosen subsequence of block l; the map

    phi(T[l;j]) = s^j * t_l

sends each to its value times a block tag.  The kernel of phi is the
defining ideal.  This module builds the augmented presentation matrix
(sequence column next to the block columns), emits the two candidate
generating families (a restricted binomial family, and every binary
quasi-minor of the matrix), and assembles the supporting reports.

Index tuples: a block of amplitude a over n sequence symbols uses weakly
increasing tuples 0 <= j_1 <= ... <= j_{n-1} <= a, displayed high index
first, with s^j = prod_i s_i^(j_i - j_{i-1}) (j_0 = 0, j_n = a).  The
shift j -> j|k raises every component with index >= k by one, so that
s_u * s^(j|w) = s_w * s^(j|u) for all u, w: these are the sequence-linear
relations read off the matrix.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .poly import (
    Mono,
    MonomialOrder,
    Poly,
    SpecError,
    VarUniverse,
    leading,
)
from .quasimat import (
    Binomial,
    QuasiMatrix,
    binary_subquasi_enumerate,
    quasi_determinants,
)
from .sseq import SeqSpec

RESTRICTED = "restricted"
FULL = "full"
FAMILIES = (RESTRICTED, FULL)

DEFAULT_MAX_MINOR_SIZE = 6


class IndexTuple:
    """Weakly increasing exponent ladder for one block variable."""

    __slots__ = ("n", "a", "js")

    def __init__(self, n, a, js):
        js = tuple(int(j) for j in js)
        if len(js) != n - 1:
            raise ValueError("expected %d components, got %d" % (n - 1, len(js)))
        if any(j < 0 for j in js) or (js and js[-1] > a):
            raise ValueError("components must lie in 0..%d" % a)
        if any(js[i] > js[i + 1] for i in range(len(js) - 1)):
            raise ValueError("components must be weakly increasing")
        self.n = n
        self.a = a
        self.js = js

    def display(self):
        """Highest index first, the order used in variable names."""
        return tuple(reversed(self.js))

    def display_str(self):
        sep = "" if self.a <= 9 else ","
        return sep.join(str(d) for d in self.display())

    def s_exponents(self):
        full = (0,) + self.js + (self.a,)
        return tuple(full[i + 1] - full[i] for i in range(self.n))

    def support(self):
        """1-based positions with a positive exponent."""
        return tuple(i + 1 for i, e in enumerate(self.s_exponents()) if e)

    def last_exponent(self):
        return self.a - (self.js[-1] if self.js else 0)

    def in_column_set(self):
        """Whether this tuple indexes a column (final exponent positive)."""
        return self.last_exponent() >= 1

    def shift(self, k):
        """Raise every component with index >= k (1-based); k = n is the
        identity.  Turns a column tuple into the row-k variable index."""
        if not (1 <= k <= self.n):
            raise ValueError("row index out of range")
        return IndexTuple(self.n, self.a, tuple(j + 1 if i + 1 >= k else j for i, j in enumerate(self.js)))

    def __eq__(self, other):
        return (
            isinstance(other, IndexTuple)
            and (self.n, self.a, self.js) == (other.n, other.a, other.js)
        )

    def __hash__(self):
        return hash((self.n, self.a, self.js))

    def __repr__(self):
        return "IndexTuple(n=%d, a=%d, %r)" % (self.n, self.a, self.display())


def enumerate_index_tuples(n, a):
    """All index tuples, largest display first (the variable order)."""
    out = [IndexTuple(n, a, js) for js in combinations_with_replacement(range(a + 1), n - 1)]
    out.sort(key=lambda it: it.display(), reverse=True)
    return out


def enumerate_column_tuples(n, a):
    return [it for it in enumerate_index_tuples(n, a) if it.in_column_set()]


@dataclass(frozen=True)
class ReesSpec:
    """A sequence plus r blocks, each a row subset K_l and a power a_l."""

    seq: SeqSpec
    blocks: tuple

    def __post_init__(self):
        if not self.blocks:
            raise SpecError("need at least one block")
        norm = []
        for b, raw in enumerate(self.blocks, start=1):
            try:
                rows, power = raw
            except (TypeError, ValueError):
                raise SpecError("block %d must be (rows, power)" % b)
            rows = tuple(sorted(set(int(k) for k in rows)))
            power = int(power)
            if not rows:
                raise SpecError("block %d has no rows" % b)
            if rows[0] < 1 or rows[-1] > self.seq.n:
                raise SpecError("block %d rows must lie in 1..%d" % (b, self.seq.n))
            if power < 1:
                raise SpecError("block %d power must be positive" % b)
            norm.append((rows, power))
        object.__setattr__(self, "blocks", tuple(norm))

    @property
    def r(self):
        return len(self.blocks)

    @property
    def domain(self):
        return "QQ" if self.seq.mode == "generic" else "ZZ"

    def lint(self):
        notes = list(self.seq.lint())
        seen = {}
        for l, (rows, power) in enumerate(self.blocks, start=1):
            if len(rows) == 1:
                notes.append("block %d uses a single sequence element; it contributes no relations of its own" % l)
            if (rows, power) in seen:
                notes.append("blocks %d and %d are identical" % (seen[(rows, power)], l))
            else:
                seen[(rows, power)] = l
        return notes


def spec_to_dict(spec):
    seq = {"mode": spec.seq.mode, "n": spec.seq.n, "names": list(spec.seq.names)}
    if spec.seq.mode == "concrete":
        seq["ambient"] = list(spec.seq.x_names)
        seq["values"] = [
            [[c, dict(m)] for c, m in val] for val in spec.seq.concrete_terms
        ]
        if spec.seq.assume_weak_regular:
            seq["assume_weak_regular"] = True
    return {
        "sequence": seq,
        "blocks": [{"rows": list(rows), "power": power} for rows, power in spec.blocks],
    }


def spec_from_dict(data):
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    unknown = set(data) - {"sequence", "blocks"}
    if unknown:
        raise SpecError("unknown top-level keys: %s" % ", ".join(sorted(unknown)))
    if "sequence" not in data or "blocks" not in data:
        raise SpecError("spec needs 'sequence' and 'blocks'")
    sd = data["sequence"]
    if not isinstance(sd, dict):
        raise SpecError("'sequence' must be an object")
    allowed = {"mode", "n", "names", "ambient", "values", "assume_weak_regular"}
    unknown = set(sd) - allowed
    if unknown:
        raise SpecError("unknown sequence keys: %s" % ", ".join(sorted(unknown)))
    mode = sd.get("mode", "generic")
    if "n" not in sd:
        raise SpecError("sequence needs 'n'")
    try:
        values = tuple(
            tuple((int(c), {str(k): int(e) for k, e in m.items()}) for c, m in val)
            for val in sd.get("values", ())
        )
    except (TypeError, ValueError):
        raise SpecError("malformed concrete values")
    seq = SeqSpec(
        n=int(sd["n"]),
        mode=mode,
        names=tuple(sd.get("names", ())),
        x_names=tuple(sd.get("ambient", ())),
        concrete_terms=values,
        assume_weak_regular=bool(sd.get("assume_weak_regular", False)),
    )
    blocks = []
    if not isinstance(data["blocks"], list):
        raise SpecError("'blocks' must be a list")
    for b, bd in enumerate(data["blocks"], start=1):
        if not isinstance(bd, dict):
            raise SpecError("block %d must be an object" % b)
        unknown = set(bd) - {"rows", "power"}
        if unknown:
            raise SpecError("unknown block keys: %s" % ", ".join(sorted(unknown)))
        if "rows" not in bd:
            raise SpecError("block %d needs 'rows'" % b)
        blocks.append((tuple(bd["rows"]), int(bd.get("power", 1))))
    return ReesSpec(seq=seq, blocks=tuple(blocks))


def spec_to_json(spec, indent=2):
    return json.dumps(spec_to_dict(spec), indent=indent, sort_keys=False)


def spec_from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("invalid JSON: %s" % exc)
    return spec_from_dict(data)


def _t_name(l, it):
    return "T[%d;%s]" % (l, it.display_str())


@dataclass
class BlockData:
    index: int
    rows: tuple
    power: int
    tuples: list
    columns: list
    vids: dict = field(default_factory=dict)

    def vid(self, it):
        return self.vids[it.js]


class Presentation:
    """The variable universe, the augmented matrix, and the map phi."""

    def __init__(self, spec):
        seq = spec.seq
        n = seq.n
        t_names = ["t%d" % l for l in range(1, spec.r + 1)]
        T_names, T_keys = [], []
        blocks = []
        for l, (rows, power) in enumerate(spec.blocks, start=1):
            tuples = enumerate_index_tuples(n, power)
            blocks.append(BlockData(index=l, rows=rows, power=power, tuples=tuples, columns=[]))
            for it in tuples:
                T_names.append(_t_name(l, it))
                T_keys.append((l, it.display(), len(it.support())))
        try:
            universe = VarUniverse(
                s_names=seq.names,
                x_names=seq.x_names,
                t_names=t_names,
                T_names=T_names,
                T_keys=T_keys,
                domain=spec.domain,
            )
        except ValueError as exc:
            raise SpecError("variable naming conflict: %s" % exc)
        self.spec = spec
        self.universe = universe
        self.blocks = blocks
        pos = 0
        self.var_block = {}
        for bd in blocks:
            for it in bd.tuples:
                vid = universe.T_ids[pos]
                bd.vids[it.js] = vid
                self.var_block[vid] = (bd.index, it)
                pos += 1
        f_ids = set()
        for bd in blocks:
            rowset = set(bd.rows)
            for it in bd.tuples:
                if set(it.support()) <= rowset:
                    f_ids.add(bd.vids[it.js])
        self.f_idset = frozenset(f_ids)
        for bd in blocks:
            rowset = set(bd.rows)
            k1 = bd.rows[0]
            bd.columns = [
                it
                for it in bd.tuples
                if it.in_column_set() and set(it.shift(k1).support()) <= rowset
            ]
        entries = {}
        col_blocks = [None]
        for k in range(1, n + 1):
            entries[(k - 1, 0)] = universe.s_ids[k - 1]
        c = 1
        for bd in blocks:
            for it in bd.columns:
                for k in bd.rows:
                    vid = bd.vids[it.shift(k).js]
                    if vid not in self.f_idset:
                        raise AssertionError("selected column leaves the presentation ring")
                    entries[(k - 1, c)] = vid
                col_blocks.append((bd.index, it))
                c += 1
        self.matrix = QuasiMatrix(n, c, entries)
        self.col_blocks = col_blocks
        self._phi_cache = None
        self._s_value_cache = None

    # --- lookups ------------------------------------------------------

    def block(self, l):
        return self.blocks[l - 1]

    def t_var(self, l, js):
        if isinstance(js, IndexTuple):
            js = js.js
        return self.block(l).vids[tuple(js)]

    def t_var_by_display(self, l, display):
        return self.t_var(l, tuple(reversed(tuple(display))))

    def s_vid(self, k):
        return self.universe.s_ids[k - 1]

    def in_presentation_ring(self, p):
        u = self.universe
        ok = set(u.s_ids) | set(u.x_ids) | self.f_idset
        return all(v in ok for m, _ in p.terms for v in m.support())

    # --- the map phi ---------------------------------------------------

    def phi_images(self):
        """T variable -> its value: the s-monomial times the block tag."""
        if self._phi_cache is None:
            u = self.universe
            images = {}
            for vid, (l, it) in self.var_block.items():
                pairs = [(u.s_ids[i], e) for i, e in enumerate(it.s_exponents()) if e]
                pairs.append((u.t_ids[l - 1], 1))
                images[vid] = Poly(u, ((Mono(tuple(pairs)), 1),))
            self._phi_cache = images
        return self._phi_cache

    def s_values(self):
        """Sequence symbol -> concrete value polynomial (concrete mode)."""
        if self.spec.seq.mode != "concrete":
            raise SpecError("no concrete values in generic mode")
        if self._s_value_cache is None:
            u = self.universe
            images = {}
            for k, val in enumerate(self.spec.seq.concrete_terms, start=1):
                p = u.zero()
                for coeff, mexp in val:
                    mono = Mono(tuple((u.vid(xn), e) for xn, e in mexp.items() if e))
                    p = p + u.term(coeff, mono)
                images[u.s_ids[k - 1]] = p
            self._s_value_cache = images
        return self._s_value_cache

    def phi(self, p, evaluate=None):
        """Apply phi; with ``evaluate`` (default: in concrete mode) also
        replace sequence symbols by their concrete values."""
        out = p.substitute(self.phi_images())
        if evaluate is None:
            evaluate = self.spec.seq.mode == "concrete"
        if evaluate:
            out = out.substitute(self.s_values())
        return out

    # --- rendering ------------------------------------------------------

    def col_label(self, c):
        if self.col_blocks[c] is None:
            return "s"
        l, it = self.col_blocks[c]
        return "[%d;%s]" % (l, it.display_str())

    def pretty_matrix(self):
        return self.matrix.pretty(
            names=self.universe.name,
            row_labels=list(self.spec.seq.names),
            col_labels=[self.col_label(c) for c in range(self.matrix.n_cols)],
        )

    def block_matrix(self, l, all_rows=False, all_columns=False):
        """One block's columns as a standalone quasi-matrix; optionally the
        full version over every row and every column tuple."""
        bd = self.block(l)
        cols = [it for it in bd.tuples if it.in_column_set()] if all_columns else bd.columns
        rows = range(1, self.spec.seq.n + 1) if all_rows else bd.rows
        entries = {}
        for c, it in enumerate(cols):
            for k in rows:
                entries[(k - 1, c)] = bd.vids[it.shift(k).js]
        return QuasiMatrix(self.spec.seq.n, len(cols), entries)


def build_presentation(spec):
    return Presentation(spec)


# --- generating families -------------------------------------------------


@dataclass
class Generator:
    poly: Poly
    binomial: Binomial
    kind: str  # "seq-linear" | "block-2x2" | "multiblock-cycle" | "binary"
    blocks: tuple
    size: int  # number of matrix columns consumed
    label: str

    def render(self, order=None):
        return self.poly.render(order)


def _mono_of(universe, pairs):
    acc = {}
    for vid in pairs:
        acc[vid] = acc.get(vid, 0) + 1
    return Mono(tuple(acc.items()))


def defining_generators(pres, family=RESTRICTED, max_minor_size=None):
    """Candidate generators of the defining ideal.

    ``restricted``: the sequence-linear column relations, the 2x2 minors
    inside one block, and the single-cycle binary quasi-minors of the
    block columns that use at most one column per block.

    ``full``: every binary quasi-minor of the augmented matrix (sequence
    column included), multi-cycle unions and all, up to the size cap.
    """
    if family not in FAMILIES:
        raise ValueError("family must be one of %s" % (FAMILIES,))
    u = pres.universe
    n = pres.spec.seq.n
    if max_minor_size is None:
        max_minor_size = max(2, min(n, DEFAULT_MAX_MINOR_SIZE))
    if max_minor_size < 2:
        raise ValueError("max_minor_size must be at least 2")
    out = []
    seen = set()

    def push(bino, kind, blocks_, size, label):
        if bino.is_zero() or bino.key() in seen:
            return
        seen.add(bino.key())
        out.append(
            Generator(
                poly=bino.to_poly(u),
                binomial=bino,
                kind=kind,
                blocks=tuple(sorted(set(blocks_))),
                size=size,
                label=label,
            )
        )

    E = pres.matrix
    if family == FULL:
        for bqm in binary_subquasi_enumerate(E, max_size=2 * max_minor_size):
            blocks_ = sorted(
                {pres.col_blocks[c][0] for _, c in bqm.cells if pres.col_blocks[c] is not None}
            )
            ncols = len(bqm.cols())
            for bino in quasi_determinants(bqm):
                push(
                    bino,
                    "binary",
                    blocks_,
                    ncols,
                    "binary quasi-minor on rows %s cols %s"
                    % (tuple(x + 1 for x in bqm.rows()), tuple(pres.col_label(c) for c in bqm.cols())),
                )
        return out

    # 1. sequence-linear relations: one per block column and row pair
    col_of = {}
    for c, tag in enumerate(pres.col_blocks):
        if tag is not None:
            col_of[tag[0], tag[1].js] = c
    for bd in pres.blocks:
        for it in bd.columns:
            c = col_of[bd.index, it.js]
            for ku, kw in combinations(bd.rows, 2):
                plus = _mono_of(u, (pres.s_vid(ku), bd.vids[it.shift(kw).js]))
                minus = _mono_of(u, (pres.s_vid(kw), bd.vids[it.shift(ku).js]))
                bino = Binomial(
                    plus,
                    minus,
                    plus_cells=((ku - 1, 0), (kw - 1, c)),
                    minus_cells=((kw - 1, 0), (ku - 1, c)),
                )
                push(
                    bino,
                    "seq-linear",
                    (bd.index,),
                    1,
                    "rows (%d,%d) of column %s against the sequence column"
                    % (ku, kw, pres.col_label(c)),
                )

    # 2. 2x2 minors using two columns of the same block
    for bd in pres.blocks:
        for ita, itb in combinations(bd.columns, 2):
            ca, cb = col_of[bd.index, ita.js], col_of[bd.index, itb.js]
            for ku, kw in combinations(bd.rows, 2):
                plus = _mono_of(u, (bd.vids[ita.shift(ku).js], bd.vids[itb.shift(kw).js]))
                minus = _mono_of(u, (bd.vids[ita.shift(kw).js], bd.vids[itb.shift(ku).js]))
                bino = Binomial(
                    plus,
                    minus,
                    plus_cells=((ku - 1, ca), (kw - 1, cb)),
                    minus_cells=((kw - 1, ca), (ku - 1, cb)),
                )
                push(
                    bino,
                    "block-2x2",
                    (bd.index,),
                    2,
                    "rows (%d,%d) cols %s,%s" % (ku, kw, pres.col_label(ca), pres.col_label(cb)),
                )

    # 3. single-cycle binary quasi-minors across distinct blocks
    tpart = QuasiMatrix(
        E.n_rows, E.n_cols, {cell: v for cell, v in E.entries.items() if cell[1] != 0}
    )
    for bqm in binary_subquasi_enumerate(tpart, max_size=2 * max_minor_size):
        if len(bqm.cycles) != 1:
            continue
        cols = bqm.cols()
        blocks_ = [pres.col_blocks[c][0] for c in cols]
        if len(set(blocks_)) != len(blocks_):
            continue
        for bino in quasi_determinants(bqm):
            push(
                bino,
                "multiblock-cycle",
                blocks_,
                len(cols),
                "cycle through rows %s cols %s"
                % (tuple(x + 1 for x in bqm.rows()), tuple(pres.col_label(c) for c in cols)),
            )
    return out


def generator_polys(pres, family=RESTRICTED, max_minor_size=None):
    return [g.poly for g in defining_generators(pres, family, max_minor_size)]


def reduce_by_family(pres, target, order=None, family=RESTRICTED, max_minor_size=None, strategy="first"):
    """Top-reduce ``target`` by the chosen family; the returned certificate
    replays the division exactly."""
    from .grobner import top_reduce

    if order is None:
        order = MonomialOrder(pres.universe, "lex")
    gens = generator_polys(pres, family, max_minor_size)
    return top_reduce(target, gens, order, strategy=strategy)


# --- squarefreeness / normality report ------------------------------------


@dataclass
class NormalityReport:
    verdict: str  # "NORMAL_CM" | "INDETERMINATE"
    structural_ok: bool
    structural_failures: list
    symbol_results: dict
    hypothesis_ok: bool
    notes: list

    def summary(self):
        lines = ["verdict: %s" % self.verdict]
        lines.append(
            "structural squarefreeness (distinct columns per term, sequence part squarefree): %s"
            % ("pass" if self.structural_ok else "FAIL")
        )
        for desc, ok in self.symbol_results.items():
            lines.append("symbol-level squarefree leading terms under %s: %s" % (desc, "pass" if ok else "no"))
        lines.append("regularity hypothesis attested: %s" % ("yes" if self.hypothesis_ok else "no"))
        for note in self.notes:
            lines.append("note: %s" % note)
        return "\n".join(lines)


def _term_structural_ok(universe, mono, cells):
    if cells:
        cols = [c for _, c in cells]
        if len(set(cols)) != len(cols):
            return False
    return all(e <= 1 for v, e in mono.exps if v in universe.s_idset)


def normality_report(pres, family=RESTRICTED, max_minor_size=None, orders=None):
    """Squarefreeness-based normality/Cohen-Macaulayness report.

    The structural test asks that each term of each generator use distinct
    matrix columns and a squarefree sequence part; this is what the
    normality argument needs.  Leading terms as monomials in the variables
    may still fail symbol-level squarefreeness (repeated variables occur
    whenever a block power exceeds one), so the symbol results are
    reported but do not gate the verdict.
    """
    u = pres.universe
    gens = defining_generators(pres, family, max_minor_size)
    failures = []
    for g in gens:
        b = g.binomial
        if not _term_structural_ok(u, b.plus, b.plus_cells) or not _term_structural_ok(
            u, b.minus, b.minus_cells
        ):
            failures.append(g)
    structural_ok = not failures
    if orders is None:
        orders = [MonomialOrder(u, "lex"), MonomialOrder(u, "grevlex")]
    symbol_results = {}
    for order in orders:
        ok = True
        for g in gens:
            lc, lm = leading(g.poly, order)
            if not lm.is_squarefree():
                ok = False
                break
            smono = lc.terms[0][0] if len(lc.terms) == 1 else None
            if smono is not None and not smono.is_squarefree():
                ok = False
                break
        symbol_results[order.describe()] = ok
    seq = pres.spec.seq
    if seq.mode == "generic":
        hypothesis_ok = True
    else:
        hypothesis_ok = seq.assume_weak_regular or seq.squarefree_monomial_values()
    notes = pres.spec.lint()
    if not gens:
        notes.append("no relations: the presentation ring maps isomorphically")
    verdict = "NORMAL_CM" if (structural_ok and hypothesis_ok) else "INDETERMINATE"
    return NormalityReport(
        verdict=verdict,
        structural_ok=structural_ok,
        structural_failures=failures,
        symbol_results=symbol_results,
        hypothesis_ok=hypothesis_ok,
        notes=notes,
    )
