"""Independent degree-bounded kernel check for a presentation.

The presentation map sends monomials to monomials (generic mode always;
concrete mode whenever the sequence values are monomials), so each
finite graded piece of the kernel is spanned by scaled differences of
source monomials with equal image.  This module enumerates a piece,
computes that kernel basis directly from the fibers of the map, and
compares it against the span of all generator multiples of matching
degree — no Groebner machinery involved, which is the point: it is an
independent witness that a candidate family generates the kernel up to
the chosen degree bounds.

Grading: a piece is indexed by the tuple of block degrees (how many T
variables of each block) together with the total ambient degree of the
image (sequence symbols count 1, a block-l variable counts a_l in
generic mode, the degree of its monomial value in concrete mode).  The
map preserves both, and every piece is finite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product

from .poly import CapExceeded, Mono, Poly, SpecError
from .sseq import SMonomial, syzygy_generators

DEFAULT_T_CAP = 3
DEFAULT_PIECE_CAP = 20000


def _block_f_vids(pres):
    """Per block, the presentation-ring variable ids, in id order."""
    out = []
    for bd in pres.blocks:
        vids = sorted(v for v in bd.vids.values() if v in pres.f_idset)
        out.append(tuple(vids))
    return out


class ImageData:
    """Precomputed monomial images and weights for one presentation."""

    def __init__(self, pres):
        self.pres = pres
        u = pres.universe
        seq = pres.spec.seq
        if seq.mode == "generic":
            self.ambient_ids = u.s_ids
            base = {u.s_ids[i]: ((u.s_ids[i], 1),) for i in range(seq.n)}
            coeffs = {u.s_ids[i]: 1 for i in range(seq.n)}
        else:
            vals = seq.concrete_monomial_values()
            if vals is None:
                raise SpecError(
                    "the kernel oracle needs monomial sequence values in concrete mode"
                )
            self.ambient_ids = u.x_ids
            base, coeffs = {}, {}
            for i, (c, mexp) in enumerate(vals):
                base[u.s_ids[i]] = tuple((u.vid(xn), e) for xn, e in sorted(mexp.items()) if e)
                coeffs[u.s_ids[i]] = c
        self.t_weight = {}
        self.t_image = {}
        self.t_coeff = {}
        for vid, (l, it) in pres.var_block.items():
            acc = {}
            coeff = 1
            for i, e in enumerate(it.s_exponents()):
                if not e:
                    continue
                svid = u.s_ids[i]
                coeff *= coeffs[svid] ** e
                for xv, xe in base[svid]:
                    acc[xv] = acc.get(xv, 0) + xe * e
            acc[u.t_ids[l - 1]] = 1
            self.t_image[vid] = tuple(sorted(acc.items()))
            self.t_coeff[vid] = coeff
            self.t_weight[vid] = sum(e for v, e in self.t_image[vid] if v != u.t_ids[l - 1])
        self.min_block_weight = [
            min(self.t_weight[v] for v in vids) if vids else 0 for vids in _block_f_vids(pres)
        ]

    def image(self, mono):
        """(coefficient, image monomial) of a source monomial."""
        acc = {}
        coeff = 1
        for vid, e in mono.exps:
            img = self.t_image.get(vid)
            if img is None:
                acc[vid] = acc.get(vid, 0) + e
            else:
                coeff *= self.t_coeff[vid] ** e
                for v, xe in img:
                    acc[v] = acc.get(v, 0) + xe * e
        return coeff, Mono(tuple(acc.items()))

    def degree(self, mono):
        """(block degree tuple, ambient weight) of a source monomial."""
        r = self.pres.spec.r
        tvec = [0] * r
        weight = 0
        for vid, e in mono.exps:
            info = self.pres.var_block.get(vid)
            if info is None:
                weight += e
            else:
                tvec[info[0] - 1] += e
                weight += self.t_weight[vid] * e
        return tuple(tvec), weight

    def poly_degree(self, p):
        degs = {self.degree(m) for m, _ in p.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous for the oracle grading")
        return degs.pop()

    def evaluate(self, p):
        """Rewrite a formal generator over the ambient ring the oracle
        enumerates: in concrete mode sequence symbols become their values."""
        if self.pres.spec.seq.mode == "concrete":
            return p.substitute(self.pres.s_values())
        return p


def source_monomials(pres, tvec, weight, image_data=None, cap=None):
    """Every presentation-ring monomial of the given degree."""
    data = image_data or ImageData(pres)
    if len(tvec) != pres.spec.r or any(d < 0 for d in tvec):
        raise ValueError("block degree tuple must list %d nonnegative entries" % pres.spec.r)
    block_vids = _block_f_vids(pres)
    parts = []
    for vids, d in zip(block_vids, tvec):
        if d == 0:
            parts.append([()])
        elif not vids:
            return []
        else:
            parts.append(list(combinations_with_replacement(vids, d)))
    out = []
    for combo in product(*parts):
        tpairs = {}
        base_weight = 0
        for piece in combo:
            for vid in piece:
                tpairs[vid] = tpairs.get(vid, 0) + 1
                base_weight += data.t_weight[vid]
        rest = weight - base_weight
        if rest < 0:
            continue
        for amb in combinations_with_replacement(data.ambient_ids, rest):
            pairs = dict(tpairs)
            for vid in amb:
                pairs[vid] = pairs.get(vid, 0) + 1
            out.append(Mono(tuple(pairs.items())))
            if cap is not None and len(out) > cap:
                raise CapExceeded(
                    "degree piece %r/%d exceeds the cap of %d monomials" % (tvec, weight, cap)
                )
    return out


@dataclass
class KernelPiece:
    tvec: tuple
    weight: int
    monomials: list
    basis: list  # vectors as {monomial index: Fraction}

    @property
    def dim(self):
        return len(self.basis)

    def vector_to_poly(self, universe, vec):
        return universe.from_terms([(self.monomials[i], c) for i, c in vec.items()])


def kernel_piece(pres, tvec, weight, image_data=None, cap=DEFAULT_PIECE_CAP):
    """Basis of the kernel of the presentation map on one graded piece,
    computed straight from the fibers (no generators involved)."""
    data = image_data or ImageData(pres)
    monos = source_monomials(pres, tvec, weight, data, cap=cap)
    fibers = {}
    for i, m in enumerate(monos):
        coeff, img = data.image(m)
        fibers.setdefault(img, []).append((i, coeff))
    basis = []
    for img in sorted(fibers, key=lambda m: m.exps):
        group = fibers[img]
        if len(group) < 2:
            continue
        i0, c0 = group[0]
        for i, c in group[1:]:
            basis.append({i0: Fraction(c), i: Fraction(-c0)})
    return KernelPiece(tuple(tvec), weight, monos, basis)


class Echelon:
    """Incremental exact row echelon over the rationals, sparse rows."""

    def __init__(self):
        self.pivots = {}

    def _reduce(self, vec):
        v = {c: Fraction(x) for c, x in vec.items() if x}
        while v:
            c = min(v)
            row = self.pivots.get(c)
            if row is None:
                return v, c
            coef = v.pop(c)
            for cc, val in row.items():
                if cc == c:
                    continue
                nv = v.get(cc, Fraction(0)) - coef * val
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        return v, None

    def insert(self, vec):
        """Add a vector; True if it enlarged the span."""
        v, c = self._reduce(vec)
        if c is None:
            return False
        lead = v[c]
        self.pivots[c] = {cc: val / lead for cc, val in v.items()}
        return True

    def residual(self, vec):
        """The reduced form of ``vec``; empty means it lies in the span."""
        v, _ = self._reduce(vec)
        return v

    @property
    def rank(self):
        return len(self.pivots)


@dataclass
class SpanReport:
    tvec: tuple
    weight: int
    piece_size: int
    kernel_dim: int
    span_dim: int
    multiples: int
    ok: bool
    witness: Poly | None = None

    def line(self):
        verdict = "ok" if self.ok else "MISSED"
        return "degrees t=%s ambient=%d: piece %d, kernel dim %d, family span %d [%s]" % (
            self.tvec,
            self.weight,
            self.piece_size,
            self.kernel_dim,
            self.span_dim,
            verdict,
        )


def span_compare(pres, generators, tvec, weight, image_data=None, cap=DEFAULT_PIECE_CAP):
    """Compare the kernel piece with the span of generator multiples.

    ``generators`` are polynomials (or objects with ``.poly``).  Returns a
    SpanReport; when the family misses part of the kernel the report
    carries a concrete witness polynomial, which maps to zero but is not a
    generator combination in this degree.
    """
    data = image_data or ImageData(pres)
    piece = kernel_piece(pres, tvec, weight, data, cap=cap)
    index = {m: i for i, m in enumerate(piece.monomials)}
    ech = Echelon()
    n_multiples = 0
    for g in generators:
        p = data.evaluate(getattr(g, "poly", g))
        if p.is_zero():
            continue
        gt, gw = data.poly_degree(p)
        dt = tuple(a - b for a, b in zip(tvec, gt))
        dw = weight - gw
        if any(d < 0 for d in dt) or dw < 0:
            continue
        for mult in source_monomials(pres, dt, dw, data):
            vec = {}
            for m, c in p.terms:
                i = index.get(m.mul(mult))
                if i is None:
                    raise ValueError(
                        "generator leaves the enumerated presentation ring; "
                        "it uses variables outside the block membership sets"
                    )
                vec[i] = vec.get(i, 0) + c
            n_multiples += 1
            ech.insert(vec)
    span_dim = ech.rank
    witness = None
    ok = True
    for v in piece.basis:
        res = ech.residual(v)
        if res:
            ok = False
            witness = piece.vector_to_poly(pres.universe, res)
            break
    return SpanReport(
        tvec=tuple(tvec),
        weight=weight,
        piece_size=len(piece.monomials),
        kernel_dim=piece.dim,
        span_dim=span_dim,
        multiples=n_multiples,
        ok=ok,
        witness=witness,
    )


def default_degrees(pres, t_cap=None, ambient_cap=None, image_data=None):
    """The default sweep: block degrees summing to at most ``t_cap``
    (default 3), ambient weight up to ``ambient_cap`` (default three times
    the largest block power, plus two)."""
    data = image_data or ImageData(pres)
    r = pres.spec.r
    if t_cap is None:
        t_cap = DEFAULT_T_CAP
    if ambient_cap is None:
        ambient_cap = 3 * max(bd.power for bd in pres.blocks) + 2
    out = []
    for total in range(1, t_cap + 1):
        for tvec in _compositions(total, r):
            base = sum(d * w for d, w in zip(tvec, data.min_block_weight))
            for weight in range(base, ambient_cap + 1):
                out.append((tvec, weight))
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class OracleReport:
    reports: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.reports)

    @property
    def failures(self):
        return [r for r in self.reports if not r.ok]

    def summary(self):
        lines = [
            "kernel oracle over %d graded pieces: %s"
            % (len(self.reports), "ok" if self.ok else "%d MISSED" % len(self.failures))
        ]
        for r in self.reports:
            lines.append("  " + r.line())
        return "\n".join(lines)


def oracle_check(pres, generators, degrees=None, t_cap=None, ambient_cap=None, cap=DEFAULT_PIECE_CAP):
    """Run span_compare over a degree sweep; certifies that the family
    spans the kernel in every listed degree."""
    data = ImageData(pres)
    if degrees is None:
        degrees = default_degrees(pres, t_cap=t_cap, ambient_cap=ambient_cap, image_data=data)
    report = OracleReport()
    for tvec, weight in degrees:
        report.reports.append(span_compare(pres, generators, tvec, weight, data, cap=cap))
    return report


# --- syzygies of a plain monomial list -------------------------------------


def monomial_syzygy_kernel(gens, degree):
    """Basis of the total-degree-``degree`` piece of the syzygy module of a
    monomial list: vectors with one monomial entry per slot whose weighted
    images sum to zero.  Slot ``i`` carries monomials of degree
    ``degree - gens[i].degree()``.

    Because each slot maps monomials to monomials, the piece splits over
    the fibers of the map: each target monomial with k preimages
    contributes k - 1 differences.  Basis vectors are dicts
    ``{(slot, multiplier): +-1}`` with SMonomial multipliers."""
    gens = tuple(gens)
    if not gens:
        return []
    n = gens[0].n
    for u in gens:
        u._check(gens[0])
    basis = []
    for exps in _compositions(degree, n):
        w = SMonomial(exps)
        fiber = [(i, w.div(u)) for i, u in enumerate(gens) if u.divides(w)]
        for other in fiber[1:]:
            basis.append({fiber[0]: 1, other: -1})
    return basis


@dataclass
class SyzygyDegreeReport:
    degree: int
    kernel_dim: int
    span_dim: int

    @property
    def ok(self):
        return self.kernel_dim == self.span_dim

    def line(self):
        return "degree %d: kernel dim %d, pairwise span dim %d -> %s" % (
            self.degree,
            self.kernel_dim,
            self.span_dim,
            "ok" if self.ok else "MISSED",
        )


def syzygy_span_compare(gens, max_degree):
    """Per total degree up to ``max_degree``, compare the syzygy kernel of
    a monomial list against the span of monomial multiples of the pairwise
    syzygies.  The pairwise span always sits inside the kernel (each
    pairwise vector maps to zero), so dimension equality certifies that
    the pairwise syzygies generate up to the bound."""
    gens = tuple(gens)
    if not gens:
        return []
    n = gens[0].n
    pairwise = syzygy_generators(gens)
    out = []
    for degree in range(max_degree + 1):
        kernel_dim = len(monomial_syzygy_kernel(gens, degree))
        ech = Echelon()
        for vec in pairwise:
            sz_degree = None
            for slot, entry in enumerate(vec):
                if entry is not None:
                    sz_degree = entry[1].degree() + gens[slot].degree()
                    break
            rest = degree - sz_degree
            if rest < 0:
                continue
            for mexps in _compositions(rest, n):
                mult = SMonomial(mexps)
                row = {}
                image = {}
                for slot, entry in enumerate(vec):
                    if entry is None:
                        continue
                    sign, mono = entry
                    shifted = mono.mul(mult)
                    row[(slot, shifted)] = Fraction(sign)
                    target = shifted.mul(gens[slot])
                    image[target] = image.get(target, 0) + sign
                if any(image.values()):
                    raise ValueError("pairwise syzygy multiple does not map to zero")
                ech.insert(row)
        out.append(SyzygyDegreeReport(degree=degree, kernel_dim=kernel_dim, span_dim=ech.rank))
    return out
