"""The fixed weak regular sequence as formal data.

SMonomials are formal exponent vectors over the sequence symbols; their
arithmetic never looks at concrete values.  This module also carries the
Taylor complex of a monomial list and the pairwise first syzygies, which
serve as independent witnesses for the sequence axioms used elsewhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .poly import GuardExceeded, SpecError

MAX_TAYLOR_GENERATORS = 12


class SMonomial:
    """Formal monomial in the sequence symbols: a tuple of exponents."""

    __slots__ = ("exps",)

    def __init__(self, exps):
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        self.exps = exps

    @classmethod
    def one(cls, n):
        return cls((0,) * n)

    @classmethod
    def gen(cls, n, i):
        """The i-th sequence symbol (1-based) as an SMonomial."""
        return cls(tuple(1 if k == i - 1 else 0 for k in range(n)))

    @property
    def n(self):
        return len(self.exps)

    def degree(self):
        return sum(self.exps)

    def support(self):
        return tuple(i + 1 for i, e in enumerate(self.exps) if e)

    def is_one(self):
        return not any(self.exps)

    def mul(self, other):
        self._check(other)
        return SMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    __mul__ = mul

    def divides(self, other):
        self._check(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def div(self, other):
        self._check(other)
        if not other.divides(self):
            raise ValueError("not divisible")
        return SMonomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def is_squarefree(self):
        return all(e <= 1 for e in self.exps)

    def _check(self, other):
        if len(self.exps) != len(other.exps):
            raise ValueError("sequence length mismatch: %d vs %d" % (len(self.exps), len(other.exps)))

    def __eq__(self, other):
        return isinstance(other, SMonomial) and self.exps == other.exps

    def __lt__(self, other):
        self._check(other)
        return self.exps < other.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return "SMonomial(%r)" % (self.exps,)


def s_lcm(a, b):
    a._check(b)
    return SMonomial(tuple(max(x, y) for x, y in zip(a.exps, b.exps)))


def s_gcd(a, b):
    a._check(b)
    return SMonomial(tuple(min(x, y) for x, y in zip(a.exps, b.exps)))


@dataclass(frozen=True)
class SeqSpec:
    """Description of the ambient sequence s_1,...,s_n.

    ``concrete_terms`` gives, per symbol, the value as a list of
    (integer coefficient, {x-name: exponent}) terms; generic mode leaves it
    empty.  Weak regularity of concrete values is an attestation, not a
    decidable check here.
    """

    n: int
    mode: str = "generic"  # "generic" | "concrete"
    names: tuple = ()
    x_names: tuple = ()
    concrete_terms: tuple = ()
    assume_weak_regular: bool = False

    def __post_init__(self):
        if self.mode not in ("generic", "concrete"):
            raise SpecError("mode must be generic or concrete")
        if self.n < 1:
            raise SpecError("need at least one sequence element")
        names = tuple(self.names) if self.names else tuple("s%d" % (i + 1) for i in range(self.n))
        if len(names) != self.n:
            raise SpecError("expected %d sequence names" % self.n)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "x_names", tuple(self.x_names))
        if self.mode == "concrete":
            if len(self.concrete_terms) != self.n:
                raise SpecError("expected %d concrete values" % self.n)
            terms = tuple(tuple((int(c), dict(m)) for c, m in val) for val in self.concrete_terms)
            object.__setattr__(self, "concrete_terms", terms)
            for i, val in enumerate(terms):
                if not val:
                    raise SpecError("s%d is zero" % (i + 1))
                if self._is_unit(val):
                    raise SpecError("s%d is a unit; the sequence must be non-invertible" % (i + 1))
                for _, m in val:
                    for xn in m:
                        if xn not in self.x_names:
                            raise SpecError("unknown ambient variable %r" % xn)
        elif self.concrete_terms:
            raise SpecError("generic mode takes no concrete values")

    @staticmethod
    def _is_unit(val):
        return len(val) == 1 and abs(val[0][0]) == 1 and not any(val[0][1].values())

    def lint(self):
        """Non-fatal oddities worth surfacing in reports."""
        notes = []
        if self.mode == "concrete":
            seen = {}
            for i, val in enumerate(self.concrete_terms):
                key = tuple(sorted((c, tuple(sorted(m.items()))) for c, m in val))
                if key in seen:
                    notes.append("s%d and s%d have identical values" % (seen[key] + 1, i + 1))
                else:
                    seen[key] = i
            if not self.assume_weak_regular and not self.squarefree_monomial_values():
                notes.append("weak regularity of the concrete values is not attested")
        return notes

    def concrete_monomial_values(self):
        """Per-symbol (coeff, {x: e}) when each value is a single term, else None."""
        if self.mode != "concrete":
            return None
        out = []
        for val in self.concrete_terms:
            if len(val) != 1:
                return None
            out.append(val[0])
        return out

    def squarefree_monomial_values(self):
        """True when every value is a monic squarefree x-monomial and the
        supports are pairwise disjoint, which makes the sequence a
        permutable regular sequence of squarefree monomials."""
        vals = self.concrete_monomial_values()
        if vals is None:
            return False
        used = set()
        for coeff, m in vals:
            if coeff != 1 or not m or any(e > 1 for e in m.values()):
                return False
            sup = set(m)
            if used & sup:
                return False
            used |= sup
        return True


@dataclass
class TaylorComplex:
    """Taylor complex of a list of SMonomials.

    ``basis(p)`` lists the p-subsets of generator indices; the
    differential entry at (J minus its r-th element, J) is
    (-1)^(r-1) * lcm(J)/lcm(J minus r-th).
    """

    generators: tuple
    _lcms: dict = field(default_factory=dict, repr=False)

    @property
    def m(self):
        return len(self.generators)

    def rank(self, p):
        return comb(self.m, p)

    def basis(self, p):
        return list(combinations(range(self.m), p))

    def lcm_of(self, subset):
        subset = tuple(subset)
        got = self._lcms.get(subset)
        if got is None:
            n = self.generators[0].n if self.generators else 0
            got = SMonomial.one(n)
            for i in subset:
                got = s_lcm(got, self.generators[i])
            self._lcms[subset] = got
        return got

    def differential(self, p):
        """Sparse matrix of d_p as {(row_subset, col_subset): (sign, SMonomial)}."""
        if not 1 <= p <= self.m:
            raise ValueError("differential index out of range")
        entries = {}
        for col in combinations(range(self.m), p):
            u = self.lcm_of(col)
            for r in range(p):
                row = col[:r] + col[r + 1:]
                sign = -1 if r % 2 else 1
                entries[(row, col)] = (sign, u.div(self.lcm_of(row)))
        return entries

    def dd_is_zero(self, p):
        """Check d_(p-1) o d_p = 0 by formal expansion."""
        d1 = self.differential(p)
        d0 = self.differential(p - 1)
        acc = {}
        for (mid, col), (sg1, m1) in d1.items():
            for r in range(len(mid)):
                row = mid[:r] + mid[r + 1:]
                sg0, m0 = d0[(row, mid)]
                key = (row, col, m0.mul(m1))
                acc[key] = acc.get(key, 0) + sg0 * sg1
        return all(v == 0 for v in acc.values())

    def verify(self):
        return all(self.dd_is_zero(p) for p in range(2, self.m + 1))


def taylor_complex(gens, max_generators=MAX_TAYLOR_GENERATORS):
    gens = tuple(gens)
    if len(gens) > max_generators:
        raise GuardExceeded("Taylor complex limited to %d generators" % max_generators)
    if gens:
        n = gens[0].n
        for g in gens:
            if g.n != n:
                raise ValueError("sequence length mismatch")
    return TaylorComplex(generators=gens)


def syzygy_generators(gens):
    """The pairwise syzygies of a monomial list: for i < j the vector with
    lcm/gen_i at slot i and -lcm/gen_j at slot j.  Returned as tuples of
    (sign, SMonomial) or None per coordinate."""
    gens = tuple(gens)
    out = []
    for i, j in combinations(range(len(gens)), 2):
        u = s_lcm(gens[i], gens[j])
        vec = [None] * len(gens)
        vec[i] = (1, u.div(gens[i]))
        vec[j] = (-1, u.div(gens[j]))
        out.append(tuple(vec))
    return out
