"""Degree-bounded kernel oracle.

The oracle is itself a checking device, so these tests lean on a second,
fully independent implementation: sympy's exact nullspace for kernel
dimensions, and raw exponent-vector enumeration for degree pieces.  A
deliberately broken family (one generator dropped) must be caught with a
concrete witness polynomial that really lies in the kernel.
"""
from fractions import Fraction
from itertools import product
from random import Random

import pytest
import sympy

from multirees.oracle import (
    Echelon,
    ImageData,
    default_degrees,
    kernel_piece,
    monomial_syzygy_kernel,
    oracle_check,
    source_monomials,
    span_compare,
    syzygy_span_compare,
)
from multirees.poly import CapExceeded, Mono, SpecError
from multirees.rees import FULL, RESTRICTED, ReesSpec, build_presentation, defining_generators
from multirees.sseq import SMonomial, SeqSpec, syzygy_generators


@pytest.fixture(scope="module")
def paper():
    seq = SeqSpec(n=4, names=("p1", "p2", "x", "y"))
    spec = ReesSpec(
        seq=seq,
        blocks=(((1, 2), 1), ((1, 3), 1), ((2, 3), 1), ((1, 4), 1), ((2, 4), 1)),
    )
    return build_presentation(spec)


@pytest.fixture(scope="module")
def small():
    # two symbols, one block of power two: tiny enough for brute force
    spec = ReesSpec(seq=SeqSpec(n=2), blocks=(((1, 2), 2),))
    return build_presentation(spec)


def brute_source_monomials(pres, data, tvec, weight):
    """Independent enumeration: all exponent vectors over the presentation
    variables plus ambient symbols, filtered by the oracle grading."""
    u = pres.universe
    f_vids = sorted(pres.f_idset)
    amb = list(data.ambient_ids)
    t_total = sum(tvec)
    out = set()
    for t_exps in product(range(t_total + 1), repeat=len(f_vids)):
        if sum(t_exps) != t_total:
            continue
        for a_exps in product(range(weight + 1), repeat=len(amb)):
            pairs = [(v, e) for v, e in zip(f_vids, t_exps) if e]
            pairs += [(v, e) for v, e in zip(amb, a_exps) if e]
            m = Mono(tuple(pairs))
            if data.degree(m) == (tuple(tvec), weight):
                out.add(m)
    return out


def sympy_kernel_dim(data, monos):
    """Kernel dimension of the presentation map on a monomial list, via an
    exact sympy nullspace — no fiber shortcut."""
    targets = {}
    cols = []
    for m in monos:
        coeff, img = data.image(m)
        targets.setdefault(img, len(targets))
        cols.append((targets[img], coeff))
    mat = sympy.zeros(len(targets), len(monos))
    for j, (row, coeff) in enumerate(cols):
        mat[row, j] = coeff
    return len(mat.nullspace())


class TestImageData:
    def test_generic_variable_image(self, paper):
        data = ImageData(paper)
        u = paper.universe
        vid = u.vid("T[1;110]")
        coeff, img = data.image(Mono(((vid, 1),)))
        assert coeff == 1
        # js (0,1,1) gives step exponents (0,1,0,0) over p1,p2,x,y, then t_1
        expected = {u.vid("p2"): 1, u.t_ids[0]: 1}
        assert dict(img.exps) == expected

    def test_image_is_multiplicative(self, paper):
        data = ImageData(paper)
        u = paper.universe
        a = Mono(((u.vid("T[1;110]"), 1),))
        b = Mono(((u.vid("T[2;100]"), 2), (u.vid("p1"), 1)))
        ca, ia = data.image(a)
        cb, ib = data.image(b)
        cab, iab = data.image(a.mul(b))
        assert cab == ca * cb
        assert iab == ia.mul(ib)

    def test_degree_splits_blocks_and_weight(self, paper):
        data = ImageData(paper)
        u = paper.universe
        m = Mono(((u.vid("T[1;110]"), 1), (u.vid("T[3;100]"), 2), (u.vid("p1"), 3)))
        tvec, weight = data.degree(m)
        assert tvec == (1, 0, 2, 0, 0)
        # each power-one variable weighs 1, plus three ambient symbols
        assert weight == 1 + 2 + 3

    def test_poly_degree_rejects_mixed(self, paper):
        data = ImageData(paper)
        u = paper.universe
        p = u.poly_var("T[1;110]") + u.poly_var("p1")
        with pytest.raises(ValueError):
            data.poly_degree(p)

    def test_generator_images_vanish(self, paper):
        data = ImageData(paper)
        for g in defining_generators(paper, RESTRICTED):
            images = {}
            for m, c in g.poly.terms:
                coeff, img = data.image(m)
                images[img] = images.get(img, 0) + c * coeff
            assert all(v == 0 for v in images.values())

    def test_concrete_values_carry_coefficients(self):
        seq = SeqSpec(
            n=3,
            mode="concrete",
            x_names=("x",),
            concrete_terms=(((2, {}),), ((3, {}),), ((1, {"x": 1}),)),
        )
        spec = ReesSpec(seq=seq, blocks=(((1, 2), 1), ((2, 3), 1)))
        pres = build_presentation(spec)
        data = ImageData(pres)
        u = pres.universe
        # js (1,1) has step exponents (1,0,0): it picks up symbol 1, value 2
        vid = pres.block(1).vids[(1, 1)]
        coeff, img = data.image(Mono(((vid, 1),)))
        assert coeff == 2
        assert dict(img.exps) == {u.t_ids[0]: 1}

    def test_non_monomial_concrete_value_rejected(self):
        seq = SeqSpec(
            n=2,
            mode="concrete",
            x_names=("x", "y"),
            concrete_terms=(((1, {"x": 1}), (1, {"y": 1})), ((1, {"y": 1}),)),
        )
        spec = ReesSpec(seq=seq, blocks=(((1, 2), 1),))
        pres = build_presentation(spec)
        with pytest.raises(SpecError):
            ImageData(pres)


class TestSourceMonomials:
    def test_matches_brute_force(self, small):
        data = ImageData(small)
        for tvec in [(0,), (1,), (2,)]:
            for weight in range(0, 5):
                got = source_monomials(small, tvec, weight, data)
                assert len(set(got)) == len(got)
                assert set(got) == brute_source_monomials(small, data, tvec, weight)

    def test_matches_brute_force_two_blocks(self, paper):
        data = ImageData(paper)
        for tvec in [(1, 0, 0, 1, 0), (0, 1, 1, 0, 0)]:
            got = source_monomials(paper, tvec, 2, data)
            assert set(got) == brute_source_monomials(paper, data, tvec, 2)

    def test_degree_validation(self, small):
        with pytest.raises(ValueError):
            source_monomials(small, (1, 1), 2)
        with pytest.raises(ValueError):
            source_monomials(small, (-1,), 2)

    def test_cap_enforced(self, paper):
        with pytest.raises(CapExceeded):
            source_monomials(paper, (1, 1, 1, 0, 0), 4, cap=3)


class TestKernelPiece:
    def test_dim_matches_sympy_nullspace(self, small):
        data = ImageData(small)
        for tvec in [(1,), (2,), (3,)]:
            for weight in range(0, 7):
                piece = kernel_piece(small, tvec, weight, data)
                assert piece.dim == sympy_kernel_dim(data, piece.monomials)

    def test_dim_matches_sympy_on_paper_example(self, paper):
        data = ImageData(paper)
        for tvec, weight in [((1, 1, 0, 0, 0), 2), ((1, 0, 1, 1, 0), 3), ((2, 0, 0, 0, 0), 2)]:
            piece = kernel_piece(paper, tvec, weight, data)
            assert piece.dim == sympy_kernel_dim(data, piece.monomials)

    def test_basis_vectors_map_to_zero(self, paper):
        data = ImageData(paper)
        piece = kernel_piece(paper, (1, 1, 1, 0, 0), 3, data)
        assert piece.dim > 0
        for vec in piece.basis:
            images = {}
            for i, c in vec.items():
                coeff, img = data.image(piece.monomials[i])
                images[img] = images.get(img, 0) + c * coeff
            assert all(v == 0 for v in images.values())


class TestEchelon:
    def test_rank_and_membership(self):
        ech = Echelon()
        assert ech.insert({0: Fraction(1), 1: Fraction(2)})
        assert ech.insert({1: Fraction(1)})
        # dependent on the first two
        assert not ech.insert({0: Fraction(3), 1: Fraction(1)})
        assert ech.rank == 2
        assert ech.residual({0: Fraction(5)}) == {}
        assert ech.residual({2: Fraction(1)}) != {}

    def test_matches_sympy_rank_on_random_matrices(self):
        rng = Random(7)
        for _ in range(20):
            rows = [
                {j: rng.randint(-2, 2) for j in range(5) if rng.random() < 0.6}
                for _ in range(6)
            ]
            ech = Echelon()
            for row in rows:
                ech.insert(row)
            mat = sympy.Matrix([[row.get(j, 0) for j in range(5)] for row in rows])
            assert ech.rank == mat.rank()


class TestSpanCompare:
    def test_restricted_family_spans(self, paper):
        gens = defining_generators(paper, RESTRICTED)
        report = span_compare(paper, gens, (1, 1, 0, 1, 0), 3)
        assert report.ok
        assert report.kernel_dim == report.span_dim or report.span_dim >= report.kernel_dim

    def test_dropped_generator_is_caught(self, paper):
        gens = defining_generators(paper, RESTRICTED)
        cycles = [g for g in gens if g.kind == "multiblock-cycle"]
        broken = [g for g in gens if g is not cycles[0]]
        report = oracle_check(paper, broken, t_cap=3, ambient_cap=4)
        assert not report.ok
        bad = report.failures[0]
        assert bad.witness is not None
        witness = bad.witness
        assert not witness.is_zero()
        # the witness genuinely lies in the kernel of the presentation map
        assert paper.phi(witness).is_zero()

    def test_witness_outside_broken_span(self, paper):
        gens = defining_generators(paper, RESTRICTED)
        cycles = [g for g in gens if g.kind == "multiblock-cycle"]
        broken = [g for g in gens if g is not cycles[0]]
        report = oracle_check(paper, broken, t_cap=3, ambient_cap=4)
        bad = report.failures[0]
        # the full family still covers the missed piece
        again = span_compare(paper, gens, bad.tvec, bad.weight)
        assert again.ok

    def test_stray_variable_rejected(self, paper):
        u = paper.universe
        # T[3;111] has support outside block 3's membership set, so it is
        # not part of the presentation ring the oracle enumerates
        p = u.poly_var("T[3;111]") - u.poly_var("T[3;100]")
        with pytest.raises(ValueError):
            span_compare(paper, [p], (0, 0, 1, 0, 0), 1)


class TestOracleCheck:
    def test_paper_example_both_families(self, paper):
        for family in (RESTRICTED, FULL):
            gens = defining_generators(paper, family)
            report = oracle_check(paper, gens, t_cap=2, ambient_cap=3)
            assert report.ok, report.summary()

    def test_default_degrees_respect_caps(self, small):
        degrees = default_degrees(small, t_cap=2, ambient_cap=5)
        assert degrees
        for tvec, weight in degrees:
            assert 1 <= sum(tvec) <= 2
            assert weight <= 5
        # block of power two: one T variable needs ambient weight two
        assert min(w for t, w in degrees if t == (1,)) == 2

    def test_summary_mentions_every_piece(self, small):
        gens = defining_generators(small, RESTRICTED)
        report = oracle_check(small, gens, t_cap=2, ambient_cap=4)
        assert report.ok
        assert report.summary().count("degrees t=") == len(report.reports)

    def test_concrete_mode_end_to_end(self):
        seq = SeqSpec(
            n=3,
            mode="concrete",
            x_names=("x", "y"),
            concrete_terms=(((1, {"x": 1}),), ((1, {"y": 1}),), ((2, {}),)),
        )
        spec = ReesSpec(seq=seq, blocks=(((1, 2), 1), ((2, 3), 1)))
        pres = build_presentation(spec)
        gens = defining_generators(pres, RESTRICTED)
        report = oracle_check(pres, gens, t_cap=2, ambient_cap=4)
        assert report.ok, report.summary()

    def test_piece_cap_propagates(self, paper):
        gens = defining_generators(paper, RESTRICTED)
        with pytest.raises(CapExceeded):
            oracle_check(paper, gens, t_cap=3, ambient_cap=4, cap=5)


def brute_syzygy_kernel_dim(gens, degree):
    """Kernel dimension over the rationals of the map sending a slot
    monomial m at slot i to m * gens[i], by sympy nullspace."""
    cols = []
    targets = {}
    n = gens[0].n
    for i, g in enumerate(gens):
        rest = degree - g.degree()
        if rest < 0:
            continue
        for exps in _all_exps(rest, n):
            target = g.mul(SMonomial(exps))
            targets.setdefault(target, len(targets))
            cols.append(targets[target])
    if not cols:
        return 0
    mat = sympy.zeros(len(targets), len(cols))
    for j, row in enumerate(cols):
        mat[row, j] = 1
    return len(mat.nullspace())


def _all_exps(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _all_exps(total - first, parts - 1):
            yield (first,) + rest


class TestMonomialSyzygies:
    def test_kernel_dim_matches_sympy(self):
        rng = Random(11)
        for _ in range(10):
            n = rng.randint(2, 3)
            m = rng.randint(2, 4)
            gens = [
                SMonomial(tuple(rng.randint(0, 2) for _ in range(n))) for _ in range(m)
            ]
            for degree in range(0, 6):
                got = len(monomial_syzygy_kernel(gens, degree))
                assert got == brute_syzygy_kernel_dim(gens, degree)

    def test_kernel_vectors_map_to_zero(self):
        gens = [SMonomial((2, 0, 1)), SMonomial((1, 1, 0)), SMonomial((0, 2, 1))]
        for degree in range(0, 7):
            for vec in monomial_syzygy_kernel(gens, degree):
                images = {}
                for (slot, mult), c in vec.items():
                    t = gens[slot].mul(mult)
                    images[t] = images.get(t, 0) + c
                assert all(v == 0 for v in images.values())

    def test_two_variable_dims(self):
        gens = [SMonomial((1, 0)), SMonomial((0, 1))]
        dims = [len(monomial_syzygy_kernel(gens, d)) for d in range(5)]
        assert dims == [0, 0, 1, 2, 3]

    def test_duplicate_generators_syzygy(self):
        g = SMonomial((1, 1))
        kernel = monomial_syzygy_kernel([g, g], 2)
        assert len(kernel) == 1
        (vec,) = kernel
        assert set(vec.values()) == {1, -1}

    def test_pairwise_span_certifies(self):
        rng = Random(23)
        for _ in range(8):
            n = rng.randint(2, 3)
            m = rng.randint(2, 4)
            gens = [
                SMonomial(tuple(rng.randint(0, 2) for _ in range(n))) for _ in range(m)
            ]
            reports = syzygy_span_compare(gens, 8)
            assert all(r.ok for r in reports), [r.line() for r in reports]

    def test_report_lines_readable(self):
        gens = [SMonomial((1, 0)), SMonomial((0, 1))]
        reports = syzygy_span_compare(gens, 3)
        assert [r.degree for r in reports] == [0, 1, 2, 3]
        assert all("ok" in r.line() for r in reports)

    def test_pairwise_vectors_lie_in_kernel(self):
        gens = [SMonomial((2, 1)), SMonomial((1, 2)), SMonomial((3, 0))]
        for vec in syzygy_generators(gens):
            images = {}
            for slot, entry in enumerate(vec):
                if entry is None:
                    continue
                sign, mono = entry
                t = gens[slot].mul(mono)
                images[t] = images.get(t, 0) + sign
            assert all(v == 0 for v in images.values())
