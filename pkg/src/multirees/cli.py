"""Command line interface.

Exit codes: 0 = success / certified, 1 = check failed or inconclusive,
2 = invalid spec or usage, 3 = an enumeration cap or guard was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .grobner import (
    STRATEGIES,
    buchberger_check,
    default_order_suite,
    universal_gb_check,
)
from .oracle import DEFAULT_PIECE_CAP, oracle_check
from .poly import (
    ORDER_KINDS,
    CapExceeded,
    GuardExceeded,
    MonomialOrder,
    SpecError,
    mono_text,
)
from .rees import (
    FAMILIES,
    FULL,
    RESTRICTED,
    build_presentation,
    defining_generators,
    normality_report,
    spec_from_json,
    spec_to_dict,
)
from .sseq import SMonomial, syzygy_generators, taylor_complex

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SPEC = 2
EXIT_CAP = 3


def _read_spec(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecError("cannot read spec file: %s" % exc)
    return spec_from_json(text)


def _gen_text(g, universe):
    return "%s - %s" % (
        mono_text(g.binomial.plus, universe),
        mono_text(g.binomial.minus, universe),
    )


def _poly_terms_json(p):
    out = []
    for mono, coeff in p.terms:
        out.append([str(coeff), {p.universe.name(v): e for v, e in mono.exps}])
    return out


def _emit_json(payload):
    print(json.dumps(payload, indent=2, sort_keys=False))


# --- generators ------------------------------------------------------------


def cmd_generators(args):
    spec = _read_spec(args.spec)
    pres = build_presentation(spec)
    gens = defining_generators(pres, args.family, args.max_minor_size)
    u = pres.universe
    notes = spec.lint()
    if args.format == "json":
        payload = {
            "command": "generators",
            "spec": spec_to_dict(spec),
            "family": args.family,
            "count": len(gens),
            "notes": notes,
            "matrix": {
                "rows": [u.name(v) for v in u.s_ids],
                "columns": [pres.col_label(c) for c in range(pres.matrix.n_cols)],
                "entries": [
                    {"row": r + 1, "col": c, "name": u.name(v)}
                    for (r, c), v in sorted(pres.matrix.entries.items())
                ],
            },
            "generators": [
                {
                    "index": i + 1,
                    "kind": g.kind,
                    "blocks": list(g.blocks),
                    "columns_used": g.size,
                    "label": g.label,
                    "text": _gen_text(g, u),
                    "terms": _poly_terms_json(g.poly),
                }
                for i, g in enumerate(gens)
            ],
        }
        _emit_json(payload)
        return EXIT_OK
    if args.format == "cas":
        names = [u.vars[v].cas_name for v in u.s_ids + u.x_ids]
        names += [u.vars[v].cas_name for v in sorted(pres.f_idset)]
        ring = "QQ" if u.domain == "QQ" else "ZZ"
        print("-- presentation ring and candidate defining ideal (family=%s)" % args.family)
        print("R = %s[%s]" % (ring, ", ".join(names)))
        body = ",\n  ".join(g.poly.render(names=lambda v: u.vars[v].cas_name) for g in gens)
        print("I = ideal(\n  %s\n)" % body if gens else "I = ideal(0_R)")
        return EXIT_OK
    if args.show_matrix:
        print(pres.pretty_matrix())
        print()
    if args.show_phi:
        for vid in sorted(pres.var_block):
            if vid not in pres.f_idset:
                continue
            img = pres.phi_images()[vid]
            print("phi(%s) = %s" % (u.name(vid), img.render()))
        print()
    for i, g in enumerate(gens):
        print("g%-3d [%-16s blocks %s]  %s" % (i + 1, g.kind + ";", ",".join(map(str, g.blocks)), _gen_text(g, u)))
    print("%d generators (family=%s)" % (len(gens), args.family))
    for note in notes:
        print("note: %s" % note)
    return EXIT_OK


# --- groebner --------------------------------------------------------------


def _report_json(rep):
    return {
        "order": rep.order.describe(),
        "ok": rep.ok,
        "pairs": len(rep.pairs),
        "stuck": [
            {"i": pr.i + 1, "j": pr.j + 1, "remainder": pr.cert.remainder.render()}
            for pr in rep.failures
        ],
    }


def cmd_groebner(args):
    spec = _read_spec(args.spec)
    pres = build_presentation(spec)
    gens = [g.poly for g in defining_generators(pres, args.family, args.max_minor_size)]
    if not gens:
        if args.format == "json":
            _emit_json({"command": "groebner", "ok": True, "generators": 0})
        else:
            print("no relations; nothing to certify")
        return EXIT_OK
    if args.universal:
        seeds = tuple(args.seed + i for i in (1, 2, 3, 4))
        orders = default_order_suite(pres.universe, kinds=("lex", "grevlex"), seeds=seeds)
        rep = universal_gb_check(gens, orders, strategy=args.strategy, jobs=args.jobs)
        ok = rep.ok
        if args.format == "json":
            _emit_json(
                {
                    "command": "groebner",
                    "universal": True,
                    "seed": args.seed,
                    "ok": ok,
                    "orders": [_report_json(r) for r in rep.reports],
                }
            )
        else:
            print("seed: %d" % args.seed)
            print(rep.summary())
        return EXIT_OK if ok else EXIT_FAIL
    order = MonomialOrder(pres.universe, args.order)
    rep = buchberger_check(gens, order, strategy=args.strategy, jobs=args.jobs)
    if args.format == "json":
        _emit_json({"command": "groebner", "universal": False, "ok": rep.ok, "orders": [_report_json(rep)]})
    else:
        print(rep.summary())
    return EXIT_OK if rep.ok else EXIT_FAIL


# --- oracle ----------------------------------------------------------------


def cmd_oracle(args):
    spec = _read_spec(args.spec)
    pres = build_presentation(spec)
    gens = defining_generators(pres, args.family, args.max_minor_size)
    dropped = []
    if args.drop_generator:
        keep = []
        for i, g in enumerate(gens, start=1):
            if i in args.drop_generator:
                dropped.append(i)
            else:
                keep.append(g)
        missing = set(args.drop_generator) - set(dropped)
        if missing:
            raise SpecError("no generator with index %s" % ", ".join(map(str, sorted(missing))))
        gens = keep
    rep = oracle_check(
        pres,
        gens,
        t_cap=args.t_degree_cap,
        ambient_cap=args.s_degree_cap,
        cap=args.piece_cap,
    )
    if args.format == "json":
        payload = {
            "command": "oracle",
            "family": args.family,
            "dropped": dropped,
            "ok": rep.ok,
            "pieces": [
                {
                    "t_degrees": list(r.tvec),
                    "ambient_degree": r.weight,
                    "piece_size": r.piece_size,
                    "kernel_dim": r.kernel_dim,
                    "span_dim": r.span_dim,
                    "ok": r.ok,
                    "witness": r.witness.render() if r.witness is not None else None,
                }
                for r in rep.reports
            ],
        }
        _emit_json(payload)
    else:
        if dropped:
            print("dropped generators: %s" % ", ".join("g%d" % i for i in dropped))
        print(rep.summary())
        for r in rep.failures:
            if r.witness is not None:
                print("witness (maps to zero, outside the family span): %s" % r.witness.render())
    return EXIT_OK if rep.ok else EXIT_FAIL


# --- verify ----------------------------------------------------------------


def cmd_verify(args):
    """Three-way check: S-pair certification of the full binary family
    (the restricted family generates the same ideal but is not itself a
    basis), the kernel oracle on the requested family, and the
    squarefreeness report."""
    spec = _read_spec(args.spec)
    pres = build_presentation(spec)
    gens = defining_generators(pres, args.family, args.max_minor_size)
    full_polys = [g.poly for g in defining_generators(pres, FULL, args.max_minor_size)]
    if full_polys:
        g_reports = [
            buchberger_check(full_polys, MonomialOrder(pres.universe, kind), jobs=args.jobs)
            for kind in ("lex", "grevlex")
        ]
        groebner_ok = all(r.ok for r in g_reports)
    else:
        g_reports = []
        groebner_ok = True
    o_report = oracle_check(pres, gens, t_cap=args.t_degree_cap, ambient_cap=args.s_degree_cap, cap=args.piece_cap)
    n_report = normality_report(pres, args.family, args.max_minor_size)
    ok = groebner_ok and o_report.ok
    if args.format == "json":
        _emit_json(
            {
                "command": "verify",
                "family": args.family,
                "generators": len(gens),
                "groebner": {"family": FULL, "reports": [_report_json(r) for r in g_reports]},
                "oracle": {
                    "ok": o_report.ok,
                    "pieces": len(o_report.reports),
                    "failures": [r.line() for r in o_report.failures],
                },
                "normality": {
                    "verdict": n_report.verdict,
                    "structural_ok": n_report.structural_ok,
                    "hypothesis_ok": n_report.hypothesis_ok,
                },
                "ok": ok,
            }
        )
    else:
        print("generators: %d (family=%s)" % (len(gens), args.family))
        print("groebner certification runs on the full binary family (%d members)" % len(full_polys))
        for r in g_reports:
            print(r.summary())
        print(o_report.summary().splitlines()[0])
        for r in o_report.failures:
            print("  " + r.line())
        print(n_report.summary())
        print("overall: %s" % ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FAIL


# --- taylor ----------------------------------------------------------------


def _block_monomials(pres, bd):
    seq = pres.spec.seq
    if seq.mode == "generic":
        return [
            SMonomial(it.s_exponents())
            for it in bd.tuples
            if bd.vids[it.js] in pres.f_idset
        ]
    vals = seq.concrete_monomial_values()
    if vals is None:
        raise SpecError("the complex report needs monomial sequence values in concrete mode")
    xs = list(seq.x_names)
    out = []
    for it in bd.tuples:
        if bd.vids[it.js] not in pres.f_idset:
            continue
        exps = [0] * len(xs)
        for i, e in enumerate(it.s_exponents()):
            if not e:
                continue
            for xn, xe in vals[i][1].items():
                exps[xs.index(xn)] += xe * e
        out.append(SMonomial(tuple(exps)))
    return out


def cmd_taylor(args):
    spec = _read_spec(args.spec)
    pres = build_presentation(spec)
    rows = []
    all_ok = True
    for bd in pres.blocks:
        monos = _block_monomials(pres, bd)
        tc = taylor_complex(monos)
        ok = tc.verify()
        all_ok = all_ok and ok
        rows.append(
            {
                "block": bd.index,
                "generators": tc.m,
                "ranks": [tc.rank(p) for p in range(tc.m + 1)],
                "square_zero": ok,
                "pairwise_syzygies": len(syzygy_generators(monos)),
            }
        )
    if args.format == "json":
        _emit_json({"command": "taylor", "ok": all_ok, "blocks": rows})
    else:
        for row in rows:
            print(
                "block %d: %d generators, ranks %s, d.d=0 %s, pairwise syzygies %d"
                % (
                    row["block"],
                    row["generators"],
                    " ".join(map(str, row["ranks"])),
                    "ok" if row["square_zero"] else "FAIL",
                    row["pairwise_syzygies"],
                )
            )
    return EXIT_OK if all_ok else EXIT_FAIL


# --- parser ----------------------------------------------------------------


def _add_spec_arg(p):
    p.add_argument("spec", help="path to a spec JSON file, or - for stdin")
    p.add_argument("--format", choices=("text", "json", "cas"), default="text")


def _add_family_args(p, default=RESTRICTED):
    p.add_argument("--family", choices=FAMILIES, default=default)
    p.add_argument(
        "--max-minor-size",
        type=int,
        default=None,
        metavar="M",
        help="largest matrix dimension consumed by one binary quasi-minor",
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="multirees",
        description="Defining equations of multi-Rees algebras over a permutable weak regular sequence.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generators", help="emit the candidate generating family")
    _add_spec_arg(p)
    _add_family_args(p)
    p.add_argument("--show-matrix", action="store_true", help="print the augmented presentation matrix")
    p.add_argument("--show-phi", action="store_true", help="print the value of every presentation variable")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("groebner", help="certify the family via S-pair reduction")
    _add_spec_arg(p)
    _add_family_args(p, default=FULL)
    p.add_argument("--order", choices=ORDER_KINDS, default="lex")
    p.add_argument("--universal", action="store_true", help="run a spread of orders and precedences")
    p.add_argument("--seed", type=int, default=0, help="seed for the shuffled precedences")
    p.add_argument("--strategy", choices=STRATEGIES, default="first")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("oracle", help="independent degree-bounded kernel comparison")
    _add_spec_arg(p)
    _add_family_args(p)
    p.add_argument("--t-degree-cap", type=int, default=None)
    p.add_argument("--s-degree-cap", type=int, default=None)
    p.add_argument("--piece-cap", type=int, default=DEFAULT_PIECE_CAP)
    p.add_argument(
        "--drop-generator",
        type=int,
        action="append",
        metavar="N",
        help="omit generator N (repeatable); used to demonstrate detection",
    )
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run the groebner, oracle, and normality checks")
    _add_spec_arg(p)
    _add_family_args(p)
    p.add_argument("--t-degree-cap", type=int, default=None)
    p.add_argument("--s-degree-cap", type=int, default=None)
    p.add_argument("--piece-cap", type=int, default=DEFAULT_PIECE_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("taylor", help="per-block monomial complex report")
    _add_spec_arg(p)
    p.set_defaults(func=cmd_taylor)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print("spec error: %s" % exc, file=sys.stderr)
        return EXIT_SPEC
    except (CapExceeded, GuardExceeded) as exc:
        print("cap exceeded: %s" % exc, file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
