"""Defining equations of multi-Rees algebras over a permutable weak
regular sequence, constructed through binary quasi-minors of the
presentation matrix and certified two independent ways: a Buchberger-style
S-pair check over the coefficient ring, and a degree-bounded kernel
oracle that works straight from the monomial fibers of the presentation
map.
"""
from .poly import (
    CapExceeded,
    GuardExceeded,
    Mono,
    MonomialOrder,
    Poly,
    SpecError,
    UniverseMismatch,
    VarUniverse,
    ZeroPolynomial,
    default_t_precedence,
    is_s_monomial_type,
    leading,
    mono_text,
    s_term_parts,
)
from .sseq import (
    SeqSpec,
    SMonomial,
    TaylorComplex,
    s_gcd,
    s_lcm,
    syzygy_generators,
    taylor_complex,
)
from .quasimat import (
    Binomial,
    BinaryQuasiMatrix,
    QuasiMatrix,
    binary_subquasi_enumerate,
    expand_combination,
    generic_matrix,
    ibin_generators,
    quasi_determinants,
    rewrite_as_two_minors,
)
from .grobner import (
    INCONCLUSIVE,
    REDUCED_TO_ZERO,
    BuchbergerReport,
    ReductionCert,
    buchberger_check,
    default_order_suite,
    s_poly,
    top_reduce,
    universal_gb_check,
)
from .rees import (
    FULL,
    RESTRICTED,
    Generator,
    IndexTuple,
    NormalityReport,
    Presentation,
    ReesSpec,
    build_presentation,
    defining_generators,
    enumerate_column_tuples,
    enumerate_index_tuples,
    generator_polys,
    normality_report,
    reduce_by_family,
    spec_from_dict,
    spec_from_json,
    spec_to_dict,
    spec_to_json,
)
from .oracle import (
    Echelon,
    ImageData,
    KernelPiece,
    OracleReport,
    SpanReport,
    SyzygyDegreeReport,
    default_degrees,
    kernel_piece,
    monomial_syzygy_kernel,
    oracle_check,
    source_monomials,
    span_compare,
    syzygy_span_compare,
)

__version__ = "0.1.0"

__all__ = [
    "Binomial",
    "BinaryQuasiMatrix",
    "BuchbergerReport",
    "CapExceeded",
    "Echelon",
    "FULL",
    "Generator",
    "GuardExceeded",
    "ImageData",
    "INCONCLUSIVE",
    "IndexTuple",
    "KernelPiece",
    "Mono",
    "MonomialOrder",
    "NormalityReport",
    "OracleReport",
    "Poly",
    "Presentation",
    "QuasiMatrix",
    "REDUCED_TO_ZERO",
    "RESTRICTED",
    "ReductionCert",
    "ReesSpec",
    "SMonomial",
    "SeqSpec",
    "SpanReport",
    "SpecError",
    "SyzygyDegreeReport",
    "TaylorComplex",
    "UniverseMismatch",
    "VarUniverse",
    "ZeroPolynomial",
    "binary_subquasi_enumerate",
    "buchberger_check",
    "build_presentation",
    "default_degrees",
    "default_order_suite",
    "default_t_precedence",
    "defining_generators",
    "enumerate_column_tuples",
    "enumerate_index_tuples",
    "expand_combination",
    "generator_polys",
    "generic_matrix",
    "ibin_generators",
    "is_s_monomial_type",
    "kernel_piece",
    "leading",
    "mono_text",
    "monomial_syzygy_kernel",
    "normality_report",
    "oracle_check",
    "quasi_determinants",
    "reduce_by_family",
    "rewrite_as_two_minors",
    "s_gcd",
    "s_lcm",
    "s_poly",
    "s_term_parts",
    "source_monomials",
    "span_compare",
    "spec_from_dict",
    "spec_from_json",
    "spec_to_dict",
    "spec_to_json",
    "syzygy_generators",
    "syzygy_span_compare",
    "taylor_complex",
    "top_reduce",
    "universal_gb_check",
]
