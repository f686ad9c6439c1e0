"""Exact computations with quantum generalized Weyl algebras.

The package covers the algebra D(sigma, a) over k[h] or k[h^{+-1}] with
sigma(h) = q h and coefficients in a cyclotomic field, its diagonal and
Omega automorphisms, fixed rings of finite cyclic groups of them, and the
root-based homological classifiers (global dimension, twisted Calabi-Yau,
simplicity, rigidity).
"""
from .autogroup import (
    Automorphism,
    classify_subgroup,
    compose,
    detect_symmetric,
    inverse,
    order_of,
    power,
    relation_defects,
    validate,
)
from .analysis import emit_report, run_analysis
from .exactfield import FieldElement, embed_complex, nth_roots, roots_of_unity, torsion_order
from .fixedring import (
    fixed_ring,
    fixed_ring_diagonal,
    fixed_ring_omega,
    probe_gcd_failure,
    verify_fixed_ring,
)
from .gwacore import GwaElement, QuantumGwa, apply_automorphism, fixed_space, gwa_mul
from .polynomials import BaseKind, FactoredPoly, LaurentPoly, descend_to_b, expand, normalize
from .request import format_request, parse_request
from .rootprops import (
    analyze_roots,
    classify_A_multiplicity,
    congruent_pairs,
    find_power_of_q,
    gldim,
    gldim_fixed,
    is_simple,
    rigidity,
    simplicity_transfer,
    twisted_calabi_yau,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "BaseKind", "FactoredPoly", "FieldElement", "GwaElement", "LaurentPoly",
    "QuantumGwa", "analyze_roots", "apply_automorphism", "classify_A_multiplicity",
    "classify_subgroup", "compose", "congruent_pairs", "descend_to_b", "detect_symmetric",
    "embed_complex", "emit_report", "expand", "find_power_of_q", "fixed_ring",
    "fixed_ring_diagonal", "fixed_ring_omega", "fixed_space", "format_request", "gldim",
    "gldim_fixed", "gwa_mul", "inverse", "is_simple", "normalize", "nth_roots", "order_of",
    "parse_request", "power", "probe_gcd_failure", "relation_defects", "rigidity",
    "roots_of_unity", "run_analysis", "simplicity_transfer", "torsion_order",
    "twisted_calabi_yau", "validate", "verify_fixed_ring",
]
