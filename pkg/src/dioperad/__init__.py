"""Multilinear identity computations for operads of algebra varieties.

The package computes per-degree components of the operad governing a
variety of algebras, produces the dialgebra counterpart of a presentation
by doubling every operation, and checks which identities of an operad
morphism's image go beyond the source presentation — both for plain
algebras and for their dialgebra analogues.
"""

from __future__ import annotations

from .cache import DiskCache, default_cache_dir
from .dialgebra import (
    DiPolynomial,
    bso_presentation,
    di_ideal_at_degree,
    superscript,
    superscript_poly,
    unsuperscript,
    verify_dialgebra_equivalence,
    zero_identities,
    zeta_preimage,
)
from .fields import QQ, PrimeField, parse_field
from .ideals import (
    VarietyPresentation,
    consequences_at_degree,
    identity_implies,
    quotient_dimension,
)
from .morphisms import (
    CharacteristicGuardError,
    OperadMorphism,
    di_morphism,
    di_special_identities,
    evaluate_morphism,
    morphism_kernel_at_degree,
    special_identities,
    verify_bso_theorem,
)
from .terms import (
    DegreeCapError,
    DoubledSignature,
    Monomial,
    Polynomial,
    Signature,
    apply_permutation,
    compose,
    double_signature,
    enumerate_monomials,
    format_polynomial,
    linearize,
    substitute_at,
)

__all__ = [
    "CharacteristicGuardError",
    "DegreeCapError",
    "DiPolynomial",
    "DiskCache",
    "DoubledSignature",
    "Monomial",
    "OperadMorphism",
    "Polynomial",
    "PrimeField",
    "QQ",
    "Signature",
    "VarietyPresentation",
    "apply_permutation",
    "bso_presentation",
    "compose",
    "consequences_at_degree",
    "default_cache_dir",
    "di_ideal_at_degree",
    "di_morphism",
    "di_special_identities",
    "double_signature",
    "enumerate_monomials",
    "evaluate_morphism",
    "format_polynomial",
    "identity_implies",
    "linearize",
    "morphism_kernel_at_degree",
    "parse_field",
    "quotient_dimension",
    "special_identities",
    "substitute_at",
    "superscript",
    "superscript_poly",
    "unsuperscript",
    "verify_bso_theorem",
    "verify_dialgebra_equivalence",
    "zero_identities",
    "zeta_preimage",
]
