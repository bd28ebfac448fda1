"""Morphisms from a free operad into the quotient operad of a variety,
their kernels, and the identities special to a morphism.

A morphism sends each source operation to a multilinear polynomial of the
same degree in the target signature; it extends to all tree monomials by
structural substitution.  Composing with the projection onto the target
variety's quotient gives a linear map in every degree whose kernel holds
the identities satisfied by the image algebras.  Identities in the kernel
but outside the ideal of the source presentation are the special ones.
"""

from __future__ import annotations

import hashlib
from typing import NamedTuple

from .dialgebra import (
    bso_presentation,
    di_ideal_at_degree,
    emphasis_kernel_rows,
    lift_vector,
    superscript_poly,
    vector_to_dipolynomial,
    zero_identities,
)
from .fields import QQ
from .ideals import (
    VarietyPresentation,
    consequences_at_degree,
    ideal_component,
    poly_to_vector,
    vector_to_poly,
)
from .linalg import Subspace, extend, left_kernel_basis, row_reduce
from .terms import (
    DEFAULT_DEGREE_CAP,
    Monomial,
    Polynomial,
    Signature,
    apply_permutation,
    compose,
    double_signature,
    enumerate_monomials,
    format_polynomial,
    monomial_index,
)


class CharacteristicGuardError(ValueError):
    """The field characteristic is too small for the requested degree."""


class OperadMorphism:
    """Images for each source operation inside a target variety."""

    __slots__ = ("name", "source_signature", "target", "images", "digest")

    def __init__(self, name, source_signature, target, images):
        images = dict(images)
        for op, arity in source_signature.operations:
            img = images.get(op)
            if img is None:
                raise ValueError(f"no image for operation {op!r}")
            if not isinstance(img, Polynomial) or img.field != QQ:
                raise ValueError(
                    f"image of {op!r} must have rational coefficients"
                )
            if img.degree != arity or not img.is_multilinear():
                raise ValueError(
                    f"image of {op!r} must be multilinear of degree {arity}"
                )
        if set(images) != set(source_signature.names):
            raise ValueError("images given for operations outside the signature")
        self.name = str(name)
        self.source_signature = source_signature
        self.target = target
        self.images = images
        h = hashlib.sha256()
        h.update(repr(source_signature.operations).encode())
        h.update(target.digest.encode())
        for op in source_signature.names:
            h.update(b"\x00" + op.encode())
            h.update(b"\x00" + format_polynomial(images[op]).encode())
        self.digest = h.hexdigest()

    def __repr__(self):
        return f"OperadMorphism({self.name!r})"


def evaluate_morphism(mor: OperadMorphism, p, field=None):
    """Image of a multilinear monomial or polynomial in the free target."""
    if isinstance(p, Monomial):
        p = Polynomial.monomial(p, QQ if field is None else field)
    if field is None:
        field = p.field
    p = p.convert(field)
    images = {op: img.convert(field) for op, img in mor.images.items()}

    def eval_node(node):
        if isinstance(node, int):
            return Polynomial.monomial(Monomial(1), field)
        img = images.get(node[0])
        if img is None:
            raise ValueError(f"operation {node[0]!r} has no image")
        return compose(img, [eval_node(c) for c in node[1:]])

    out = Polynomial(field, {}, degree=p.degree)
    for m, c in p.terms.items():
        out = out + apply_permutation(m.leaf_word, eval_node(m.node)).scale(c)
    return out


def di_morphism(mor: OperadMorphism) -> OperadMorphism:
    """The doubled morphism: each emphasized operation maps to the matching
    emphasized lift of its plain image."""
    images = {}
    for op, arity in mor.source_signature.operations:
        for k in range(1, arity + 1):
            images[f"{op}^{k}"] = superscript_poly(mor.images[op], k)
    return OperadMorphism(
        f"di-{mor.name}",
        double_signature(mor.source_signature),
        bso_presentation(mor.target),
        images,
    )


_ROWS_MEMO: dict = {}
_KERNEL_MEMO: dict = {}


def _reduced_image_rows(mor, d, field, max_degree, cache):
    """Image of each degree-d source basis monomial, reduced modulo the
    target variety's ideal."""
    key = (mor.digest, field.name, d)
    hit = _ROWS_MEMO.get(key)
    if hit is not None:
        return hit
    target_comp = consequences_at_degree(
        mor.target, d, field, max_degree, cache
    )
    rows = []
    for m in enumerate_monomials(mor.source_signature, d, max_degree):
        img = evaluate_morphism(mor, m, field)
        vec = poly_to_vector(img, target_comp.index)
        rows.append(target_comp.ideal.reduce(vec))
    out = (tuple(rows), target_comp)
    _ROWS_MEMO[key] = out
    return out


def morphism_kernel_at_degree(
    mor: OperadMorphism,
    d: int,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
):
    """Subspace of source combinations that die in the target quotient."""
    key = (mor.digest, field.name, d)
    hit = _KERNEL_MEMO.get(key)
    if hit is not None:
        return hit
    rows, target_comp = _reduced_image_rows(mor, d, field, max_degree, cache)
    ker = left_kernel_basis(field, list(rows), target_comp.ambient_dimension)
    space = row_reduce(field, len(rows), ker)
    _KERNEL_MEMO[key] = space
    return space


def _check_source_vanishes(mor, source, field, max_degree, cache):
    for gname, g in zip(source.generator_names, source.generators):
        target_comp = consequences_at_degree(
            mor.target, g.degree, field, max_degree, cache
        )
        img = evaluate_morphism(mor, g, field)
        if not target_comp.contains(img):
            raise ValueError(
                f"identity {gname!r} of {source.name!r} does not vanish "
                f"under {mor.name!r}"
            )


class SpecialIdentitiesReport(NamedTuple):
    morphism: str
    degree: int
    field: str
    ambient_dimension: int
    kernel_dimension: int
    ideal_dimension: int
    special_dimension: int
    basis: tuple


def special_identities(
    mor: OperadMorphism,
    source: VarietyPresentation,
    d: int,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
) -> SpecialIdentitiesReport:
    """Kernel identities of the morphism that are not consequences of the
    source presentation.  Every source identity must die in the target."""
    if source.signature != mor.source_signature:
        raise ValueError("presentation and morphism disagree on the signature")
    _check_source_vanishes(mor, source, field, max_degree, cache)
    kernel = morphism_kernel_at_degree(mor, d, field, max_degree, cache)
    source_comp = consequences_at_degree(source, d, field, max_degree, cache)
    reduced = [source_comp.ideal.reduce(r) for r in kernel.rows]
    special = row_reduce(field, kernel.ncols, reduced)
    basis = tuple(
        vector_to_poly(r, source_comp.basis, field, d) for r in special.rows
    )
    return SpecialIdentitiesReport(
        morphism=mor.name,
        degree=d,
        field=field.name,
        ambient_dimension=source_comp.ambient_dimension,
        kernel_dimension=kernel.dim,
        ideal_dimension=source_comp.ideal.dim,
        special_dimension=special.dim,
        basis=basis,
    )


def _stacked_kernel(mor, dsig, d, field, max_degree, cache):
    """Kernel of the doubled morphism in doubled coordinates: the collapse
    kernel together with every emphasized lift of the plain kernel."""
    dindex = monomial_index(dsig, d, max_degree)
    rows = emphasis_kernel_rows(dsig, d, field, max_degree)
    base_kernel = morphism_kernel_at_degree(mor, d, field, max_degree, cache)
    src_basis = enumerate_monomials(mor.source_signature, d, max_degree)
    for r in base_kernel.rows:
        p = vector_to_poly(r, src_basis, field, d)
        for k in range(1, d + 1):
            rows.append(lift_vector(p, k, dindex))
    ncols = len(enumerate_monomials(dsig, d, max_degree))
    return row_reduce(field, ncols, rows)


class DiSpecialIdentitiesReport(NamedTuple):
    morphism: str
    degree: int
    field: str
    ambient_dimension: int
    kernel_dimension: int
    ideal_dimension: int
    special_dimension: int
    basis: tuple
    matches_lifted: bool


def di_special_identities(
    mor: OperadMorphism,
    source: VarietyPresentation,
    d: int,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
) -> DiSpecialIdentitiesReport:
    """Emphasized identities killed componentwise by the morphism, modulo
    the block ideal of the source presentation, and whether they all arise
    as emphasized placements of the plain special identities."""
    base = special_identities(mor, source, d, field, max_degree, cache)
    source_comp = consequences_at_degree(source, d, field, max_degree, cache)
    block = source_comp.ambient_dimension
    base_kernel = morphism_kernel_at_degree(mor, d, field, max_degree, cache)
    kernel_rows = []
    for k in range(d):
        off = k * block
        for r in base_kernel.rows:
            kernel_rows.append({off + c: v for c, v in r.items()})
    block_kernel = Subspace(field, d * block, kernel_rows)
    block_ideal = di_ideal_at_degree(source, d, field, max_degree, cache)

    reduced = [block_ideal.reduce(r) for r in block_kernel.rows]
    special = row_reduce(field, d * block, reduced)
    basis = tuple(
        vector_to_dipolynomial(r, source_comp.basis, field, d)
        for r in special.rows
    )

    lifted = []
    for p in base.basis:
        vec = poly_to_vector(p, source_comp.index)
        for k in range(d):
            lifted.append({k * block + c: v for c, v in vec.items()})
    matches = extend(block_ideal, lifted) == extend(
        block_ideal, block_kernel.rows
    )

    return DiSpecialIdentitiesReport(
        morphism=f"di-{mor.name}",
        degree=d,
        field=field.name,
        ambient_dimension=d * block,
        kernel_dimension=block_kernel.dim,
        ideal_dimension=block_ideal.dim,
        special_dimension=special.dim,
        basis=basis,
        matches_lifted=matches,
    )


class DegreeComparison(NamedTuple):
    degree: int
    ambient_dimension: int
    kernel_dimension: int
    consequence_dimension: int
    equal: bool


class BsoKernelReport(NamedTuple):
    morphism: str
    degree: int
    field: str
    comparisons: tuple
    verdict: bool


def verify_bso_theorem(
    mor: OperadMorphism,
    d: int,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
) -> BsoKernelReport:
    """Check degree by degree that the kernel of the doubled morphism is
    generated, as an operad ideal, by the zero identities together with the
    emphasized lifts of the plain kernel."""
    p = field.characteristic
    if p and d >= p:
        raise CharacteristicGuardError(
            f"degree {d} requires characteristic 0 or larger than {d}, "
            f"got {p}"
        )
    dsig = double_signature(mor.source_signature)
    gens = [q.convert(field) for q in zero_identities(mor.source_signature)[1]]
    for m in range(2, d + 1):
        base_kernel = morphism_kernel_at_degree(mor, m, field, max_degree, cache)
        src_basis = enumerate_monomials(mor.source_signature, m, max_degree)
        for r in base_kernel.rows:
            q = vector_to_poly(r, src_basis, field, m)
            for k in range(1, m + 1):
                gens.append(superscript_poly(q, k))
    digest = f"bso-kernel:{mor.digest}"

    comparisons = []
    for m in range(2, d + 1):
        stacked = _stacked_kernel(mor, dsig, m, field, max_degree, cache)
        consequence = ideal_component(
            dsig, tuple(gens), digest, m, field, max_degree, cache
        )
        comparisons.append(
            DegreeComparison(
                degree=m,
                ambient_dimension=stacked.ncols,
                kernel_dimension=stacked.dim,
                consequence_dimension=consequence.dim,
                equal=stacked == consequence,
            )
        )
    return BsoKernelReport(
        morphism=mor.name,
        degree=d,
        field=field.name,
        comparisons=tuple(comparisons),
        verdict=all(c.equal for c in comparisons),
    )
