"""Doubling, emphasis translation, and dialgebra presentations."""

from __future__ import annotations

import itertools

import pytest

from dioperad.dialgebra import (
    DiPolynomial,
    EmphasizedMonomial,
    bso_presentation,
    di_ideal_at_degree,
    emphasis_kernel_rows,
    lift_vector,
    perm_basis,
    perm_compose,
    superscript,
    superscript_poly,
    unsuperscript,
    vector_to_dipolynomial,
    verify_dialgebra_equivalence,
    zero_identities,
    zeta_preimage,
)
from dioperad.fields import QQ, PrimeField
from dioperad.ideals import (
    VarietyPresentation,
    consequences_at_degree,
    vector_to_poly,
)
from dioperad.linalg import row_reduce
from dioperad.terms import (
    Monomial,
    Polynomial,
    Signature,
    apply_permutation,
    double_signature,
    enumerate_monomials,
    monomial_index,
)

BRK = Signature([("b", 2)])
BIN = Signature([("mul", 2)])
TERN = Signature([("t", 3)])
MIXED = Signature([("mul", 2), ("t", 3)])


def poly(terms, field=QQ):
    return Polynomial(field, {Monomial(k): v for k, v in terms.items()})


LIE = VarietyPresentation(
    "lie",
    BRK,
    [
        poly({("b", 1, 2): 1, ("b", 2, 1): 1}),
        poly(
            {
                ("b", 1, ("b", 2, 3)): 1,
                ("b", ("b", 1, 2), 3): -1,
                ("b", 2, ("b", 1, 3)): -1,
            }
        ),
    ],
    ["antisymmetry", "jacobi"],
)

ASSOC = VarietyPresentation(
    "assoc",
    BIN,
    [poly({("mul", ("mul", 1, 2), 3): 1, ("mul", 1, ("mul", 2, 3)): -1})],
    ["assoc"],
)

FREE = VarietyPresentation("free-binary", BIN, [], [])


def test_perm_compose_on_unit_vectors():
    # e_2 of 3 composed with blocks of sizes 2,3,1: index 1 of block 2
    f = perm_basis(QQ, 3, 2)
    gs = [perm_basis(QQ, 2, 2), perm_basis(QQ, 3, 1), perm_basis(QQ, 1, 1)]
    out = perm_compose(QQ, f, gs)
    assert out == perm_basis(QQ, 6, 3)


def test_perm_compose_weights_absorb_passive_blocks():
    # passive factors contribute their total weight
    f = (QQ.coerce(1), QQ.coerce(0))
    g1 = (QQ.coerce(1), QQ.coerce(1))
    g2 = (QQ.coerce(3),)
    out = perm_compose(QQ, f, [g1, g2])
    assert out == (QQ.coerce(3), QQ.coerce(3), QQ.coerce(0))


def test_perm_compose_is_associative_on_random_vectors():
    import random

    rng = random.Random(5)

    def rand(n):
        return tuple(QQ.coerce(rng.randint(-2, 2)) for _ in range(n))

    f = rand(2)
    gs = [rand(2), rand(1)]
    hs = [rand(1), rand(2), rand(2)]
    # (f o gs) o hs == f o (gs o hs grouped)
    left = perm_compose(QQ, perm_compose(QQ, f, gs), hs)
    g1h = perm_compose(QQ, gs[0], hs[:2])
    g2h = perm_compose(QQ, gs[1], hs[2:])
    right = perm_compose(QQ, f, [g1h, g2h])
    assert left == right


def test_unsuperscript_examples():
    m = Monomial(("mul^2", ("mul^1", 1, 2), 3))
    plain, leaf = unsuperscript(m)
    assert plain == Monomial(("mul", ("mul", 1, 2), 3))
    assert leaf == 3
    m = Monomial(("mul^1", ("mul^2", 1, 2), 3))
    assert unsuperscript(m) == EmphasizedMonomial(
        Monomial(("mul", ("mul", 1, 2), 3)), 2
    )


def test_superscript_examples():
    m = Monomial(("mul", ("mul", 1, 2), 3))
    assert superscript(m, 3) == Monomial(("mul^2", ("mul^1", 1, 2), 3))
    assert superscript(m, 1) == Monomial(("mul^1", ("mul^1", 1, 2), 3))
    assert superscript(m, 2) == Monomial(("mul^1", ("mul^2", 1, 2), 3))
    with pytest.raises(ValueError):
        superscript(m, 4)


@pytest.mark.parametrize("sig,maxdeg", [(BIN, 5), (TERN, 5), (MIXED, 4)])
def test_unsuperscript_after_superscript_is_identity(sig, maxdeg):
    for n in range(1, maxdeg + 1):
        for m in enumerate_monomials(sig, n):
            for k in range(1, n + 1):
                assert unsuperscript(superscript(m, k)) == EmphasizedMonomial(
                    m, k
                )


def test_collapse_then_lift_is_identity_on_fibers():
    dsig = double_signature(BIN)
    for n in range(2, 5):
        for m in enumerate_monomials(dsig, n):
            plain, leaf = unsuperscript(m)
            again = unsuperscript(superscript(plain, leaf))
            assert again == EmphasizedMonomial(plain, leaf)


def test_superscript_is_equivariant():
    for n in range(2, 5):
        for m in enumerate_monomials(BIN, n):
            for k in range(1, n + 1):
                for perm in itertools.permutations(range(1, n + 1)):
                    lhs = apply_permutation(perm, superscript(m, k))
                    rhs = superscript(apply_permutation(perm, m), perm[k - 1])
                    assert lhs == rhs


def test_zero_identity_counts():
    assert len(zero_identities(BIN)[1]) == 2
    assert len(zero_identities(TERN)[1]) == 18
    assert len(zero_identities(MIXED)[1]) == 32


def test_zero_identity_shape_for_one_binary_operation():
    names, polys = zero_identities(BIN)
    assert names == ("zero-mul1-s2-mul12", "zero-mul2-s1-mul12")
    assert polys[0] == poly(
        {("mul^1", 1, ("mul^1", 2, 3)): 1, ("mul^1", 1, ("mul^2", 2, 3)): -1}
    )
    assert polys[1] == poly(
        {("mul^2", ("mul^1", 1, 2), 3): 1, ("mul^2", ("mul^2", 1, 2), 3): -1}
    )


def test_zero_identities_collapse_to_nothing():
    for sig in (BIN, TERN, MIXED):
        for p in zero_identities(sig)[1]:
            assert DiPolynomial.from_doubled(p).is_zero


def test_emphasis_kernel_dimension():
    dsig = double_signature(BIN)
    for n in range(2, 5):
        doubled = len(enumerate_monomials(dsig, n))
        plain = len(enumerate_monomials(BIN, n))
        rows = emphasis_kernel_rows(dsig, n, QQ)
        assert len(rows) == doubled - n * plain


def test_emphasis_kernel_spanned_by_zero_identity_consequences():
    divar = bso_presentation(FREE)
    comp = consequences_at_degree(divar, 3)
    assert comp.ideal.dim == len(emphasis_kernel_rows(divar.signature, 3, QQ))
    for row in emphasis_kernel_rows(divar.signature, 3, QQ):
        assert comp.ideal.contains(row)


def test_bso_presentation_of_lie_lists_lifted_identities():
    divar = bso_presentation(LIE)
    assert divar.name == "di-lie"
    assert divar.signature.names == ("b^1", "b^2")
    byname = dict(zip(divar.generator_names, divar.generators))
    assert byname["antisymmetry.e1"] == poly(
        {("b^1", 1, 2): 1, ("b^2", 2, 1): 1}
    )
    assert byname["antisymmetry.e2"] == poly(
        {("b^2", 1, 2): 1, ("b^1", 2, 1): 1}
    )
    assert byname["jacobi.e1"] == poly(
        {
            ("b^1", 1, ("b^1", 2, 3)): 1,
            ("b^1", ("b^1", 1, 2), 3): -1,
            ("b^2", 2, ("b^1", 1, 3)): -1,
        }
    )


def test_dialgebra_counterpart_of_lie_has_leibniz_dimensions():
    # one-sided analogue: n * (n-1)! basis elements in each degree
    divar = bso_presentation(LIE)
    for n, expected in [(2, 2), (3, 6), (4, 24)]:
        comp = consequences_at_degree(divar, n)
        assert comp.quotient_dimension == expected


def test_left_leibniz_identity_holds_in_dialgebra_counterpart_of_lie():
    divar = bso_presentation(LIE)
    comp = consequences_at_degree(divar, 3)
    # x (y z) - (x y) z - y (x z) with all products "emphasis on the right"
    leib = poly(
        {
            ("b^2", 1, ("b^2", 2, 3)): 1,
            ("b^2", ("b^2", 1, 2), 3): -1,
            ("b^2", 2, ("b^2", 1, 3)): -1,
        }
    )
    assert comp.contains(leib)


@pytest.mark.parametrize("field", [QQ, PrimeField(1000003)])
@pytest.mark.parametrize("variety", [FREE, LIE, ASSOC])
def test_equivalence_report_small_degrees(field, variety):
    for n in (2, 3):
        rep = verify_dialgebra_equivalence(variety, n, field)
        assert rep.equal
        assert rep.quotient_dimension == rep.expected_quotient_dimension


def test_dipolynomial_round_trip():
    dsig = double_signature(BIN)
    for m in enumerate_monomials(dsig, 3)[:12]:
        p = Polynomial.monomial(m)
        di = DiPolynomial.from_doubled(p)
        # collapse-then-lift lands on the canonical fiber representative
        back = di.to_doubled()
        plain, leaf = unsuperscript(m)
        assert back == Polynomial.monomial(superscript(plain, leaf))


PERM = VarietyPresentation(
    "perm",
    BIN,
    [
        poly({("mul", ("mul", 1, 2), 3): 1, ("mul", 1, ("mul", 2, 3)): -1}),
        poly({("mul", ("mul", 1, 2), 3): 1, ("mul", ("mul", 2, 1), 3): -1}),
    ],
    ["assoc", "left-comm"],
)


def test_di_ideal_block_codimensions():
    for variety, codim in ((ASSOC, 18), (LIE, 6), (PERM, 9)):
        space = di_ideal_at_degree(variety, 3)
        assert space.ncols == 36
        assert space.ncols - space.dim == codim


def test_di_ideal_vectors_decode_componentwise():
    comp = consequences_at_degree(ASSOC, 3)
    space = di_ideal_at_degree(ASSOC, 3)
    for r in space.rows:
        dp = vector_to_dipolynomial(r, comp.basis, QQ, 3)
        for part in dp.components:
            assert part.is_zero or comp.contains(part)
        assert dp.vector(comp.index, comp.ambient_dimension) == r


def test_zeta_preimage_matches_kernel_plus_lifts():
    for variety in (FREE, LIE, ASSOC):
        dsig = double_signature(variety.signature)
        comp = consequences_at_degree(variety, 3)
        block = di_ideal_at_degree(variety, 3)
        via_kernel = zeta_preimage(dsig, 3, block, QQ)

        dindex = monomial_index(dsig, 3)
        rows = emphasis_kernel_rows(dsig, 3, QQ)
        for r in comp.ideal.rows:
            p = vector_to_poly(r, comp.basis, QQ, 3)
            for k in range(1, 4):
                rows.append(lift_vector(p, k, dindex))
        via_lifts = row_reduce(QQ, len(dindex), rows)
        assert via_kernel == via_lifts
