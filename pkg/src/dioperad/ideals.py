"""Varieties of algebras presented by multilinear identities, and the
degree-by-degree expansion of the operad ideal those identities generate.

The multilinear consequences of a set of identities in degree n form the
n-th component of the smallest ideal containing them that is closed under
composition on either side and relabelling of variables.  The component is
computed layer by layer: one-step substitutions of a single operation into
(or around) each lower layer, then closure under the symmetric group.
"""

from __future__ import annotations

import hashlib
import itertools
from fractions import Fraction

from .fields import QQ
from .linalg import Subspace, _Reducer
from .terms import (
    DEFAULT_DEGREE_CAP,
    Monomial,
    Polynomial,
    Signature,
    apply_permutation,
    check_in_signature,
    enumerate_monomials,
    format_polynomial,
    monomial_index,
    substitute_at,
)


class VarietyPresentation:
    """A named signature together with defining multilinear identities.

    Generators are stored with rational coefficients and converted into a
    working field on demand.
    """

    __slots__ = ("name", "signature", "generators", "generator_names", "digest")

    def __init__(self, name, signature, generators, generator_names=None):
        generators = tuple(generators)
        if generator_names is None:
            generator_names = tuple(f"id{i + 1}" for i in range(len(generators)))
        generator_names = tuple(str(s) for s in generator_names)
        if len(generator_names) != len(generators):
            raise ValueError("one name per identity required")
        for gname, g in zip(generator_names, generators):
            if not isinstance(g, Polynomial) or g.field != QQ:
                raise ValueError(
                    f"identity {gname!r} must have rational coefficients"
                )
            if g.is_zero:
                raise ValueError(f"identity {gname!r} is zero")
            if g.degree < 2:
                raise ValueError(f"identity {gname!r} has degree < 2")
            if not g.is_multilinear():
                raise ValueError(f"identity {gname!r} is not multilinear")
            for m in g.terms:
                check_in_signature(m, signature)
        self.name = str(name)
        self.signature = signature
        self.generators = generators
        self.generator_names = generator_names
        h = hashlib.sha256()
        h.update(repr(signature.operations).encode())
        for gname, g in zip(generator_names, generators):
            h.update(b"\x00" + gname.encode())
            h.update(b"\x00" + format_polynomial(g).encode())
        self.digest = h.hexdigest()

    def __eq__(self, other):
        return (
            isinstance(other, VarietyPresentation)
            and self.digest == other.digest
        )

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return (
            f"VarietyPresentation({self.name!r}, "
            f"{len(self.generators)} identities)"
        )


def poly_to_vector(p: Polynomial, index: dict) -> dict:
    try:
        return {index[m.node]: c for m, c in p.terms.items()}
    except KeyError as exc:
        raise ValueError(f"monomial outside the ambient basis: {exc}") from None


def vector_to_poly(vec: dict, basis, field, degree=None) -> Polynomial:
    if degree is None:
        degree = basis[0].degree if basis else 1
    return Polynomial(
        field, {basis[i]: c for i, c in vec.items()}, degree=degree
    )


class DegreeComponent:
    """One multilinear degree of a variety: ambient basis, ideal, quotient."""

    __slots__ = ("degree", "basis", "index", "ideal", "field")

    def __init__(self, degree, basis, index, ideal):
        self.degree = degree
        self.basis = basis
        self.index = index
        self.ideal = ideal
        self.field = ideal.field

    @property
    def ambient_dimension(self) -> int:
        return len(self.basis)

    @property
    def quotient_dimension(self) -> int:
        return len(self.basis) - self.ideal.dim

    def contains(self, p: Polynomial) -> bool:
        p = p.convert(self.field)
        if p.degree != self.degree:
            raise ValueError(
                f"degree {p.degree} element tested in degree {self.degree}"
            )
        return self.ideal.contains(poly_to_vector(p, self.index))

    def reduce(self, p: Polynomial) -> Polynomial:
        p = p.convert(self.field)
        vec = self.ideal.reduce(poly_to_vector(p, self.index))
        return vector_to_poly(vec, self.basis, self.field, self.degree)


def _perm_column_maps(sig: Signature, basis, index, degree: int):
    """Column permutations for a generating set of leaf relabelings."""
    if degree < 2:
        return []
    perms = [(2, 1) + tuple(range(3, degree + 1))]
    if degree > 2:
        perms.append(tuple(range(2, degree + 1)) + (1,))
    maps = []
    for perm in perms:
        mapping = {i + 1: v for i, v in enumerate(perm)}
        maps.append(
            tuple(index[m.relabel(mapping).node] for m in basis)
        )
    return maps


_MEMO: dict = {}
_CACHE_TAG = "consequences-v1"


def _encode_rows(field, rows) -> list:
    if field == QQ:
        return [
            [[c, str(v.numerator), str(v.denominator)]
             for c, v in sorted(row.items())]
            for row in rows
        ]
    return [[[c, int(v)] for c, v in sorted(row.items())] for row in rows]


def _decode_rows(field, data) -> list:
    if field == QQ:
        return [
            {c: Fraction(int(n), int(d)) for c, n, d in row} for row in data
        ]
    return [{c: v for c, v in row} for row in data]


def ideal_component(
    signature,
    generators,
    digest,
    n,
    field,
    max_degree=DEFAULT_DEGREE_CAP,
    cache=None,
) -> Subspace:
    """Degree-n span of the operad ideal generated by the given multilinear
    polynomials (already over the working field).  ``digest`` keys the memo
    and the optional disk cache; equal digests must mean equal inputs.
    """
    key = (digest, field.name, n)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit

    basis = enumerate_monomials(signature, n, max_degree)
    ncols = len(basis)
    ckey = f"{_CACHE_TAG}:{digest}:{field.name}:{n}"
    if cache is not None:
        stored = cache.get(ckey)
        if stored is not None:
            space = Subspace(field, ncols, _decode_rows(field, stored["rows"]))
            _MEMO[key] = space
            return space

    index = monomial_index(signature, n, max_degree)
    reducer = _Reducer(field)
    queue: list[dict] = []

    def feed(vec):
        if reducer.insert(vec):
            queue.append(vec)

    for g in generators:
        if g.degree == n:
            feed(poly_to_vector(g, index))

    for op, arity in signature.operations:
        m = n - arity + 1
        if m < 2 or m >= n:
            continue
        lower = ideal_component(
            signature, generators, digest, m, field, max_degree, cache
        )
        if not lower.dim:
            continue
        lower_basis = enumerate_monomials(signature, m, max_degree)
        corolla = Monomial((op,) + tuple(range(1, arity + 1)))
        for row in lower.rows:
            p = vector_to_poly(row, lower_basis, field, m)
            for i in range(1, m + 1):
                feed(poly_to_vector(substitute_at(p, i, corolla), index))
            for i in range(1, arity + 1):
                feed(poly_to_vector(substitute_at(corolla, i, p), index))

    colmaps = _perm_column_maps(signature, basis, index, n)
    while queue:
        vec = queue.pop()
        for colmap in colmaps:
            feed({colmap[c]: v for c, v in vec.items()})

    space = Subspace(field, ncols, reducer)
    _MEMO[key] = space
    if cache is not None:
        cache.put(ckey, {"rows": _encode_rows(field, space.rows)})
    return space


def consequences_at_degree(
    variety,
    n: int,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
) -> DegreeComponent:
    """The degree-n multilinear component of the variety's defining ideal,
    inside the free-operad basis of that degree."""
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    basis = enumerate_monomials(variety.signature, n, max_degree)
    index = monomial_index(variety.signature, n, max_degree)
    ideal = ideal_component(
        variety.signature,
        tuple(g.convert(field) for g in variety.generators),
        variety.digest,
        n,
        field,
        max_degree,
        cache,
    )
    return DegreeComponent(n, basis, index, ideal)


def quotient_dimension(
    variety, n, field=QQ, max_degree=DEFAULT_DEGREE_CAP, cache=None
):
    return consequences_at_degree(
        variety, n, field, max_degree, cache
    ).quotient_dimension


def identity_implies(
    variety,
    p: Polynomial,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
) -> bool:
    """Whether p vanishes in every algebra of the variety."""
    comp = consequences_at_degree(variety, p.degree, field, max_degree, cache)
    return comp.contains(p)


def symmetric_orbit(p: Polynomial):
    """All relabelings of a multilinear polynomial (testing helper)."""
    for perm in itertools.permutations(range(1, p.degree + 1)):
        yield apply_permutation(perm, p)
