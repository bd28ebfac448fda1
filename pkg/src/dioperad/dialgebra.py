"""Doubled operations, emphasized monomials, and the dialgebra counterpart
of a variety presentation.

Doubling replaces each operation f of arity a by a family f^1..f^a; the
superscript marks the argument slot carrying the emphasized variable.  A
doubled monomial maps to a plain monomial with one emphasized leaf (follow
the root superscripts downwards); conversely a plain monomial with a chosen
leaf lifts to the doubled monomial whose off-path superscripts are all 1.
The translation collapses doubled monomials that differ only at slots the
superscripts never reach; the "zero identities" present exactly that
collapse, and together with the lifted identities of a variety they present
its variety of dialgebras.
"""

from __future__ import annotations

from typing import NamedTuple

from .fields import QQ
from .ideals import (
    VarietyPresentation,
    consequences_at_degree,
    poly_to_vector,
)
from .linalg import Subspace, left_kernel_basis, row_reduce
from .terms import (
    DEFAULT_DEGREE_CAP,
    DoubledSignature,
    Monomial,
    Polynomial,
    Signature,
    double_signature,
    enumerate_monomials,
    monomial_index,
    substitute_at,
)


def perm_basis(field, n: int, k: int):
    """The weight vector with a single unit in slot k of n."""
    if not 1 <= k <= n:
        raise ValueError(f"slot {k} out of range 1..{n}")
    return tuple(field.one if i == k - 1 else field.zero for i in range(n))


def perm_compose(field, f, gs):
    """Composition of weight vectors: on unit vectors the k-th inner index
    survives, shifted past the earlier blocks; all other factors contribute
    their total weight."""
    f = tuple(f)
    gs = [tuple(g) for g in gs]
    if len(gs) != len(f):
        raise ValueError(f"composition needs {len(f)} arguments, got {len(gs)}")
    sums = [sum(g, field.zero) if g else field.zero for g in gs]
    offsets = [0]
    for g in gs:
        offsets.append(offsets[-1] + len(g))
    out = [field.zero] * offsets[-1]
    for k, fk in enumerate(f):
        if not fk:
            continue
        rest = fk
        for i, s in enumerate(sums):
            if i != k:
                rest = field.mul(rest, s)
        for j, gj in enumerate(gs[k]):
            if gj:
                out[offsets[k] + j] = field.add(out[offsets[k] + j], field.mul(rest, gj))
    return tuple(out)


class EmphasizedMonomial(NamedTuple):
    """A plain monomial with one distinguished leaf label."""

    monomial: Monomial
    leaf: int

    def __str__(self):
        return f"({self.monomial} ! {self.leaf})"


def _split_name(name: str) -> tuple[str, int]:
    base, sep, sup = name.rpartition("^")
    if not sep or not sup.isdigit():
        raise ValueError(f"{name!r} is not a doubled operation name")
    return base, int(sup)


def _strip(node):
    if isinstance(node, int):
        return node
    base, _ = _split_name(node[0])
    return (base,) + tuple(_strip(c) for c in node[1:])


def unsuperscript(m: Monomial) -> EmphasizedMonomial:
    """Drop all superscripts; the emphasized leaf is the one reached by
    descending along the root superscripts."""
    node = m.node
    while not isinstance(node, int):
        _, k = _split_name(node[0])
        if not 1 <= k <= len(node) - 1:
            raise ValueError(f"superscript {k} out of range in {m}")
        node = node[k]
    return EmphasizedMonomial(Monomial(_strip(m.node)), node)


def _leaf_set(node, out):
    if isinstance(node, int):
        out.add(node)
    else:
        for c in node[1:]:
            _leaf_set(c, out)


def superscript(m: Monomial, k: int) -> Monomial:
    """Lift a plain monomial: on the path to leaf k each superscript points
    toward it, off the path every superscript is 1."""
    if k not in m.leaf_word:
        raise ValueError(f"no leaf labelled {k} in {m}")

    def lift(node):
        if isinstance(node, int):
            return node
        sup = 1
        kids = []
        for i, c in enumerate(node[1:], 1):
            leaves: set = set()
            _leaf_set(c, leaves)
            if k in leaves:
                sup = i
            kids.append(lift(c))
        return (f"{node[0]}^{sup}",) + tuple(kids)

    return Monomial(lift(m.node))


def superscript_poly(p: Polynomial, k: int) -> Polynomial:
    return Polynomial(
        p.field,
        {superscript(m, k): c for m, c in p.terms.items()},
        degree=p.degree,
    )


class DiPolynomial:
    """An element of the emphasized space: one plain-signature component per
    emphasis position 1..degree."""

    __slots__ = ("field", "degree", "components")

    def __init__(self, field, degree, components):
        components = tuple(components)
        if len(components) != degree:
            raise ValueError(f"need {degree} components, got {len(components)}")
        for c in components:
            if c.field != field or c.degree != degree:
                raise ValueError("component in the wrong space")
        self.field = field
        self.degree = degree
        self.components = components

    @classmethod
    def from_doubled(cls, p: Polynomial) -> "DiPolynomial":
        buckets: list[dict] = [dict() for _ in range(p.degree)]
        f = p.field
        for m, c in p.terms.items():
            plain, leaf = unsuperscript(m)
            bucket = buckets[leaf - 1]
            nv = f.add(bucket.get(plain, f.zero), c)
            if nv:
                bucket[plain] = nv
            else:
                bucket.pop(plain, None)
        return cls(
            f,
            p.degree,
            [Polynomial(f, b, degree=p.degree) for b in buckets],
        )

    def to_doubled(self) -> Polynomial:
        out = Polynomial(self.field, {}, degree=self.degree)
        for k, comp in enumerate(self.components, 1):
            if not comp.is_zero:
                out = out + superscript_poly(comp, k)
        return out

    def vector(self, index: dict, block: int) -> dict:
        out = {}
        for k, comp in enumerate(self.components, 1):
            for m, c in comp.terms.items():
                out[(k - 1) * block + index[m.node]] = c
        return out

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __eq__(self, other):
        return (
            isinstance(other, DiPolynomial)
            and self.field == other.field
            and self.degree == other.degree
            and self.components == other.components
        )

    def __str__(self):
        parts = [
            f"e{k}: {comp}"
            for k, comp in enumerate(self.components, 1)
            if not comp.is_zero
        ]
        return "[" + "; ".join(parts) + "]" if parts else "[0]"


def zero_identities(sig: Signature):
    """The doubled identities equating the two inner superscripts at any
    argument slot the outer superscript does not point to.  Returns
    (names, polynomials over the doubled signature)."""
    if isinstance(sig, DoubledSignature):
        raise ValueError("zero identities are indexed by the plain signature")
    names, polys = [], []
    for f, af in sig.operations:
        for k in range(1, af + 1):
            outer = Monomial((f"{f}^{k}",) + tuple(range(1, af + 1)))
            for j in range(1, af + 1):
                if j == k:
                    continue
                for g, ag in sig.operations:
                    for low in range(1, ag + 1):
                        for high in range(low + 1, ag + 1):
                            a = substitute_at(
                                outer,
                                j,
                                Monomial((f"{g}^{low}",) + tuple(range(1, ag + 1))),
                            )
                            b = substitute_at(
                                outer,
                                j,
                                Monomial((f"{g}^{high}",) + tuple(range(1, ag + 1))),
                            )
                            names.append(f"zero-{f}{k}-s{j}-{g}{low}{high}")
                            polys.append(a - b)
    return tuple(names), tuple(polys)


def bso_presentation(variety: VarietyPresentation) -> VarietyPresentation:
    """The dialgebra counterpart: zero identities plus every emphasized lift
    of each defining identity."""
    dsig = double_signature(variety.signature)
    names, polys = zero_identities(variety.signature)
    names, polys = list(names), list(polys)
    for gname, g in zip(variety.generator_names, variety.generators):
        for k in range(1, g.degree + 1):
            names.append(f"{gname}.e{k}")
            polys.append(superscript_poly(g, k))
    return VarietyPresentation(
        f"di-{variety.name}", dsig, polys, names
    )


def emphasis_kernel_rows(dsig, n: int, field, max_degree=DEFAULT_DEGREE_CAP):
    """Differences between each doubled monomial and the lift of its
    emphasized image: a basis of the kernel of the collapse map."""
    basis = enumerate_monomials(dsig, n, max_degree)
    index = monomial_index(dsig, n, max_degree)
    rows = []
    for i, m in enumerate(basis):
        plain, leaf = unsuperscript(m)
        canon = superscript(plain, leaf)
        j = index[canon.node]
        if j != i:
            rows.append({i: field.one, j: field.neg(field.one)})
    return rows


def lift_vector(p: Polynomial, k: int, dindex: dict) -> dict:
    """Coordinates of the emphasis-k lift of a plain polynomial inside the
    doubled basis of the same degree."""
    return poly_to_vector(superscript_poly(p, k), dindex)


def vector_to_dipolynomial(vec: dict, basis, field, n: int) -> DiPolynomial:
    """Decode a coordinate vector over n stacked copies of the plain basis."""
    block = len(basis)
    buckets: list[dict] = [dict() for _ in range(n)]
    for col, v in vec.items():
        k, c = divmod(col, block)
        buckets[k][basis[c]] = v
    return DiPolynomial(
        field, n, [Polynomial(field, b, degree=n) for b in buckets]
    )


def di_ideal_at_degree(
    variety: VarietyPresentation,
    n: int,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
) -> Subspace:
    """The emphasized elements all of whose components lie in the plain
    ideal: the block sum of one copy of the degree-n consequences per
    emphasis position."""
    comp = consequences_at_degree(variety, n, field, max_degree, cache)
    block = comp.ambient_dimension
    rows = []
    for k in range(n):
        off = k * block
        for r in comp.ideal.rows:
            rows.append({off + c: v for c, v in r.items()})
    return Subspace(field, n * block, rows)


def zeta_preimage(
    dsig: DoubledSignature,
    n: int,
    space: Subspace,
    field,
    max_degree: int = DEFAULT_DEGREE_CAP,
) -> Subspace:
    """Doubled elements whose collapse image lies in the given block
    subspace, computed as the kernel of collapse followed by reduction
    modulo the subspace."""
    base_index = monomial_index(dsig.base, n, max_degree)
    block = len(base_index)
    if space.ncols != n * block:
        raise ValueError(
            f"block subspace has {space.ncols} columns, expected {n * block}"
        )
    dbasis = enumerate_monomials(dsig, n, max_degree)
    rows = []
    for m in dbasis:
        plain, leaf = unsuperscript(m)
        col = (leaf - 1) * block + base_index[plain.node]
        rows.append(space.reduce({col: field.one}))
    ker = left_kernel_basis(field, rows, space.ncols)
    return row_reduce(field, len(dbasis), ker)


class DialgebraEquivalenceReport(NamedTuple):
    variety: str
    degree: int
    field: str
    ambient_dimension: int
    ideal_dimension: int
    quotient_dimension: int
    expected_quotient_dimension: int
    equal: bool


def verify_dialgebra_equivalence(
    variety: VarietyPresentation,
    n: int,
    field=QQ,
    max_degree: int = DEFAULT_DEGREE_CAP,
    cache=None,
) -> DialgebraEquivalenceReport:
    """Check that the dialgebra presentation's degree-n consequences equal
    the full preimage, under the collapse map, of the block sum of the plain
    consequences."""
    base = consequences_at_degree(variety, n, field, max_degree, cache)
    divar = bso_presentation(variety)
    di = consequences_at_degree(divar, n, field, max_degree, cache)

    block_ideal = di_ideal_at_degree(variety, n, field, max_degree, cache)
    expected = zeta_preimage(divar.signature, n, block_ideal, field, max_degree)

    return DialgebraEquivalenceReport(
        variety=variety.name,
        degree=n,
        field=field.name,
        ambient_dimension=di.ambient_dimension,
        ideal_dimension=di.ideal.dim,
        quotient_dimension=di.quotient_dimension,
        expected_quotient_dimension=n * base.quotient_dimension,
        equal=di.ideal == expected,
    )
