"""Sparse exact linear algebra over the scalar fields.

Vectors are dicts column -> nonzero scalar.  The engine keeps a fully
reduced row echelon basis at all times: every pivot column appears in
exactly one row, so an incoming vector is reduced in a single pass over
its own support.
"""

from __future__ import annotations


class _Reducer:
    """Incremental fully-reduced row echelon form."""

    __slots__ = ("field", "pivot_rows", "_colindex")

    def __init__(self, field):
        self.field = field
        self.pivot_rows: dict[int, dict[int, object]] = {}
        # column -> set of pivot columns whose rows touch it
        self._colindex: dict[int, set[int]] = {}

    def reduce(self, vec: dict) -> dict:
        """Return vec reduced against the current basis (a fresh dict)."""
        f = self.field
        out = dict(vec)
        # Rows are fully reduced, so eliminating a pivot column can only
        # introduce free columns; one pass over the original support and
        # its fill-in suffices.
        queue = sorted(c for c in out if c in self.pivot_rows)
        for col in queue:
            coeff = out.get(col)
            if not coeff:
                continue
            f.axpy_into(out, f.neg(coeff), self.pivot_rows[col])
        return out

    def insert(self, vec: dict) -> bool:
        """Reduce vec and extend the basis if a new pivot appears."""
        red = self.reduce(vec)
        if not red:
            return False
        f = self.field
        pivot = min(red)
        inv = f.inv(red[pivot])
        row = {c: f.mul(inv, v) for c, v in red.items()}
        # back-eliminate the new pivot from existing rows
        for other in list(self._colindex.get(pivot, ())):
            target = self.pivot_rows[other]
            coeff = target.get(pivot)
            if not coeff:
                continue
            before = set(target)
            f.axpy_into(target, f.neg(coeff), row)
            for c in before.difference(target):
                owners = self._colindex.get(c)
                if owners is not None:
                    owners.discard(other)
                    if not owners:
                        del self._colindex[c]
            for c in target.keys() - before:
                self._colindex.setdefault(c, set()).add(other)
        self.pivot_rows[pivot] = row
        for c in row:
            self._colindex.setdefault(c, set()).add(pivot)
        return True


class Subspace:
    """A subspace of a coordinate space, held as a canonical reduced basis."""

    __slots__ = ("field", "ncols", "rows", "pivots", "_pivmap")

    def __init__(self, field, ncols, reducer_or_rows):
        self.field = field
        self.ncols = ncols
        if isinstance(reducer_or_rows, _Reducer):
            items = sorted(reducer_or_rows.pivot_rows.items())
        else:
            items = sorted(
                ((min(r), dict(r)) for r in reducer_or_rows),
                key=lambda t: t[0],
            )
        self.pivots = tuple(p for p, _ in items)
        self.rows = tuple(r for _, r in items)
        self._pivmap = dict(items)
        if len(self._pivmap) != len(self.rows):
            raise ValueError("rows do not have distinct pivots")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        f = self.field
        out = dict(vec)
        piv = self._pivmap
        for col in sorted(c for c in out if c in piv):
            coeff = out.get(col)
            if not coeff:
                continue
            f.axpy_into(out, f.neg(coeff), piv[col])
        return out

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __le__(self, other):
        if self.ncols != other.ncols or self.field != other.field:
            raise ValueError("subspaces of different spaces")
        return all(other.contains(r) for r in self.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ncols={self.ncols})"


def row_reduce(field, ncols, rows) -> Subspace:
    """Canonical reduced row echelon basis of the span of the given rows."""
    r = _Reducer(field)
    for row in rows:
        r.insert(row)
    return Subspace(field, ncols, r)


def extend(space: Subspace, extra_rows) -> Subspace:
    """The span of a subspace together with additional vectors."""
    r = _Reducer(space.field)
    for p, row in zip(space.pivots, space.rows):
        r.pivot_rows[p] = dict(row)
        for c in row:
            r._colindex.setdefault(c, set()).add(p)
    for row in extra_rows:
        r.insert(row)
    return Subspace(space.field, space.ncols, r)


def rank(field, rows) -> int:
    r = _Reducer(field)
    return sum(1 for row in rows if r.insert(row))


def transpose(rows, ncols) -> list[dict]:
    cols: list[dict] = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for c, v in row.items():
            cols[c][i] = v
    return cols


def kernel_basis(field, ncols, rows) -> list[dict]:
    """Basis of the right null space, one vector per free column, ascending."""
    space = row_reduce(field, ncols, rows)
    pivots = set(space.pivots)
    piv_rows = dict(zip(space.pivots, space.rows))
    out = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: field.one}
        for p in space.pivots:
            coeff = piv_rows[p].get(free)
            if coeff:
                vec[p] = field.neg(coeff)
        out.append(vec)
    return out


def left_kernel_basis(field, rows, ncols) -> list[dict]:
    """Coefficient vectors u with sum_i u[i] * rows[i] = 0."""
    return kernel_basis(field, len(rows), transpose(rows, ncols))
