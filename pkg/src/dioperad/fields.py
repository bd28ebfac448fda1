"""Exact scalar arithmetic: the rationals and prime fields.

Every computation in the package runs over one of these fields; no floating
point is used anywhere.  Rational scalars are ``fractions.Fraction`` values,
prime-field scalars are plain ints reduced into ``[0, p)``.
"""

from __future__ import annotations

from fractions import Fraction

_QZERO = Fraction(0)


class Rationals:
    """The field of rational numbers."""

    characteristic = 0
    name = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, a):
        if isinstance(a, Fraction):
            return a
        if isinstance(a, int):
            return Fraction(a)
        raise TypeError(f"cannot coerce {a!r} into the rationals")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def axpy_into(self, row: dict, c, other: dict) -> None:
        """row += c * other, in place, dropping entries that cancel."""
        for col, v in other.items():
            nv = row.get(col, _QZERO) + c * v
            if nv:
                row[col] = nv
            else:
                row.pop(col, None)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("field:q")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The prime field F_p; scalars are ints in [0, p)."""

    zero = 0
    one = 1

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"p:{self.p}"

    def coerce(self, a):
        if isinstance(a, int):
            return a % self.p
        if isinstance(a, Fraction):
            den = a.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator of {a} vanishes modulo {self.p}"
                )
            return a.numerator % self.p * pow(den, self.p - 2, self.p) % self.p
        raise TypeError(f"cannot coerce {a!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def axpy_into(self, row: dict, c, other: dict) -> None:
        """row += c * other, in place, dropping entries that cancel."""
        p = self.p
        for col, v in other.items():
            nv = (row.get(col, 0) + c * v) % p
            if nv:
                row[col] = nv
            else:
                row.pop(col, None)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("field:p", self.p))

    def __repr__(self):
        return f"GF({self.p})"


DEFAULT_PRIME = 1000003


def parse_field(name: str):
    """Parse a field tag: "q" for the rationals, "p:NNN" for F_NNN."""
    if name == "q":
        return QQ
    if name.startswith("p:"):
        try:
            p = int(name[2:])
        except ValueError:
            raise ValueError(f"bad field tag {name!r}") from None
        return PrimeField(p)
    raise ValueError(f"bad field tag {name!r} (expected 'q' or 'p:<prime>')")
