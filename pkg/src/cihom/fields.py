"""Exact coefficient fields: odd prime fields GF(p) and the rationals.

Field elements are plain Python values (ints in [0, p) for GF(p), Fraction
for the rationals); the field object supplies the operations.  Everything is
immutable, so fields and elements can be shared freely between tasks.
"""

from fractions import Fraction


class FieldError(ValueError):
    pass


class PrimeField:
    """GF(p) for an odd prime p.  Elements are canonical ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p < 3 or any(p % q == 0 for q in range(2, min(p, 1 + int(p ** 0.5) + 1))):
            raise FieldError(f"modulus {p} is not an odd prime")
        self.p = p

    @property
    def tag(self) -> str:
        return f"f{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        d = a - b
        return d + self.p if d < 0 else d

    def neg(self, a):
        return self.p - a if a else 0

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def to_str(self, a) -> str:
        # Balanced representative keeps small negatives readable.
        return str(a - self.p) if a > self.p // 2 else str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """The rationals with arbitrary-precision Fraction elements."""

    __slots__ = ()

    tag = "rational"
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "RationalField()"


DEFAULT_PRIME = 32003


def field_by_tag(tag: str):
    """Resolve a field tag such as 'f32003' or 'rational' to a field object."""
    tag = tag.strip().lower()
    if tag in ("rational", "qq", "q"):
        return RationalField()
    if tag.startswith("f") and tag[1:].isdigit():
        return PrimeField(int(tag[1:]))
    if tag.isdigit():
        return PrimeField(int(tag))
    raise FieldError(f"unknown field tag {tag!r}")
