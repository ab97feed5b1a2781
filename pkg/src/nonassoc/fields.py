"""Exact ground fields: the rationals and prime fields GF(p).

Field elements are stored as plain Python values so the linear algebra can
work on them without wrapper overhead: :class:`fractions.Fraction` over Q and
an ``int`` in ``range(p)`` over GF(p).  :class:`Scalar` is the user-facing
value type that carries its field along.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, NotEnoughElements, ParseError

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Scalar",
    "scalar_arith",
    "distinct_scalars",
    "parse_field",
    "parse_scalar",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``characteristic == 0``, otherwise the prime field GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self):
        """Number of elements, ``None`` for Q."""
        return self.characteristic or None

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    __repr__ = __str__

    # raw-value arithmetic ------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, value):
        """Coerce an int, Fraction or numeric string into a raw field value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} value used in {self}")
            return value.value
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes in {self}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.characteristic == 0:
            return Fraction(1) / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        return a**n if self.characteristic == 0 else pow(a, n, self.characteristic)

    def elements(self):
        """Iterate over GF(p) in the order 0, 1, ..., p-1."""
        if self.characteristic == 0:
            raise NotEnoughElements("Q cannot be enumerated")
        return range(self.characteristic)

    def format(self, a) -> str:
        if self.characteristic:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Scalar:
    """An element of a specific field, in canonical form."""

    field: Field
    value: object

    @classmethod
    def of(cls, field: Field, value) -> "Scalar":
        return cls(field, field(value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.power(self.value, n))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` in {"add", "sub", "mul", "div"}; both operands must share a field."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    try:
        fn = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul, "div": a.field.div}[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return Scalar(a.field, fn(a.value, b.value))


def distinct_scalars(field: Field, count: int) -> list:
    """The raw values 0, 1, ..., count-1 embedded in ``field``."""
    if field.is_finite and count > field.characteristic:
        raise NotEnoughElements(f"{field} has only {field.characteristic} elements, {count} requested")
    return [field(i) for i in range(count)]


_FIELD_RE = re.compile(r"^\s*(?:field\s+)?(?:(Q|QQ)|GF\(\s*(\d+)\s*\)|GF(\d+)|F(\d+))\s*$")
_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``GF(7)`` (optionally prefixed by ``field``)."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError("expected 'Q' or 'GF(p)'", text, 0)
    if m.group(1):
        return QQ
    p = int(next(g for g in m.groups()[1:] if g))
    if not is_prime(p):
        raise ParseError(f"{p} is not prime", text, 0)
    return Field(p)


def parse_scalar(text: str, field: Field = QQ):
    """Parse an integer or fraction literal into a raw value of ``field``."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ParseError("expected an integer or fraction", text, 0)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DivisionByZero("zero denominator")
    return field(Fraction(num, den))
