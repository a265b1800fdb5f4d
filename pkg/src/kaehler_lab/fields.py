"""Exact coefficient fields: the rationals and prime fields Z/p.

Rational elements are plain :class:`fractions.Fraction` values.  Prime field
elements are :class:`ModInt` instances carrying their modulus, so the
polynomial and linear algebra code can use ``+ - * /`` on either kind.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "ModInt",
    "QQ",
    "field_from_spec",
    "is_prime",
    "DEFAULT_PRIME",
]

DEFAULT_PRIME = 32003

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class ModInt:
    """Element of Z/p with canonical representative in ``0..p-1``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in Z/p")
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in Z/p")
        return ModInt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return ModInt(pow(self.v, -1, self.p), self.p) ** (-e)
        return ModInt(pow(self.v, e, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Common interface of the two supported coefficient fields."""

    characteristic: int = 0
    name: str = ""

    def __call__(self, value):
        return self.convert(value)

    def convert(self, value):  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def parse(self, text: str):
        """Parse ``"-3"`` or ``"3/4"`` into a field element."""
        m = _RATIONAL_RE.match(str(text))
        if not m:
            raise ValueError(f"not a rational number: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return self.convert(Fraction(num, den))

    def format(self, c) -> str:
        return str(c)

    def spec(self):
        """JSON form of the field, as accepted by :func:`field_from_spec`."""
        raise NotImplementedError  # pragma: no cover

    def __eq__(self, other):
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("field", self.characteristic))

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    def convert(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, ModInt):
            raise TypeError("cannot lift a prime field element to QQ")
        return Fraction(value)

    def spec(self):
        return "Q"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, value):
        p = self.characteristic
        if isinstance(value, ModInt):
            if value.p != p:
                raise ValueError(f"modulus mismatch: {value.p} vs {p}")
            return value
        if isinstance(value, int):
            return ModInt(value, p)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {p}")
            return ModInt(value.numerator * pow(value.denominator, -1, p), p)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {value!r} into GF({p})")

    def spec(self):
        return {"Fp": self.characteristic}


QQ = RationalField()


def field_from_spec(spec) -> Field:
    """Build a field from ``"Q"`` or ``{"Fp": p}``."""
    if spec in ("Q", "QQ", 0, None):
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        p = spec["Fp"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError(f"prime must be an integer, got {p!r}")
        return PrimeField(p)
    if isinstance(spec, int) and spec > 1:
        return PrimeField(spec)
    raise ValueError(f"unknown field specification: {spec!r}")
