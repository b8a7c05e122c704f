"""Exact scalars: Python ints, normalized fractions, and elements of Q(sqrt d).

Integers are plain ``int`` and rationals are ``fractions.Fraction``; both are
already arbitrary precision and kept in lowest terms.  The only scalar type
defined here is :class:`QuadExt`, an element ``a + b*w`` with ``w**2 = d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Scalar = Union[int, Fraction, "QuadExt"]


class ExactError(ArithmeticError):
    """Raised for forbidden exact operations (zero divisors, mixed fields)."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_arith(op: str, lhs, rhs) -> Fraction:
    """Apply ``op`` in {add, sub, mul, div} to two rationals.

    Division by zero raises :class:`ExactError` instead of the builtin
    ``ZeroDivisionError`` so callers can catch one error type for all
    exact-arithmetic failures.
    """
    a, b = as_fraction(lhs), as_fraction(rhs)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ExactError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rat_str(x) -> str:
    """Serialize a rational as ``"num/den"``."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rat_parse(s: str) -> Fraction:
    return Fraction(s)


def scalar_str(x) -> str:
    """Decimal string for an int, ``num/den`` for a Fraction."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return rat_str(x)
    if isinstance(x, QuadExt):
        return str(x)
    raise TypeError(f"unsupported scalar {x!r}")


@dataclass(frozen=True)
class QuadExt:
    """``a + b*w`` where ``w**2 == d``; a, b, d rational.

    Arithmetic between elements requires equal ``d``.  Plain ints and
    Fractions are coerced into the field of the other operand.
    """

    a: Fraction
    b: Fraction
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        object.__setattr__(self, "d", as_fraction(self.d))

    @classmethod
    def rational(cls, a, d) -> "QuadExt":
        return cls(as_fraction(a), Fraction(0), d)

    @classmethod
    def gen(cls, d) -> "QuadExt":
        """The adjoined element ``w`` itself."""
        return cls(Fraction(0), Fraction(1), d)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ExactError(f"mismatched extensions: d={self.d} vs d={other.d}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExt(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def trace(self) -> Fraction:
        return 2 * self.a

    def inv(self) -> "QuadExt":
        if self.is_zero():
            raise ExactError("inverse of zero")
        nrm = self.norm()
        if nrm == 0:
            # only possible when d is the square of a rational
            raise ExactError(f"zero divisor {self} (d={self.d} is a rational square)")
        c = self.conj()
        return QuadExt(c.a / nrm, c.b / nrm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = QuadExt(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __str__(self):
        return f"{self.a} + {self.b}*w (w^2={self.d})"

    def to_json(self) -> dict:
        return {"a": rat_str(self.a), "b": rat_str(self.b), "d": rat_str(self.d)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadExt":
        return cls(Fraction(obj["a"]), Fraction(obj["b"]), Fraction(obj["d"]))


def quad_mul(lhs: QuadExt, rhs: QuadExt) -> QuadExt:
    return lhs * rhs


def quad_inv(x: QuadExt) -> QuadExt:
    return x.inv()


def squarefree_split(q) -> tuple[Fraction, int]:
    """Write ``sqrt(q)`` as ``coef * sqrt(r)`` with ``r`` a squarefree integer.

    ``q`` must be a non-negative rational.  Factoring is by trial division, so
    this is meant for the modest radicands that show up in printed values.
    """
    q = as_fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), 1
    # sqrt(p/s) = sqrt(p*s)/s
    m, den = q.numerator * q.denominator, q.denominator
    outside, r = 1, 1
    f = 2
    while f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        outside *= f ** (e // 2)
        if e % 2:
            r *= f
        f += 1 if f == 2 else 2
    r *= m
    return Fraction(outside, den), r
