"""Exact Gaussian rationals ``re + im*i``."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

ScalarLike = Union["GaussScalar", int, Fraction]


class GaussScalar:
    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        # Fraction keeps lowest terms with a positive denominator.
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussScalar is immutable")

    @classmethod
    def coerce(cls, x: ScalarLike) -> GaussScalar:
        if isinstance(x, GaussScalar):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        if isinstance(x, complex):
            raise TypeError("floating point complex values are not exact")
        raise TypeError(f"cannot convert {type(x).__name__} to GaussScalar")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> GaussScalar:
        return GaussScalar(self.re, -self.im)

    def __add__(self, other: ScalarLike) -> GaussScalar:
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> GaussScalar:
        return GaussScalar(-self.re, -self.im)

    def __sub__(self, other: ScalarLike) -> GaussScalar:
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> GaussScalar:
        return GaussScalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> GaussScalar:
        try:
            o = GaussScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.im and not o.im:
            return GaussScalar(self.re * o.re)
        return GaussScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> GaussScalar:
        o = GaussScalar.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero GaussScalar")
        norm = o.re * o.re + o.im * o.im
        num = self * o.conjugate()
        return GaussScalar(num.re / norm, num.im / norm)

    def __rtruediv__(self, other: ScalarLike) -> GaussScalar:
        return GaussScalar.coerce(other) / self

    def __pow__(self, n: int) -> GaussScalar:
        if n < 0:
            return GaussScalar(1) / self**-n
        out = GaussScalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"GaussScalar({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


I = GaussScalar(0, 1)
ZERO = GaussScalar(0)
ONE = GaussScalar(1)
