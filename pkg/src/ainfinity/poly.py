"""Exact univariate polynomials over the rationals.

Family-parameter dependence of operator entries is polynomial in one
variable ``s``, so differentiation and integration stay inside exact
rational arithmetic.  Scalars (``int``/``Fraction``) coerce to constant
polynomials in all arithmetic, and the rest of the engine treats "a
coefficient" as either a ``Fraction`` or a ``Poly`` interchangeably.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction, "Poly"]


class Poly:
    """Dense polynomial ``c0 + c1*s + ... + cn*s^n`` with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((Fraction(c),))

    @classmethod
    def s(cls) -> "Poly":
        """The polynomial ``s``."""
        return cls((0, 1))

    @classmethod
    def coerce(cls, x: Scalar) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def const_value(self) -> Fraction:
        if len(self.coeffs) > 1:
            raise ValueError(f"{self!r} is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: Scalar) -> "Poly":
        other = Poly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly(a)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Scalar) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: Scalar) -> "Poly":
        return Poly.coerce(other) + (-self)

    def __mul__(self, other: Scalar) -> "Poly":
        other = Poly.coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        c = Fraction(other)
        return Poly(tuple(a / c for a in self.coeffs))

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def deriv(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def antideriv(self) -> "Poly":
        """Antiderivative with zero constant term."""
        return Poly((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def integrate(self, a, b) -> Fraction:
        """Definite integral over [a, b]."""
        F = self.antideriv()
        return F(b) - F(a)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*s")
            else:
                parts.append(f"{c}*s^{i}")
        return "Poly(" + " + ".join(parts) + ")"


ZERO = Poly()
ONE = Poly.const(1)


def as_fraction(x: Scalar) -> Fraction:
    """Collapse a constant scalar to a Fraction; error on true s-dependence."""
    if isinstance(x, Poly):
        return x.const_value()
    return Fraction(x)


def scalar_is_zero(x: Scalar) -> bool:
    if isinstance(x, Poly):
        return x.is_zero()
    return x == 0


def scalar_eval(x: Scalar, s) -> Fraction:
    """Evaluate a coefficient at parameter value ``s`` (constants pass through)."""
    if isinstance(x, Poly):
        return x(s)
    return Fraction(x)


def scalar_deriv(x: Scalar) -> Scalar:
    if isinstance(x, Poly):
        return x.deriv()
    return Fraction(0)
