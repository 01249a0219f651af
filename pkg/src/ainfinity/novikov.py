"""Truncation-aware exact arithmetic in the Novikov field.

Elements are finite sums ``sum c_i * T^(a_i)`` with rational exponents and
rational coefficients, together with a *precision*: a rational bound below
which the element is known exactly.  Terms at or above the precision are
unknown and never stored, in the style of big-O interval arithmetic for
valued fields.  Precision ``None`` means the element is exact (known to
all orders).

Precision propagation:

* ``add``: min of the operand precisions;
* ``mul``: ``min(p_x + val(y), p_y + val(x))`` -- the weakest sound rule;
* scalar multiples keep the precision (zero scalar gives the exact zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DomainError, ParseError

# precision / valuation values: Fraction, or None meaning +infinity
Prec = Optional[Fraction]


def _pmin(a: Prec, b: Prec) -> Prec:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _padd(a: Prec, b: Prec) -> Prec:
    """a + b with None acting as +infinity."""
    if a is None or b is None:
        return None
    return a + b


def _plt(x: Fraction, p: Prec) -> bool:
    """x < p with None acting as +infinity."""
    return p is None or x < p


class NovikovElement:
    """A truncated Novikov field element with tracked precision."""

    __slots__ = ("terms", "precision")

    def __init__(self, terms: Iterable[Tuple[Fraction, Fraction]] = (), precision: Prec = None):
        merged: dict[Fraction, Fraction] = {}
        for e, c in terms:
            e = Fraction(e)
            c = Fraction(c)
            merged[e] = merged.get(e, Fraction(0)) + c
        if precision is not None:
            precision = Fraction(precision)
        kept = sorted((e, c) for e, c in merged.items() if c != 0 and _plt(e, precision))
        self.terms: Tuple[Tuple[Fraction, Fraction], ...] = tuple(kept)
        self.precision: Prec = precision

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, precision: Prec = None) -> "NovikovElement":
        return cls((), precision)

    @classmethod
    def one(cls) -> "NovikovElement":
        return cls(((Fraction(0), Fraction(1)),))

    @classmethod
    def monomial(cls, exponent, coeff=1, precision: Prec = None) -> "NovikovElement":
        return cls(((Fraction(exponent), Fraction(coeff)),), precision)

    @classmethod
    def from_rational(cls, c, precision: Prec = None) -> "NovikovElement":
        return cls(((Fraction(0), Fraction(c)),), precision)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        """No stored terms (zero up to the stored precision)."""
        return not self.terms

    def is_exact(self) -> bool:
        return self.precision is None

    def valuation(self) -> Prec:
        """Smallest stored exponent; None (+infinity) for the zero element."""
        return self.terms[0][0] if self.terms else None

    def leading(self) -> Tuple[Fraction, Fraction]:
        if not self.terms:
            raise DomainError("zero element has no leading term")
        return self.terms[0]

    def coefficient(self, exponent) -> Fraction:
        e = Fraction(exponent)
        for ee, cc in self.terms:
            if ee == e:
                return cc
        return Fraction(0)

    def truncate(self, precision: Prec) -> "NovikovElement":
        return NovikovElement(self.terms, _pmin(self.precision, precision))

    def with_precision(self, precision: Prec) -> "NovikovElement":
        """Reinterpret at the given precision (may discard terms)."""
        return NovikovElement(self.terms, precision)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "NovikovElement") -> "NovikovElement":
        p = _pmin(self.precision, other.precision)
        return NovikovElement(self.terms + other.terms, p)

    def __neg__(self) -> "NovikovElement":
        return NovikovElement(tuple((e, -c) for e, c in self.terms), self.precision)

    def __sub__(self, other: "NovikovElement") -> "NovikovElement":
        return self + (-other)

    def __mul__(self, other: "NovikovElement") -> "NovikovElement":
        p = _pmin(_padd(self.precision, other.valuation()),
                  _padd(other.precision, self.valuation()))
        prod = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if _plt(e, p):
                    prod.append((e, c1 * c2))
        return NovikovElement(prod, p)

    def scalar_mul(self, c) -> "NovikovElement":
        c = Fraction(c)
        if c == 0:
            return NovikovElement()
        return NovikovElement(tuple((e, c * cc) for e, cc in self.terms), self.precision)

    def __pow__(self, n: int) -> "NovikovElement":
        if n < 0:
            return invert(self) ** (-n)
        out = NovikovElement.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        """Equality of all terms below the minimum of the two precisions."""
        if not isinstance(other, NovikovElement):
            return NotImplemented
        p = _pmin(self.precision, other.precision)
        a = tuple((e, c) for e, c in self.terms if _plt(e, p))
        b = tuple((e, c) for e, c in other.terms if _plt(e, p))
        return a == b

    __hash__ = None  # equality is precision-relative

    def __repr__(self) -> str:
        return f"NovikovElement({format_novikov(self)!r})"

    def __str__(self) -> str:
        return format_novikov(self)


def valuation(x: NovikovElement) -> Prec:
    return x.valuation()


def add(x: NovikovElement, y: NovikovElement) -> NovikovElement:
    return x + y


def mul(x: NovikovElement, y: NovikovElement) -> NovikovElement:
    return x * y


def neg(x: NovikovElement) -> NovikovElement:
    return -x


def scalar_mul(c, x: NovikovElement) -> NovikovElement:
    return x.scalar_mul(c)


def invert(x: NovikovElement, precision: Prec = None) -> NovikovElement:
    """Multiplicative inverse by geometric expansion around the leading term.

    The result carries absolute precision ``p - 2*val(x)`` where ``p`` is
    the input precision (relative precision is preserved).  Inverting an
    exact multi-term element needs an explicit target precision, since the
    geometric series does not terminate.
    """
    if x.is_zero():
        raise ZeroDivisionError("cannot invert a Novikov element with no stored terms")
    a, c = x.leading()
    lead_inv = NovikovElement.monomial(-a, Fraction(1, 1) / c)
    if precision is None and x.precision is not None:
        precision = x.precision - 2 * a
    tail = NovikovElement(x.terms[1:], x.precision)
    if tail.is_zero() and x.precision is None:
        return lead_inv  # exact monomial
    if precision is None:
        raise DomainError("inverting an exact multi-term element requires a target precision")
    # u = tail/lead has positive valuation; 1/x = lead^-1 * sum (-u)^k
    u = (tail * lead_inv).truncate(precision + a)
    acc = NovikovElement.one().truncate(precision + a)
    power = NovikovElement.one().truncate(precision + a)
    k = 0
    while True:
        power = (power * u).truncate(precision + a)
        k += 1
        if power.is_zero():
            break
        acc = acc + power.scalar_mul(Fraction((-1) ** k))
    return (lead_inv * acc).truncate(precision)


def exp_plus(x: NovikovElement, precision: Prec = None) -> NovikovElement:
    """exp of an element of positive valuation, term by term.

    Requires ``val(x) > 0`` (the zero element counts, giving 1).  The sum
    ``sum x^k / k!`` is finite modulo the precision.
    """
    if precision is None:
        precision = x.precision
    v = x.valuation()
    if x.is_zero():
        return NovikovElement.one().truncate(precision)
    if v <= 0:
        raise DomainError(f"exp_plus requires positive valuation, got {v}")
    if precision is None:
        raise DomainError("exponentiating an exact nonzero element requires a target precision")
    acc = NovikovElement.one().truncate(precision)
    power = NovikovElement.one().truncate(precision)
    k = 0
    while True:
        power = (power * x).truncate(precision)
        k += 1
        if power.is_zero():
            break
        acc = acc + power.scalar_mul(Fraction(1, factorial(k)))
    return acc


def residue(x: NovikovElement) -> Fraction:
    """Reduction to the residue field: the coefficient of T^0.

    Requires ``val(x) >= 0``.
    """
    v = x.valuation()
    if v is not None and v < 0:
        raise DomainError(f"residue requires nonnegative valuation, got {v}")
    return x.coefficient(0)


# -- rendering / parsing ---------------------------------------------------


def _fmt_exp(e: Fraction) -> str:
    return f"T^({e})" if e.denominator != 1 else f"T^{e.numerator}" if e != 0 else ""


def format_novikov(x: NovikovElement) -> str:
    """Canonical rendering ``c1*T^(a/b) + ...`` in increasing exponent order."""
    parts = []
    for e, c in x.terms:
        if e == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(_fmt_exp(e))
        else:
            parts.append(f"{c}*{_fmt_exp(e)}")
    body = " + ".join(parts) if parts else "0"
    if x.precision is not None:
        body += f" + O(T^({x.precision}))"
    return body


def parse_novikov(text: str) -> NovikovElement:
    """Inverse of :func:`format_novikov` (exact round trip)."""
    text = text.strip()
    if not text:
        raise ParseError("empty Novikov literal")
    precision: Prec = None
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError(f"malformed Novikov literal {text!r}")
        if chunk.startswith("O("):
            inner = chunk[2:].rstrip(")")
            if not inner.startswith("T^"):
                raise ParseError(f"malformed O-term {chunk!r}")
            precision = Fraction(inner[2:].strip("()"))
            continue
        if chunk == "0":
            continue
        if "*" in chunk:
            cs, es = chunk.split("*", 1)
            coeff = Fraction(cs.strip())
        elif chunk.startswith("T^"):
            coeff, es = Fraction(1), chunk
        else:
            coeff, es = Fraction(chunk), None
        if es is None:
            exp = Fraction(0)
        else:
            es = es.strip()
            if not es.startswith("T^"):
                raise ParseError(f"malformed term {chunk!r}")
            exp = Fraction(es[2:].strip("()"))
        terms.append((exp, coeff))
    return NovikovElement(terms, precision)


@dataclass(frozen=True)
class NovikovContext:
    """Global truncation and enumeration limits.

    ``cutoff`` is the energy cutoff E_max: the default precision for series
    assembled from labeled operator systems; terms at energy >= cutoff are
    outside the computation.
    """

    cutoff: Fraction = field(default_factory=lambda: Fraction(5))
    class_limit: int = 20000
    tree_limit: int = 200000

    def __post_init__(self):
        object.__setattr__(self, "cutoff", Fraction(self.cutoff))
        if self.cutoff <= 0:
            raise DomainError("energy cutoff must be positive")

    def invert(self, x: NovikovElement) -> NovikovElement:
        return invert(x, precision=self.cutoff)

    def exp(self, x: NovikovElement) -> NovikovElement:
        return exp_plus(x, precision=self.cutoff)
