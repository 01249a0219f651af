"""Finite-dimensional graded spaces and sparse vectors over generic scalars.

Vector coordinates are exact scalars: ``Fraction`` for static structures,
:class:`~ainfinity.poly.Poly` for one-parameter families.  The two mix
freely in arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import DegreeViolation, DomainError, SchemaError
from .poly import Poly, scalar_deriv, scalar_eval, scalar_is_zero


class Vec:
    """Sparse vector over a graded basis; zero coordinates are never stored."""

    __slots__ = ("coords",)

    def __init__(self, coords: Optional[Dict[int, object]] = None):
        self.coords = {}
        if coords:
            for i, c in coords.items():
                if not scalar_is_zero(c):
                    self.coords[i] = c

    @classmethod
    def basis(cls, i: int, coeff=Fraction(1)) -> "Vec":
        return cls({i: coeff})

    def is_zero(self) -> bool:
        return not self.coords

    def items(self):
        return self.coords.items()

    def get(self, i: int):
        return self.coords.get(i, Fraction(0))

    def __add__(self, other: "Vec") -> "Vec":
        out = dict(self.coords)
        for i, c in other.coords.items():
            out[i] = out.get(i, Fraction(0)) + c
        return Vec(out)

    def __sub__(self, other: "Vec") -> "Vec":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "Vec":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "Vec":
        if scalar_is_zero(c):
            return Vec()
        return Vec({i: c * v for i, v in self.coords.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vec):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def eval_s(self, s) -> "Vec":
        return Vec({i: scalar_eval(c, s) for i, c in self.coords.items()})

    def deriv_s(self) -> "Vec":
        return Vec({i: scalar_deriv(c) for i, c in self.coords.items()})

    def map_coeffs(self, f) -> "Vec":
        return Vec({i: f(c) for i, c in self.coords.items()})

    def __repr__(self) -> str:
        if not self.coords:
            return "Vec(0)"
        inner = ", ".join(f"{i}: {c}" for i, c in sorted(self.coords.items(), key=lambda t: t[0]))
        return f"Vec({{{inner}}})"


def vec_accumulate(acc: Dict[int, object], v: Vec, coeff) -> None:
    """acc += coeff * v, in place on a plain dict accumulator."""
    if scalar_is_zero(coeff):
        return
    for i, c in v.coords.items():
        acc[i] = acc.get(i, Fraction(0)) + coeff * c


@dataclass(frozen=True)
class GradedSpace:
    """A graded basis with distinguished unit, degree-1, and degree-2 data.

    ``pairing`` has one row per lattice generator of H_1 and one column per
    degree-1 basis element; it realizes ``<alpha, b>`` for a lattice class
    alpha against a degree-1 vector b.
    """

    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    unit: int
    pairing: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "pairing", tuple(tuple(Fraction(v) for v in row) for row in self.pairing))
        if len(self.names) != len(self.degrees):
            raise SchemaError("names and degrees must have equal length")
        if len(set(self.names)) != len(self.names):
            raise SchemaError("basis names must be distinct")
        if any(d < 0 for d in self.degrees):
            raise SchemaError("degrees must be nonnegative")
        if not (0 <= self.unit < len(self.names)) or self.degrees[self.unit] != 0:
            raise SchemaError("unit index must name a degree-0 basis element")
        n1 = len(self.h1)
        for row in self.pairing:
            if len(row) != n1:
                raise SchemaError("pairing rows must match the degree-1 basis size")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def h1(self) -> Tuple[int, ...]:
        """Degree-1 basis indices, in basis order."""
        return tuple(i for i, d in enumerate(self.degrees) if d == 1)

    @property
    def h2(self) -> Tuple[int, ...]:
        """Degree-2 basis indices Theta_1..Theta_l, in basis order."""
        return tuple(i for i, d in enumerate(self.degrees) if d == 2)

    @property
    def lattice_rank(self) -> int:
        return len(self.pairing)

    def deg(self, i: int) -> int:
        return self.degrees[i]

    def parity_shifted(self, i: int) -> int:
        """Parity of the shifted degree deg - 1."""
        return (self.degrees[i] - 1) % 2

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SchemaError(f"no basis element named {name!r}") from None

    def unit_vec(self) -> Vec:
        return Vec.basis(self.unit)

    def basis_vec(self, i: int) -> Vec:
        return Vec.basis(i)

    def vec_degree(self, v: Vec) -> Optional[int]:
        """Common degree of a homogeneous vector; None for zero; error if mixed."""
        degs = {self.degrees[i] for i in v.coords}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeViolation(f"vector {v!r} is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def pair_h1pos(self, alpha: Sequence[int], pos: int):
        """<alpha, b> for b the pos-th degree-1 basis element."""
        return sum((Fraction(a) * self.pairing[j][pos] for j, a in enumerate(alpha)), Fraction(0))

    def pair(self, alpha: Sequence[int], v: Vec):
        """<alpha, v> for a degree-1 vector v (non-degree-1 coords are ignored)."""
        h1 = self.h1
        total = Fraction(0)
        for pos, i in enumerate(h1):
            c = v.coords.get(i)
            if c is not None:
                total = total + c * self.pair_h1pos(alpha, pos)
        return total

    def h0_part(self, v: Vec):
        """Coefficient of the unit."""
        return v.coords.get(self.unit, Fraction(0))

    def h2_parts(self, v: Vec) -> Tuple:
        return tuple(v.coords.get(i, Fraction(0)) for i in self.h2)

    def outside_h0_h2(self, v: Vec) -> Tuple[int, ...]:
        """Indices of coords not in H^0 + H^2 span (unit and Theta's)."""
        ok = {self.unit, *self.h2}
        return tuple(i for i in v.coords if i not in ok)


def invert_linear_map(table: Dict[int, Vec], dim: int) -> Dict[int, Vec]:
    """Invert a linear map given columnwise (basis index -> image Vec).

    Exact Gaussian elimination over the rationals; raises ``DomainError``
    for singular or s-dependent maps.
    """
    cols = []
    for j in range(dim):
        v = table.get(j, Vec())
        col = [Fraction(0)] * dim
        for i, c in v.items():
            if isinstance(c, Poly):
                c = c.const_value()
            col[i] = Fraction(c)
        cols.append(col)
    # augmented [A | I], rows indexed by i
    a = [[cols[j][i] for j in range(dim)] + [Fraction(1 if j == i else 0) for j in range(dim)]
         for i in range(dim)]
    for col in range(dim):
        piv = next((r for r in range(col, dim) if a[r][col] != 0), None)
        if piv is None:
            raise DomainError("linear map is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1, 1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(dim):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out: Dict[int, Vec] = {}
    for j in range(dim):
        v = {i: a[i][dim + j] for i in range(dim) if a[i][dim + j] != 0}
        if v:
            out[j] = Vec(v)
    return out
