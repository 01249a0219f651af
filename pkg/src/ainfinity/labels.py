"""Label groups: energy, Maslov index, boundary map, and enumeration.

A label group is a finitely generated monoid of effective classes inside
``Z^r``, with three additive evaluations: a rational energy ``E`` that is
positive on every generator (so only finitely many classes sit below any
cutoff), an even integer Maslov index ``mu``, and a boundary homomorphism
into the lattice ``Z^m``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import CutoffExplosion, DomainError, SchemaError

# An effective class is a tuple of nonnegative generator multiplicities.
LabelClass = Tuple[int, ...]


@dataclass(frozen=True)
class LabelGroup:
    """Generators with additive energy / Maslov / boundary evaluations.

    ``energy[j]``, ``maslov[j]``, ``boundary[:, j]`` are the values on the
    j-th generator; a class ``beta`` is a multiplicity vector over the
    generators, so evaluation is a dot product.
    """

    energy: Tuple[Fraction, ...]
    maslov: Tuple[int, ...]
    boundary: Tuple[Tuple[int, ...], ...]  # m rows, one column per generator

    def __post_init__(self):
        object.__setattr__(self, "energy", tuple(Fraction(e) for e in self.energy))
        object.__setattr__(self, "maslov", tuple(int(m) for m in self.maslov))
        object.__setattr__(self, "boundary", tuple(tuple(int(v) for v in row) for row in self.boundary))
        n = self.n_generators
        if len(self.maslov) != n:
            raise SchemaError("maslov vector length must match generator count")
        for row in self.boundary:
            if len(row) != n:
                raise SchemaError("boundary matrix column count must match generator count")
        for m in self.maslov:
            if m % 2 != 0:
                raise SchemaError(f"Maslov values must be even, got {m}")
        for e in self.energy:
            if e <= 0:
                raise SchemaError(f"generator energies must be positive, got {e}")

    @property
    def n_generators(self) -> int:
        return len(self.energy)

    @property
    def lattice_rank(self) -> int:
        return len(self.boundary)

    # -- class helpers -------------------------------------------------------

    def zero(self) -> LabelClass:
        return (0,) * self.n_generators

    def is_zero(self, beta: LabelClass) -> bool:
        return not any(beta)

    def check(self, beta: LabelClass) -> LabelClass:
        beta = tuple(int(b) for b in beta)
        if len(beta) != self.n_generators:
            raise SchemaError(f"class {beta} has wrong length for {self.n_generators} generators")
        if any(b < 0 for b in beta):
            raise DomainError(f"class {beta} is not effective")
        return beta

    def add(self, a: LabelClass, b: LabelClass) -> LabelClass:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: LabelClass, b: LabelClass) -> LabelClass | None:
        """Componentwise difference, or None if it leaves the effective cone."""
        out = tuple(x - y for x, y in zip(a, b))
        return out if all(v >= 0 for v in out) else None

    def E(self, beta: LabelClass) -> Fraction:
        return sum((n * e for n, e in zip(beta, self.energy)), Fraction(0))

    def mu(self, beta: LabelClass) -> int:
        return sum(n * m for n, m in zip(beta, self.maslov))

    def d(self, beta: LabelClass) -> Tuple[int, ...]:
        """Boundary class in the lattice Z^m."""
        return tuple(sum(n * row[j] for j, n in enumerate(beta)) for row in self.boundary)

    def shifted_energy(self, xi: Sequence[Fraction]) -> "LabelGroup":
        """New group with energies E'(g) = E(g) + <boundary(g), xi>."""
        xi = tuple(Fraction(v) for v in xi)
        if len(xi) != self.lattice_rank:
            raise SchemaError("shift vector length must match lattice rank")
        new_energy = []
        for j in range(self.n_generators):
            dg = tuple(row[j] for row in self.boundary)
            new_energy.append(self.energy[j] + sum(x * v for x, v in zip(xi, dg)))
        return LabelGroup(tuple(new_energy), self.maslov, self.boundary)


def effective_classes(group: LabelGroup, e_max, limit: int = 20000) -> List[LabelClass]:
    """All monoid classes with energy <= e_max, sorted by (energy, lex).

    Walks the lattice cone in energy order with a heap; completeness follows
    from every generator having positive energy.
    """
    e_max = Fraction(e_max)
    n = group.n_generators
    zero = group.zero()
    seen = {zero}
    heap: List[Tuple[Fraction, LabelClass]] = [(Fraction(0), zero)]
    out: List[LabelClass] = []
    while heap:
        e, beta = heapq.heappop(heap)
        out.append(beta)
        if len(out) > limit:
            raise CutoffExplosion(f"more than {limit} classes below energy {e_max}")
        for j in range(n):
            nxt = beta[:j] + (beta[j] + 1,) + beta[j + 1:]
            if nxt in seen:
                continue
            en = e + group.energy[j]
            if en <= e_max:
                seen.add(nxt)
                heapq.heappush(heap, (en, nxt))
    return out


def positive_classes(group: LabelGroup, e_max, limit: int = 20000) -> List[LabelClass]:
    """Effective classes with 0 < E(beta) <= e_max."""
    return [b for b in effective_classes(group, e_max, limit) if any(b)]


def decompositions(group: LabelGroup, beta: LabelClass, parts: int) -> List[Tuple[LabelClass, ...]]:
    """All ordered tuples of ``parts`` effective classes summing to beta."""
    beta = group.check(beta)
    if parts == 0:
        return [()] if group.is_zero(beta) else []
    out: List[Tuple[LabelClass, ...]] = []

    def rec(remaining: LabelClass, slots: int, acc: List[LabelClass]):
        if slots == 1:
            out.append(tuple(acc) + (remaining,))
            return
        for piece in _sub_classes(remaining):
            rest = group.sub(remaining, piece)
            acc.append(piece)
            rec(rest, slots - 1, acc)
            acc.pop()

    rec(beta, parts, [])
    return out


def _sub_classes(beta: LabelClass) -> Iterator[LabelClass]:
    """All componentwise sub-classes of beta (the divisors of a monomial)."""
    if not beta:
        yield ()
        return
    head, tail = beta[0], beta[1:]
    for rest in _sub_classes(tail):
        for i in range(head + 1):
            yield (i,) + rest


def sub_classes(group: LabelGroup, beta: LabelClass) -> List[LabelClass]:
    """Sorted list of classes alpha with 0 <= alpha <= beta componentwise."""
    return sorted(_sub_classes(group.check(beta)))
