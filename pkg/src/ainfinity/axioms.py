"""Checkers for the unital/divisor-axiom conditions on operator systems.

Every check is report-valued: it never raises on failure, and a failing
check carries the first offending cell and input tuple.  The checks are
exact; for one-parameter families the comparisons are polynomial
identities in the family parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .spaces import Vec
from .systems import OperatorSystem


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: Optional[str] = None

    def __str__(self) -> str:
        mark = "pass" if self.passed else "FAIL"
        tail = f" [{self.witness}]" if self.witness else ""
        return f"{self.name}: {mark}{tail}"


@dataclass
class AxiomReport:
    kind: str
    checks: List[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.checks)


def _fail(name: str, witness: str) -> AxiomCheck:
    return AxiomCheck(name, False, witness)


def _ok(name: str) -> AxiomCheck:
    return AxiomCheck(name, True)


def _first_key(d):
    return sorted(d.keys())[0]


# -- individual axioms -------------------------------------------------------


def check_unitality_algebra(m: OperatorSystem) -> List[AxiomCheck]:
    space = m.source
    unit = space.unit
    zero = m.group.zero()
    checks = []

    bad = m.cell(1, zero).get((unit,))
    checks.append(_ok("unitality (i)") if bad is None
                  else _fail("unitality (i)", f"m_(1,0)(1) = {bad!r}"))

    tab = m.cell(2, zero)
    witness = None
    for i in range(space.dim):
        got = tab.get((unit, i), Vec())
        if got != Vec.basis(i):
            witness = f"m_(2,0)(1, {space.names[i]}) = {got!r}"
            break
        sign = Fraction(-1) ** space.deg(i)
        got = tab.get((i, unit), Vec())
        if got != Vec.basis(i, sign):
            witness = f"m_(2,0)({space.names[i]}, 1) = {got!r}"
            break
    checks.append(_ok("unitality (ii)") if witness is None else _fail("unitality (ii)", witness))

    checks.append(_unit_annihilation(m, exceptions={(1, zero), (2, zero)}, name="unitality (iii)"))
    return checks


def check_unitality_homomorphism(f: OperatorSystem) -> List[AxiomCheck]:
    src_unit = f.source.unit
    zero = f.group.zero()
    checks = []
    got = f.cell(1, zero).get((src_unit,), Vec())
    want = Vec.basis(f.target.unit)
    checks.append(_ok("unitality (II-1)") if got == want
                  else _fail("unitality (II-1)", f"f_(1,0)(1) = {got!r}"))
    checks.append(_unit_annihilation(f, exceptions={(1, zero)}, name="unitality (II-1')"))
    return checks


def _unit_annihilation(t: OperatorSystem, exceptions, name: str) -> AxiomCheck:
    """Entries with a unit input must vanish outside the excepted cells."""
    unit = t.source.unit
    for (k, beta) in t.cells():
        if (k, beta) in exceptions:
            continue
        for in_t in sorted(t.entries[(k, beta)]):
            if unit in in_t:
                return _fail(name, f"cell ({k}, {beta}) input {in_t} hits the unit")
    return _ok(name)


def check_cyclic_unitality(t: OperatorSystem) -> AxiomCheck:
    """sum_i t_{k+1,beta}(x_1^#, ..., x_{i-1}^#, e, x_i, ..., x_k) = 0.

    ``e`` runs over the degree-0 basis.  Contributions are collected per
    (cell, surrounding tuple, e) from the stored entries of the (k+1)-cells.
    """
    space = t.source
    deg0 = [i for i in range(space.dim) if space.deg(i) == 0]
    sums: Dict[Tuple, Dict[int, object]] = {}
    for (k1, beta), table in t.entries.items():
        if k1 < 1:
            continue
        if k1 == 1 and t.group.is_zero(beta):
            continue  # (k, beta) = (0, 0) instance is excluded
        for in_t, out in table.items():
            for i, idx in enumerate(in_t):
                if idx not in deg0:
                    continue
                rest = in_t[:i] + in_t[i + 1:]
                sign = 1
                for a in in_t[:i]:
                    if space.parity_shifted(a):
                        sign = -sign
                key = (k1 - 1, beta, rest, idx)
                acc = sums.setdefault(key, {})
                for j, c in out.items():
                    acc[j] = acc.get(j, Fraction(0)) + Fraction(sign) * c
    for key in sorted(sums, key=lambda kk: (t.group.E(kk[1]), kk[0], kk[1], kk[2], kk[3])):
        if not Vec(sums[key]).is_zero():
            k, beta, rest, e = key
            return _fail("cyclic unitality",
                         f"instance (k={k}, beta={beta}, args={rest}, e={t.source.names[e]})")
    return _ok("cyclic unitality")


def check_divisor_axiom(t: OperatorSystem) -> AxiomCheck:
    """sum_i t_{k+1,beta}(..., b, ...) = <d beta, b> t_{k,beta}(...) on the
    degree-1 basis, for every (k, beta) != (0, 0)."""
    space = t.source
    group = t.group
    h1 = space.h1
    h1pos = {idx: pos for pos, idx in enumerate(h1)}
    lhs: Dict[Tuple, Dict[int, object]] = {}
    for (k1, beta), table in t.entries.items():
        if k1 < 1 or (k1 == 1 and group.is_zero(beta)):
            continue
        for in_t, out in table.items():
            for i, idx in enumerate(in_t):
                if idx not in h1pos:
                    continue
                key = (k1 - 1, beta, in_t[:i] + in_t[i + 1:], idx)
                acc = lhs.setdefault(key, {})
                for j, c in out.items():
                    acc[j] = acc.get(j, Fraction(0)) + c
    rhs: Dict[Tuple, Dict[int, object]] = {}
    for (k, beta), table in t.entries.items():
        if group.is_zero(beta):
            continue
        dbeta = group.d(beta)
        for idx in h1:
            w = space.pair_h1pos(dbeta, h1pos[idx])
            if w == 0:
                continue
            for in_t, out in table.items():
                key = (k, beta, in_t, idx)
                acc = rhs.setdefault(key, {})
                for j, c in out.items():
                    acc[j] = acc.get(j, Fraction(0)) + w * c
    keys = set(lhs) | set(rhs)
    for key in sorted(keys, key=lambda kk: (group.E(kk[1]), kk[0], kk[1], kk[2], kk[3])):
        delta = dict(lhs.get(key, {}))
        for j, c in rhs.get(key, {}).items():
            delta[j] = delta.get(j, Fraction(0)) - c
        if not Vec(delta).is_zero():
            k, beta, rest, b = key
            return _fail("divisor axiom",
                         f"instance (k={k}, beta={beta}, args={rest}, b={space.names[b]})")
    return _ok("divisor axiom")


def check_semipositivity(t: OperatorSystem) -> AxiomCheck:
    beta = t.validate_semipositive()
    if beta is None:
        return _ok("semipositivity")
    return _fail("semipositivity", f"supported label {beta} has mu = {t.group.mu(beta)} < 0")


def check_boundary_pairing(f: OperatorSystem) -> AxiomCheck:
    """<d beta, f_{1,0}(b)> = <d beta, b> over all cutoff classes (II-4)."""
    from .labels import positive_classes
    space = f.source
    tgt = f.target
    h1 = space.h1
    table = f.cell(1, f.group.zero())
    for beta in positive_classes(f.group, f.context.cutoff, f.context.class_limit):
        dbeta = f.group.d(beta)
        for pos, idx in enumerate(h1):
            img = table.get((idx,), Vec())
            got = tgt.pair(dbeta, img)
            want = space.pair_h1pos(dbeta, pos)
            if got != want:
                return _fail("boundary pairing (II-4)",
                             f"beta={beta}, b={space.names[idx]}: {got} != {want}")
    return _ok("boundary pairing (II-4)")


# -- the full suites ----------------------------------------------------------


def check_ud_axioms(t: OperatorSystem) -> AxiomReport:
    """The category-membership axioms for objects / morphisms / homotopies.

    Algebras get unitality (i)-(iii); homomorphisms get the unital-morphism
    conditions and boundary-pairing; homotopy systems get unit
    annihilation.  All kinds get cyclic unitality, the divisor axiom, and
    semipositivity.
    """
    report = AxiomReport(t.kind)
    if t.kind == "algebra":
        report.checks.extend(check_unitality_algebra(t))
    elif t.kind == "homomorphism":
        report.checks.extend(check_unitality_homomorphism(t))
        report.checks.append(check_boundary_pairing(t))
    elif t.kind == "homotopy":
        report.checks.append(_unit_annihilation(t, exceptions=set(), name="unit annihilation"))
    report.checks.append(check_cyclic_unitality(t))
    report.checks.append(check_divisor_axiom(t))
    report.checks.append(check_semipositivity(t))
    return report
