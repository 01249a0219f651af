"""Labeled multilinear operator systems and the diamond/brace calculus.

An operator system is a gapped family ``t = (t_{k,beta})`` of multilinear
operators on a finite-dimensional graded space, stored sparsely as tables
``input basis tuple -> output vector``.  Coefficients are exact rationals,
or polynomials in the family parameter ``s``.

Sign conventions.  Operators compose with Koszul signs in *shifted*
degrees: applying a tensor factor ``f`` across earlier inputs costs
``(-1)^(deg' f * sum of earlier input deg')`` where ``deg' x = deg x - 1``
for elements and ``deg' f = deg f + arity - 1`` for operators.  The brace
insertion twist on slots left of the inserted operator is exactly this
rule, so a single sign routine serves both compositions.

Degree bookkeeping is tracked through an integer offset: an operator
system of offset ``o`` has ``deg t_{k,beta} = o - k - mu(beta)``
(algebras: 2, homomorphism-shaped systems: 1, homotopies: 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import DegreeViolation, DomainError, NonInvertibleLinearPart, SchemaError, ShapeMismatch
from .labels import LabelClass, LabelGroup
from .novikov import NovikovContext
from .poly import Poly, scalar_is_zero
from .spaces import GradedSpace, Vec, invert_linear_map, vec_accumulate

Cell = Tuple[int, LabelClass]
Table = Dict[Tuple[int, ...], Vec]

OFFSETS = {"algebra": 2, "homomorphism": 1, "homotopy": 0}


def _amin(*vals: Optional[int]) -> Optional[int]:
    finite = [v for v in vals if v is not None]
    return min(finite) if finite else None


def _asub(a: Optional[int], n: int) -> Optional[int]:
    return None if a is None else a - n


class OperatorSystem:
    """A gapped family of labeled multilinear operators on a graded space.

    ``max_arity`` is the completeness window: entries are authoritative for
    arity <= max_arity (None means complete at every arity, as for finite
    hand-written systems).  Compositions propagate the window.
    """

    def __init__(self, kind: str, source: GradedSpace, target: GradedSpace,
                 group: LabelGroup, context: NovikovContext,
                 degree_offset: Optional[int] = None,
                 max_arity: Optional[int] = None):
        if degree_offset is None:
            if kind not in OFFSETS:
                raise SchemaError(f"kind {kind!r} needs an explicit degree offset")
            degree_offset = OFFSETS[kind]
        self.kind = kind
        self.source = source
        self.target = target
        self.group = group
        self.context = context
        self.degree_offset = degree_offset
        self.max_arity = max_arity
        self.entries: Dict[Cell, Table] = {}

    # -- construction --------------------------------------------------------

    def add_entry(self, k: int, beta: LabelClass, in_tuple: Iterable[int], out: Vec | Dict[int, object]) -> None:
        beta = self.group.check(beta)
        in_tuple = tuple(in_tuple)
        if len(in_tuple) != k:
            raise SchemaError(f"input tuple {in_tuple} does not have arity {k}")
        if isinstance(out, dict):
            out = Vec(out)
        if out.is_zero():
            return
        if k == 0 and self.group.is_zero(beta):
            raise SchemaError("gappedness forbids a (0, 0) entry")
        if self.group.E(beta) > self.context.cutoff:
            return  # beyond cutoff: outside the computation
        table = self.entries.setdefault((k, beta), {})
        cur = table.get(in_tuple)
        new = out if cur is None else cur + out
        if new.is_zero():
            table.pop(in_tuple, None)
            if not table:
                del self.entries[(k, beta)]
        else:
            table[in_tuple] = new

    def clone_empty(self, kind: Optional[str] = None, degree_offset: Optional[int] = None,
                    source: Optional[GradedSpace] = None, target: Optional[GradedSpace] = None,
                    max_arity: Optional[int] = None) -> "OperatorSystem":
        return OperatorSystem(kind or self.kind, source or self.source, target or self.target,
                              self.group, self.context,
                              self.degree_offset if degree_offset is None else degree_offset,
                              self.max_arity if max_arity is None else max_arity)

    @classmethod
    def identity(cls, space: GradedSpace, group: LabelGroup, context: NovikovContext) -> "OperatorSystem":
        s = cls("homomorphism", space, space, group, context)
        for i in range(space.dim):
            s.add_entry(1, group.zero(), (i,), Vec.basis(i))
        return s

    @classmethod
    def identity_sharp(cls, space: GradedSpace, group: LabelGroup, context: NovikovContext) -> "OperatorSystem":
        """The sign twist id_# sending x to (-1)^(deg' x) x."""
        s = cls("homomorphism", space, space, group, context)
        for i in range(space.dim):
            sign = -1 if space.parity_shifted(i) else 1
            s.add_entry(1, group.zero(), (i,), Vec.basis(i, Fraction(sign)))
        return s

    # -- inspection ----------------------------------------------------------

    def cells(self) -> List[Cell]:
        return sorted(self.entries.keys(), key=lambda c: (self.group.E(c[1]), c[0], c[1]))

    def cell(self, k: int, beta: LabelClass) -> Table:
        return self.entries.get((k, tuple(beta)), {})

    def expected_degree(self, k: int, beta: LabelClass) -> int:
        return self.degree_offset - k - self.group.mu(beta)

    def op_parity(self, k: int, beta: LabelClass) -> int:
        """Parity of the shifted operator degree deg + k - 1."""
        return (self.degree_offset - self.group.mu(beta) - 1) % 2

    def is_zero(self) -> bool:
        return not self.entries

    def first_nonzero(self) -> Optional[Tuple[int, LabelClass, Tuple[int, ...]]]:
        for (k, beta) in self.cells():
            table = self.entries[(k, beta)]
            for t in sorted(table):
                return (k, beta, t)
        return None

    def min_curvature_energy(self) -> Optional[Fraction]:
        """Smallest energy among arity-0 cells (None if there are none)."""
        energies = [self.group.E(b) for (k, b) in self.entries if k == 0]
        return min(energies) if energies else None

    def curvature_slack(self) -> int:
        """Max number of arity-0 factors that fit inside the cutoff."""
        e = self.min_curvature_energy()
        if e is None:
            return 0
        return int(self.context.cutoff / e)

    def validate_degrees(self) -> None:
        for (k, beta), table in self.entries.items():
            want = self.expected_degree(k, beta)
            for t, v in table.items():
                din = sum(self.source.deg(i) for i in t)
                for j in v.coords:
                    if self.target.deg(j) - din != want:
                        raise DegreeViolation(
                            f"entry ({k}, {beta}) {t}->{j} has degree "
                            f"{self.target.deg(j) - din}, expected {want}")

    def validate_semipositive(self) -> Optional[LabelClass]:
        """First supported label with negative Maslov index, if any."""
        for (k, beta) in self.cells():
            if self.group.mu(beta) < 0:
                return beta
        return None

    # -- pointwise / family helpers -------------------------------------------

    def eval_s(self, s0) -> "OperatorSystem":
        out = self.clone_empty()
        for (k, beta), table in self.entries.items():
            for t, v in table.items():
                out.add_entry(k, beta, t, v.eval_s(s0))
        return out

    def deriv_s(self) -> "OperatorSystem":
        out = self.clone_empty()
        for (k, beta), table in self.entries.items():
            for t, v in table.items():
                out.add_entry(k, beta, t, v.deriv_s())
        return out

    def map_entries(self, f) -> "OperatorSystem":
        out = self.clone_empty()
        for (k, beta), table in self.entries.items():
            for t, v in table.items():
                out.add_entry(k, beta, t, f(v))
        return out

    def __add__(self, other: "OperatorSystem") -> "OperatorSystem":
        _require_same_shape(self, other)
        out = self.clone_empty(max_arity=_amin(self.max_arity, other.max_arity))
        for sys in (self, other):
            for (k, beta), table in sys.entries.items():
                for t, v in table.items():
                    out.add_entry(k, beta, t, v)
        return out

    def __sub__(self, other: "OperatorSystem") -> "OperatorSystem":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "OperatorSystem":
        out = self.clone_empty()
        for (k, beta), table in self.entries.items():
            for t, v in table.items():
                out.add_entry(k, beta, t, v.scale(c))
        return out

    def __repr__(self) -> str:
        return (f"OperatorSystem(kind={self.kind!r}, cells={len(self.entries)}, "
                f"offset={self.degree_offset}, max_arity={self.max_arity})")


def _require_same_shape(a: OperatorSystem, b: OperatorSystem) -> None:
    if a.source != b.source or a.target != b.target:
        raise ShapeMismatch("operator systems act on different spaces")
    if a.group != b.group:
        raise ShapeMismatch("operator systems use different label groups")
    if a.context.cutoff != b.context.cutoff:
        raise ShapeMismatch("operator systems use different cutoffs")


# -- core tensor application ------------------------------------------------


def tensor_compose(outer_table: Table, factors: List[Tuple[Table, int]],
                   space: GradedSpace, acc: Table, extra_sign: int = 1) -> None:
    """Accumulate ``outer (factor_1 (x) ... (x) factor_l)`` into ``acc``.

    Each factor is ``(table, operator shifted-degree parity)``.  Koszul
    signs are computed from the shifted degrees of the basis inputs each
    factor passes over.
    """
    if not outer_table:
        return
    factor_items = [list(tab.items()) for tab, _ in factors]
    if any(not items for items in factor_items):
        return
    parities = [p for _, p in factors]
    sdeg = space.parity_shifted

    for picks in product(*factor_items):
        full_input: Tuple[int, ...] = ()
        sign_exp = 0
        prior = 0  # parity of total shifted degree of inputs consumed so far
        for (t, _), p in zip(picks, parities):
            if p:
                sign_exp += prior
            for i in t:
                prior = (prior + sdeg(i)) % 2
            full_input = full_input + t
        sign = -1 if sign_exp % 2 else 1
        # expand the product of output vectors against the outer table
        _expand_outer(outer_table, [v for _, v in picks], full_input,
                      Fraction(sign * extra_sign), acc)


def _expand_outer(outer_table: Table, vecs: List[Vec], full_input: Tuple[int, ...],
                  coeff, acc: Table) -> None:
    """acc[full_input] += coeff * outer(vec_1, ..., vec_l), multilinearly."""
    supports = [list(v.items()) for v in vecs]
    if any(not s for s in supports):
        return
    for combo in product(*supports):
        mid = tuple(i for i, _ in combo)
        out = outer_table.get(mid)
        if out is None:
            continue
        c = coeff
        for _, cv in combo:
            c = c * cv
        if scalar_is_zero(c):
            continue
        cur = acc.get(full_input)
        add = out.scale(c)
        new = add if cur is None else cur + add
        if new.is_zero():
            acc.pop(full_input, None)
        else:
            acc[full_input] = new


def _store(out: OperatorSystem, k: int, beta: LabelClass, table: Table) -> None:
    for t, v in table.items():
        out.add_entry(k, beta, t, v)


# -- diamond -----------------------------------------------------------------


def diamond(g: OperatorSystem, f: OperatorSystem,
            k_cap: Optional[int] = None) -> OperatorSystem:
    """Composition ``(g <> f)_{k,beta} = sum g_{l,b0} (f_{k1,b1} (x) ... (x) f_{kl,bl})``.

    The empty-product term contributes ``g_{0,beta}`` to the arity-0 output
    cells, which is what makes the identity system a two-sided unit and the
    composition-law identities hold on curved systems.  ``k_cap`` limits
    the output arity actually computed (defaults to the completeness
    window).
    """
    if f.target != g.source:
        raise ShapeMismatch("diamond needs target(f) = source(g)")
    if f.context.cutoff != g.context.cutoff or f.group != g.group:
        raise ShapeMismatch("diamond needs compatible contexts")
    if f.degree_offset != 1:
        raise DomainError("diamond factors must be homomorphism-shaped (degree offset 1)")
    group, cutoff = f.group, f.context.cutoff
    window = _amin(f.max_arity, _asub(g.max_arity, f.curvature_slack()))
    if k_cap is None:
        k_cap = window
    kind = "homomorphism" if g.kind == f.kind == "homomorphism" else "defect"
    out = OperatorSystem(kind, f.source, g.target, group, f.context,
                         degree_offset=g.degree_offset,
                         max_arity=_amin(window, k_cap))

    f_cells = sorted(((k, b, group.E(b)) for (k, b) in f.entries),
                     key=lambda c: (c[2], c[0]))
    for (ell, b0), outer in g.entries.items():
        e0 = group.E(b0)
        if ell == 0:
            _store(out, 0, b0, outer)
            continue

        def rec(slot: int, chosen: List[Tuple[int, LabelClass]], e_used: Fraction, k_used: int):
            if slot == ell:
                beta = b0
                for _, bb in chosen:
                    beta = group.add(beta, bb)
                factors = [(f.entries[(kk, bb)], f.op_parity(kk, bb)) for kk, bb in chosen]
                table: Table = {}
                tensor_compose(outer, factors, f.source, table)
                _store(out, k_used, beta, table)
                return
            for kk, bb, eb in f_cells:
                if e0 + e_used + eb > cutoff:
                    continue
                if k_cap is not None and k_used + kk > k_cap:
                    continue
                chosen.append((kk, bb))
                rec(slot + 1, chosen, e_used + eb, k_used + kk)
                chosen.pop()

        rec(0, [], Fraction(0), 0)
    return out


# -- brace -------------------------------------------------------------------


def brace(g: OperatorSystem, h: OperatorSystem) -> OperatorSystem:
    """Gerstenhaber insertion ``g{h}`` with the shifted-degree twist.

    ``g{h}_{k,beta} = sum g_{a,b'} (id^lam_{# deg' h} (x) h_{nu,b''} (x) id^mu)``
    over ``lam + mu + nu = k`` and ``b' + b'' = beta``.
    """
    if g.source != h.target or g.source != h.source:
        raise ShapeMismatch("brace needs h to act on the source of g")
    group, cutoff = g.group, g.context.cutoff
    out = OperatorSystem("defect", h.source, g.target, group, g.context,
                         degree_offset=g.degree_offset + h.degree_offset - 1,
                         max_arity=_amin(_asub(g.max_arity, 1), h.max_arity))
    sdeg = g.source.parity_shifted
    for (a, b1), outer in g.entries.items():
        if a == 0:
            continue
        e1 = group.E(b1)
        for (nu, b2), inner in h.entries.items():
            if e1 + group.E(b2) > cutoff:
                continue
            parity_h = h.op_parity(nu, b2)
            beta = group.add(b1, b2)
            k_out = a - 1 + nu
            for pos in range(a):
                for o_t, o_v in outer.items():
                    target_idx = o_t[pos]
                    twist = sum(sdeg(i) for i in o_t[:pos]) % 2 if parity_h else 0
                    for in_t, in_v in inner.items():
                        c = in_v.coords.get(target_idx)
                        if c is None:
                            continue
                        if twist:
                            c = c * Fraction(-1)
                        comp = o_t[:pos] + in_t + o_t[pos + 1:]
                        out.add_entry(k_out, beta, comp, o_v.scale(c))
    return out


# -- defects ------------------------------------------------------------------


def ainfty_defect(m: OperatorSystem) -> OperatorSystem:
    """``m{m}``; the system is A-infinity iff this vanishes up to cutoff."""
    return brace(m, m)


def is_ainfty(m: OperatorSystem) -> bool:
    return ainfty_defect(m).is_zero()


def hom_defect(f: OperatorSystem, m_src: OperatorSystem, m_tgt: OperatorSystem) -> OperatorSystem:
    """``m_tgt <> f - f{m_src}``; zero iff f is an A-infinity homomorphism."""
    return diamond(m_tgt, f) - brace(f, m_src)


def sharp(f: OperatorSystem) -> OperatorSystem:
    """``f_# = f <> id_#``."""
    return diamond(f, OperatorSystem.identity_sharp(f.source, f.group, f.context))


# -- structure transport -------------------------------------------------------


def _linear_part(u: OperatorSystem) -> Dict[int, Vec]:
    table = u.cell(1, u.group.zero())
    cols: Dict[int, Vec] = {}
    for t, v in table.items():
        for c in v.coords.values():
            if isinstance(c, Poly) and not c.is_const():
                raise NonInvertibleLinearPart("linear part must not depend on the family parameter")
        cols[t[0]] = v
    return cols


def transport_structure(m: OperatorSystem, u: OperatorSystem,
                        k_max: Optional[int] = None) -> Tuple[OperatorSystem, OperatorSystem]:
    """Solve ``m <> u = u{m'}`` for the unique gapped A-infinity structure m'.

    ``u`` becomes a homomorphism (m', C') -> (m, C) with zero defect; the
    solve walks cells in (energy, arity) order, pivoting on the invertible
    linear part of u.
    """
    if u.target != m.source:
        raise ShapeMismatch("transport needs target(u) = source(m)")
    group, ctx = m.group, m.context
    space = u.source
    try:
        u10_inv = invert_linear_map(_linear_part(u), space.dim)
    except DomainError as e:
        raise NonInvertibleLinearPart(str(e)) from e
    if k_max is None:
        k_max = _amin(_asub(u.max_arity, 1), _asub(m.max_arity, u.curvature_slack()))
    if k_max is None:
        k_max = 2 + u.curvature_slack() + max((k for (k, _) in m.entries), default=1)

    rhs = diamond(m, u)
    m_prime = OperatorSystem("algebra", space, space, group, ctx, max_arity=k_max)

    classes = _supported_classes(ctx, group)
    cells = sorted(((k, b) for b in classes for k in range(k_max + 1)),
                   key=lambda c: (group.E(c[1]), c[0], c[1]))
    inv_table = {((j,)): v for j, v in u10_inv.items()}
    for (k, beta) in cells:
        if k == 0 and group.is_zero(beta):
            continue
        have = brace_cell(u, m_prime, k, beta)
        want = rhs.cell(k, beta)
        delta: Table = {}
        keys = set(have) | set(want)
        for t in keys:
            v = want.get(t, Vec()) - have.get(t, Vec())
            if not v.is_zero():
                delta[t] = v
        if not delta:
            continue
        for t, v in delta.items():
            acc: Dict[int, object] = {}
            for j, c in v.items():
                col = u10_inv.get(j)
                if col is None:
                    continue
                vec_accumulate(acc, col, c)
            m_prime.add_entry(k, beta, t, Vec(acc))
    return m_prime, u


def _supported_classes(ctx: NovikovContext, group: LabelGroup) -> List[LabelClass]:
    from .labels import effective_classes
    return effective_classes(group, ctx.cutoff, ctx.class_limit)


def brace_cell(g: OperatorSystem, h: OperatorSystem, k: int, beta: LabelClass) -> Table:
    """The single output cell ``g{h}_{k,beta}`` (used by order-by-order solves)."""
    group = g.group
    sdeg = g.source.parity_shifted
    acc: Table = {}
    for (a, b1), outer in g.entries.items():
        if a == 0 or a - 1 > k:
            continue
        nu = k - a + 1
        b2 = group.sub(beta, b1)
        if b2 is None:
            continue
        inner = h.cell(nu, b2)
        if not inner:
            continue
        parity_h = h.op_parity(nu, b2)
        for pos in range(a):
            for o_t, o_v in outer.items():
                target_idx = o_t[pos]
                twist = sum(sdeg(i) for i in o_t[:pos]) % 2 if parity_h else 0
                for in_t, in_v in inner.items():
                    c = in_v.coords.get(target_idx)
                    if c is None:
                        continue
                    if twist:
                        c = c * Fraction(-1)
                    comp = o_t[:pos] + in_t + o_t[pos + 1:]
                    cur = acc.get(comp)
                    add = o_v.scale(c)
                    new = add if cur is None else cur + add
                    if new.is_zero():
                        acc.pop(comp, None)
                    else:
                        acc[comp] = new
    return acc
