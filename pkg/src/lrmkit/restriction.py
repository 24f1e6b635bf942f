"""Left restriction monoids: plus, projections, totals, natural order, joins.

Products are written left to right, so in a monoid of partial maps ``st``
means "first ``s``, then ``t``" and ``s+`` is the identity on the domain of
``s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .core import (
    AxiomReport,
    BooleanAlgebra,
    Checker,
    FiniteMonoid,
    StructureError,
    as_vector,
    check_boolean_algebra,
    check_monoid,
    submonoid_table,
)


class NotCompatible(ValueError):
    pass


class NoJoin(LookupError):
    pass


class NotFactorizable(ValueError):
    pass


class NotBoolean(ValueError):
    def __init__(self, message: str, report: AxiomReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class LeftRestrictionMonoid:
    monoid: FiniteMonoid
    plus: tuple[int, ...]
    zero: int | None = None
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.monoid.size
        object.__setattr__(self, "plus", as_vector(self.plus, n, n, "plus"))
        if self.zero is not None and not 0 <= self.zero < n:
            raise StructureError(f"zero {self.zero} out of range")
        if self.labels is not None:
            if len(self.labels) != n:
                raise StructureError(f"{len(self.labels)} labels for {n} elements")
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return self.monoid.size

    def __len__(self) -> int:
        return self.monoid.size

    @property
    def identity(self) -> int:
        return self.monoid.identity

    @property
    def mult(self):
        return self.monoid.mult

    def mul(self, *xs: int) -> int:
        return self.monoid.product(*xs)

    def label(self, s: int):
        return s if self.labels is None else self.labels[s]

    def index_of(self, label) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels or range(self.size))}

    @cached_property
    def projections(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.size) if self.plus[a] == a)

    @cached_property
    def totals(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.size) if self.plus[a] == self.identity)

    @cached_property
    def is_projection(self) -> tuple[bool, ...]:
        return tuple(self.plus[a] == a for a in range(self.size))

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """``leq_matrix[s, t]`` iff ``s <= t`` in the natural order."""
        t = self.monoid.array
        m = t[np.array(self.plus)] == np.arange(self.size)[:, None]
        m.setflags(write=False)
        return m

    @cached_property
    def boolean(self) -> "BooleanLRM | None":
        """The discovered Boolean structure, or None when (B1)-(B3) fail."""
        try:
            return boolean_structure(self)
        except NotBoolean:
            return None


LRM = LeftRestrictionMonoid


def check_lrm(S: LeftRestrictionMonoid, name: str = "left restriction monoid") -> AxiomReport:
    rep = check_monoid(S.monoid, name)
    c = Checker(name)
    m, p, n = S.mult, S.plus, S.size
    one = [range(n)]
    two = [range(n)] * 2
    c.law("LR1", one, lambda s: p[p[s]] == p[s])
    c.law("LR2", two, lambda s, t: p[m[p[s]][p[t]]] == m[p[s]][p[t]])
    c.law("LR3", two, lambda s, t: m[p[s]][p[t]] == m[p[t]][p[s]])
    c.law("LR4", one, lambda s: m[p[s]][s] == s)
    c.law("LR5", two, lambda s, t: p[m[s][t]] == p[m[s][p[t]]])
    c.law("LR6", two, lambda s, t: m[s][p[t]] == m[p[m[s][t]]][s])
    if S.zero is not None:
        z = S.zero
        c.law("zero is a projection", [[z]], lambda z: p[z] == z)
        c.law("zero absorbing", [[z], range(n)], lambda z, s: m[z][s] == z == m[s][z])
    rep.extend(c.done())
    return rep


def projections(S: LeftRestrictionMonoid) -> tuple[int, ...]:
    return S.projections


def totals(S: LeftRestrictionMonoid) -> tuple[int, ...]:
    return S.totals


def natural_leq(S: LeftRestrictionMonoid, s: int, t: int) -> bool:
    return S.mult[S.plus[s]][t] == s


def right_compatible(S: LeftRestrictionMonoid, a: int, b: int) -> bool:
    m, p = S.mult, S.plus
    return m[p[a]][b] == m[p[b]][a]


def right_orthogonal(S: LeftRestrictionMonoid, a: int, b: int) -> bool:
    if S.zero is None:
        raise NotBoolean("right-orthogonality needs a zero")
    return S.mult[S.plus[a]][S.plus[b]] == S.zero


def least_upper_bound(S: LeftRestrictionMonoid, elems: Sequence[int],
                      within: Sequence[int] | None = None) -> int | None:
    """Least upper bound of ``elems`` in the natural order, by exhaustive scan.

    ``within`` restricts the candidate bounds (e.g. to projections).
    """
    leq = S.leq_matrix
    ub = np.ones(S.size, dtype=bool)
    for a in elems:
        ub &= leq[a]
    if within is not None:
        mask = np.zeros(S.size, dtype=bool)
        mask[list(within)] = True
        ub &= mask
    cand = np.flatnonzero(ub)
    if cand.size == 0:
        return None
    least = cand[leq[np.ix_(cand, cand)].all(axis=1)]
    return int(least[0]) if least.size else None


class BooleanLRM:
    """Boolean structure discovered on a left restriction monoid.

    The Boolean algebra on the projections is recovered from the natural
    order; binary joins of right-compatible pairs are tabulated by scan.
    """

    def __init__(self, lrm: LeftRestrictionMonoid, algebra: BooleanAlgebra,
                 joins: dict[tuple[int, int], int]):
        self.lrm = lrm
        self.algebra = algebra
        self.proj = lrm.projections
        self._pos = {e: i for i, e in enumerate(self.proj)}
        self._joins = joins

    @property
    def zero(self) -> int:
        return self.lrm.zero

    @property
    def identity(self) -> int:
        return self.lrm.identity

    def proj_index(self, e: int) -> int:
        return self._pos[e]

    def pjoin(self, e: int, f: int) -> int:
        a = self.algebra
        return self.proj[a.join[self._pos[e]][self._pos[f]]]

    def comp(self, e: int) -> int:
        return self.proj[self.algebra.complement[self._pos[e]]]

    def joinable(self, a: int, b: int) -> bool:
        return right_compatible(self.lrm, a, b)

    def join(self, a: int, b: int) -> int:
        if not self.joinable(a, b):
            raise NotCompatible(f"{a} and {b} are not right-compatible")
        try:
            return self._joins[(a, b)]
        except KeyError:
            raise NoJoin(f"no join for ({a}, {b})") from None

    def join_all(self, elems: Sequence[int]) -> int:
        r = self.zero
        for a in elems:
            r = self.join(r, a)
        return r

    def joinable_pairs(self):
        return sorted(self._joins)


def _proj_algebra(S: LeftRestrictionMonoid, c: Checker) -> BooleanAlgebra | None:
    """Scan the natural order on Proj(S) for joins and complements."""
    proj = S.projections
    pos = {e: i for i, e in enumerate(proj)}
    k = len(proj)
    m, z, one = S.mult, S.zero, S.identity
    leq = S.leq_matrix
    c.law("B1 zero is a projection", [[z]], lambda z: S.plus[z] == z)
    c.law("B1 zero is least projection", [proj], lambda e: bool(leq[z, e]))
    c.law("B1 identity is greatest projection", [proj], lambda e: bool(leq[e, one]))

    pj: dict[tuple[int, int], int] = {}
    for e in proj:
        for f in proj:
            u = least_upper_bound(S, (e, f), within=proj)
            if u is not None:
                pj[(e, f)] = u
    c.law("B1 projection joins exist", [proj, proj], lambda e, f: (e, f) in pj)

    def complement(e):
        for f in proj:
            if m[e][f] == z and pj.get((e, f)) == one:
                return f
        return None

    comp = {e: complement(e) for e in proj}
    c.law("B1 projection complements exist", [proj], lambda e: comp[e] is not None)
    closed = c.law("B1 projections closed under product", [proj, proj],
                   lambda e, f: m[e][f] in pos)
    if len(pj) < k * k or any(v is None for v in comp.values()) or S.plus[z] != z or not closed:
        return None
    return BooleanAlgebra(
        meet=[[pos[m[e][f]] for f in proj] for e in proj],
        join=[[pos[pj[(e, f)]] for f in proj] for e in proj],
        complement=[pos[comp[e]] for e in proj],
        top=pos[one],
        bottom=pos[z],
    )


def _scan_joins(S: LeftRestrictionMonoid) -> dict[tuple[int, int], int | None]:
    n = S.size
    out = {}
    for a in range(n):
        for b in range(a, n):
            if right_compatible(S, a, b):
                u = least_upper_bound(S, (a, b))
                out[(a, b)] = out[(b, a)] = u
    return out


def _boolean_check(S: LeftRestrictionMonoid, name: str):
    if S.zero is None:
        raise NotBoolean("a Boolean left restriction monoid needs a zero")
    c = Checker(name)
    alg = _proj_algebra(S, c)
    rep = c.done()
    if alg is not None:
        rep.extend(check_boolean_algebra(alg, "proj"), prefix="B1 ")
    joins = _scan_joins(S)

    c = Checker(name)
    n, m, p = S.size, S.mult, S.plus
    pairs = [range(n)] * 2

    def compat(a, b):
        return m[p[a]][b] == m[p[b]][a]

    c.law("B2", pairs, lambda a, b: not compat(a, b) or joins[(a, b)] is not None)

    def lub(a, b):
        return joins.get((a, b)) if compat(a, b) else None

    def b3(a, b, c_):
        if not compat(b, c_) or joins[(b, c_)] is None:
            return True
        j = joins[(b, c_)]
        return lub(m[a][b], m[a][c_]) == m[a][j] and lub(m[b][a], m[c_][a]) == m[j][a]

    c.law("B3", [range(n)] * 3, b3)
    B = None
    if alg is not None:
        B = BooleanLRM(S, alg, {k: v for k, v in joins.items() if v is not None})
        proj = S.projections

        def join_of_pluses(b, c_):
            if not compat(b, c_) or joins[(b, c_)] is None:
                return True
            return p[joins[(b, c_)]] == B.pjoin(p[b], p[c_])

        c.law("join of pluses", pairs, join_of_pluses)
        c.law("complement transport", [range(n), proj],
              lambda s, e: m[s][B.comp(e)] == m[B.comp(p[m[s][e]])][s])
    rep.extend(c.done())
    return rep, B


def check_boolean_lrm(S: LeftRestrictionMonoid, name: str = "boolean lrm") -> AxiomReport:
    """(B1)-(B3) together with the corollary identities for joins and complements.

    "join of pluses" is ``(b v c)+ = b+ v c+``; "complement transport" is
    ``s e' = ((se)+)' s`` where ``'`` is complementation of projections.
    """
    return _boolean_check(S, name)[0]


def boolean_structure(S: LeftRestrictionMonoid) -> BooleanLRM:
    rep, B = _boolean_check(S, "boolean lrm")
    if not rep.ok:
        raise NotBoolean(f"not Boolean: {', '.join(rep.failed())}", rep)
    return B


def as_boolean(S) -> BooleanLRM:
    """Accept a BooleanLRM or an LRM and return the Boolean structure."""
    if isinstance(S, BooleanLRM):
        return S
    B = S.boolean
    if B is None:
        raise NotBoolean("structure is not a Boolean left restriction monoid")
    return B


def join(S, a: int, b: int) -> int:
    return as_boolean(S).join(a, b)


def is_factorizable(S: LeftRestrictionMonoid) -> tuple[bool, int | None]:
    leq = S.leq_matrix
    tot = list(S.totals)
    for s in range(S.size):
        if not leq[s, tot].any():
            return False, s
    return True, None


def least_total_above(S: LeftRestrictionMonoid, s: int) -> int:
    leq = S.leq_matrix
    for t in S.totals:
        if leq[s, t]:
            return t
    raise NotFactorizable(f"no total element above {s}")


def sub_lrm(S: LeftRestrictionMonoid, elems: Sequence[int]) -> LeftRestrictionMonoid:
    """The sub-LRM on ``elems`` (closed under product and plus), relabelled densely."""
    elems = list(elems)
    pos = {x: i for i, x in enumerate(elems)}
    mon = submonoid_table(S.monoid, elems)
    try:
        plus = [pos[S.plus[a]] for a in elems]
    except KeyError as exc:
        raise StructureError(f"subset not closed under plus: {exc.args[0]}") from None
    zero = pos.get(S.zero) if S.zero is not None else None
    labels = tuple(S.label(a) for a in elems)
    return LeftRestrictionMonoid(mon, tuple(plus), zero, labels)


def factorizable_part(S: LeftRestrictionMonoid) -> tuple[LeftRestrictionMonoid, tuple[int, ...]]:
    """Down-set of the total elements, as an LRM, with its embedding into ``S``."""
    leq = S.leq_matrix
    tot = list(S.totals)
    elems = tuple(s for s in range(S.size) if leq[s, tot].any())
    return sub_lrm(S, elems), elems


def total_cover(S, s: int) -> int:
    """``s`` joined with the complement of ``s+``: a total element above ``s``."""
    B = as_boolean(S)
    return B.join(s, B.comp(B.lrm.plus[s]))


def check_lrm_hom(S: LeftRestrictionMonoid, T: LeftRestrictionMonoid, theta: Sequence[int],
                  boolean_mode: bool = False) -> tuple[bool, tuple | None]:
    """Monoid homomorphism preserving plus; Boolean mode adds zero and joins.

    The witness is ``(condition, *arguments)``.
    """
    if len(theta) != S.size or any(not 0 <= v < T.size for v in theta):
        raise StructureError("theta must map every element of S into T")
    m, n = S.mult, T.mult
    if theta[S.identity] != T.identity:
        return False, ("identity",)
    for a in range(S.size):
        if theta[S.plus[a]] != T.plus[theta[a]]:
            return False, ("plus", a)
        for b in range(S.size):
            if theta[m[a][b]] != n[theta[a]][theta[b]]:
                return False, ("product", a, b)
    if boolean_mode:
        BS, BT = as_boolean(S), as_boolean(T)
        if theta[BS.zero] != BT.zero:
            return False, ("zero",)
        for a, b in BS.joinable_pairs():
            if a > b:
                continue
            try:
                ok = theta[BS.join(a, b)] == BT.join(theta[a], theta[b])
            except (NotCompatible, NoJoin):
                ok = False
            if not ok:
                return False, ("join", a, b)
    return True, None
