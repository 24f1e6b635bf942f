"""Partial units, the inverse monoid Inv(S), and extension of its actions to S.

An element ``a`` is a partial unit when some ``b`` has ``ab = a+`` and
``ba = b+``.  S is étale when every element is a join of partial units; then
an action of Inv(S) extends uniquely to S by ``a.y = join of a_i.y``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .actions import (
    DEFAULT_MAX_SEARCH,
    SupportedAction,
    check_action,
    check_boolean_supported,
    check_supported,
    enumerate_actions,
    enumerate_homs,
)
from .core import (
    AxiomReport,
    Checker,
    FiniteMonoid,
    Partition,
    StructureError,
    check_boolean_algebra,
)
from .generators import powerset
from .matched_pair import LawViolation, MatchedPair, build_lrm
from .restriction import (
    BooleanLRM,
    LeftRestrictionMonoid,
    NoJoin,
    NotBoolean,
    NotCompatible,
    _proj_algebra,
    as_boolean,
    least_upper_bound,
    right_compatible,
    sub_lrm,
)


class NotEtale(ValueError):
    pass


def _base(S) -> LeftRestrictionMonoid:
    return S.lrm if isinstance(S, BooleanLRM) else S


def inverse_witness(S: LeftRestrictionMonoid, a: int) -> int | None:
    """Least ``b`` with ``ab = a+`` and ``ba = b+``."""
    m, p = S.mult, S.plus
    for b in range(S.size):
        if m[a][b] == p[a] and m[b][a] == p[b]:
            return b
    return None


@dataclass(frozen=True)
class PartialUnitSet:
    S: LeftRestrictionMonoid
    elements: tuple[int, ...]
    inverse_witness: tuple[int, ...]

    def __contains__(self, a: int) -> bool:
        return a in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def inverse(self, a: int) -> int:
        return self.inverse_witness[self.elements.index(a)]


def partial_units(S) -> PartialUnitSet:
    S = _base(S)
    elems, inv = [], []
    for a in range(S.size):
        b = inverse_witness(S, a)
        if b is not None:
            elems.append(a)
            inv.append(b)
    return PartialUnitSet(S, tuple(elems), tuple(inv))


def check_partial_units(U: PartialUnitSet) -> AxiomReport:
    """Witness laws, projections included, closure, and uniqueness of witnesses."""
    S = U.S
    m, p = S.mult, S.plus
    members = set(U.elements)
    c = Checker("partial units")
    pairs = list(zip(U.elements, U.inverse_witness))
    c.law("inverse witness", [range(len(pairs))], lambda i: m[pairs[i][0]][pairs[i][1]]
          == p[pairs[i][0]] and m[pairs[i][1]][pairs[i][0]] == p[pairs[i][1]])
    c.law("contains projections", [S.projections], lambda e: e in members)
    c.law("closed under product", [U.elements, U.elements], lambda a, b: m[a][b] in members)
    c.law("closed under inverse", [U.inverse_witness], lambda b: b in members)
    c.law("inverse witness unique", [U.elements, range(S.size)], lambda a, b: not (
        m[a][b] == p[a] and m[b][a] == p[b]) or b == U.inverse(a))
    return c.done()


class InverseView:
    """Inv(S) as an LRM of its own, with joins of fully compatible pairs.

    ``s ~ t`` iff ``s^-1 t`` and ``s t^-1`` are idempotent.  Indices are
    those of ``lrm``; ``elems[i]`` is the corresponding element of the parent.
    """

    def __init__(self, parent: LeftRestrictionMonoid, units: PartialUnitSet):
        self.parent = parent
        self.units = units
        self.elems = units.elements
        self._pos = {a: i for i, a in enumerate(self.elems)}
        self.lrm = sub_lrm(parent, self.elems)
        self.inverse = tuple(self._pos[b] for b in units.inverse_witness)
        alg = _proj_algebra(self.lrm, Checker("inv"))
        if alg is None:
            raise NotBoolean("the projections of Inv(S) do not form a Boolean algebra")
        self.algebra = alg
        self.proj = self.lrm.projections
        self._ppos = {e: i for i, e in enumerate(self.proj)}

    def index(self, a: int) -> int:
        """Position in Inv(S) of the parent element ``a``."""
        return self._pos[a]

    @property
    def zero(self) -> int:
        return self.lrm.zero

    @property
    def identity(self) -> int:
        return self.lrm.identity

    def pjoin(self, e: int, f: int) -> int:
        return self.proj[self.algebra.join[self._ppos[e]][self._ppos[f]]]

    def comp(self, e: int) -> int:
        return self.proj[self.algebra.complement[self._ppos[e]]]

    def is_idempotent(self, s: int) -> bool:
        return self.lrm.mult[s][s] == s

    def compatible(self, s: int, t: int) -> bool:
        m, inv = self.lrm.mult, self.inverse
        return self.is_idempotent(m[inv[s]][t]) and self.is_idempotent(m[s][inv[t]])

    joinable = compatible

    def join(self, s: int, t: int) -> int:
        if not self.compatible(s, t):
            raise NotCompatible(f"{s} and {t} are not compatible")
        u = least_upper_bound(self.parent, (self.elems[s], self.elems[t]))
        if u is None or u not in self._pos:
            raise NoJoin(f"no join of {s} and {t} inside Inv(S)")
        return self._pos[u]

    def join_all(self, elems: Iterable[int]) -> int:
        r = self.zero
        for a in elems:
            r = self.join(r, a)
        return r


def inverse_view(S) -> InverseView:
    S = _base(S)
    if S.zero is None:
        raise NotBoolean("Inv(S) needs a zero")
    return InverseView(S, partial_units(S))


def check_boolean_inverse_monoid(S: LeftRestrictionMonoid,
                                 name: str = "boolean inverse monoid") -> AxiomReport:
    """Every element a partial unit with a unique witness, idempotents are the
    projections and form a Boolean algebra, compatible pairs have joins, and
    multiplication distributes over them on both sides."""
    if S.zero is None:
        raise NotBoolean("a Boolean inverse monoid needs a zero")
    c = Checker(name)
    m, p = S.mult, S.plus
    X = range(S.size)
    inv = {a: inverse_witness(S, a) for a in X}
    c.law("every element a partial unit", [X], lambda a: inv[a] is not None)
    c.law("inverse witness unique", [X, X], lambda a, b: not (
        m[a][b] == p[a] and m[b][a] == p[b]) or b == inv[a])
    c.law("idempotents are projections", [X], lambda a: m[a][a] != a or p[a] == a)
    alg = _proj_algebra(S, c)
    rep = c.done()
    if alg is not None:
        rep.extend(check_boolean_algebra(alg, "proj"), prefix="B1 ")
    if not rep.ok:
        return rep
    c = Checker(name)

    def compat(s, t):
        return m[m[inv[s]][t]][m[inv[s]][t]] == m[inv[s]][t] \
            and m[m[s][inv[t]]][m[s][inv[t]]] == m[s][inv[t]]

    joins = {(s, t): least_upper_bound(S, (s, t)) for s in X for t in X if compat(s, t)}
    c.law("compatible joins exist", [X, X],
          lambda s, t: (s, t) not in joins or joins[(s, t)] is not None)

    def lub(a, b):
        return least_upper_bound(S, (a, b))

    c.law("join left distributive", [X, X, X], lambda u, s, t: (s, t) not in joins
          or joins[(s, t)] is None or m[u][joins[(s, t)]] == lub(m[u][s], m[u][t]))
    c.law("join right distributive", [X, X, X], lambda u, s, t: (s, t) not in joins
          or joins[(s, t)] is None or m[joins[(s, t)]][u] == lub(m[s][u], m[t][u]))
    rep.extend(c.done())
    return rep


# --------------------------------------------------------------------------
# the étale property


@dataclass(frozen=True)
class EtaleResult:
    ok: bool
    witness: int | None
    decompositions: dict = field(compare=False)

    def __bool__(self) -> bool:
        return self.ok


def _units_below(S: BooleanLRM, U: PartialUnitSet, a: int) -> list[int]:
    leq = S.lrm.leq_matrix
    return [u for u in U.elements if leq[u, a] and u != S.zero]


def is_etale(S) -> EtaleResult:
    """Every element a join of partial units; stores a smallest decomposition of each.

    Elements below a common element are pairwise right-compatible, so ``a``
    decomposes iff the join of all nonzero units below it is ``a``.
    """
    B = as_boolean(S)
    U = partial_units(B.lrm)
    decomp = {}
    witness = None
    for a in range(B.lrm.size):
        if a == B.zero:
            decomp[a] = (a,)
            continue
        below = _units_below(B, U, a)
        if B.join_all(below) != a:
            witness = a
            break
        decomp[a] = next(_decompositions(B, below, a))
    return EtaleResult(witness is None, witness, decomp)


def _decompositions(B: BooleanLRM, below: Sequence[int], a: int, max_parts: int | None = None):
    top = len(below) if max_parts is None else min(max_parts, len(below))
    for k in range(1, top + 1):
        for combo in combinations(below, k):
            if B.join_all(combo) == a:
                yield combo


def all_decompositions(S, a: int, max_parts: int = 4) -> list[tuple[int, ...]]:
    """Every set of at most ``max_parts`` nonzero partial units joining to ``a``."""
    B = as_boolean(S)
    if a == B.zero:
        return [(a,)]
    U = partial_units(B.lrm)
    return list(_decompositions(B, _units_below(B, U, a), a, max_parts))


def non_etale_example() -> LeftRestrictionMonoid:
    """``{1, a, 0}`` with ``a^2 = a`` and ``a+ = 1``: ``a`` is not a join of partial units."""
    E = powerset(1)
    M = FiniteMonoid([[0, 1], [1, 1]], 0)
    act = [[0, 1], [0, 1]]
    cong = (Partition.universal(2), Partition.identity(2))
    return build_lrm(MatchedPair(E, M, act, cong))


# --------------------------------------------------------------------------
# actions of Inv(S)


def check_inv_supported(A: SupportedAction) -> AxiomReport:
    """(E1)-(E7) for an action of Inv(S); (E7) ranges over fully compatible pairs."""
    if not isinstance(A.structure, InverseView):
        raise StructureError("action is not over an inverse view")
    rep = check_supported(A)
    if A.size:
        rep.extend(check_boolean_supported(A))
    return rep


def restrict_action(A: SupportedAction, V: InverseView) -> SupportedAction:
    """The rows of A indexed by partial units; the carrier is unchanged."""
    if A.S != V.parent:
        raise StructureError("action is over a different monoid")
    return SupportedAction(V.lrm, [A.act[a] for a in V.elems],
                           [V.index(e) for e in A.support], V, A.labels)


def check_unit_compatibility(A: SupportedAction, V: InverseView) -> tuple[bool, tuple | None]:
    """For right-compatible partial units ``a, b`` and every ``y``, ``a.y`` and ``b.y`` are compatible."""
    S = V.parent
    for i, a in enumerate(V.elems):
        for j, b in enumerate(V.elems):
            if right_compatible(S, a, b):
                for y in range(A.size):
                    if not A.compat(A.act[i][y], A.act[j][y]):
                        return False, (a, b, y)
    return True, None


def extend_action(A: SupportedAction, S, max_parts: int = 4) -> SupportedAction:
    """``a.y = join of a_i.y`` over a decomposition ``a = join of a_i``.

    Every decomposition with at most ``max_parts`` units is checked to give
    the same value, and the result is checked against (E1)-(E7).
    """
    B = as_boolean(S)
    V = A.structure
    if not isinstance(V, InverseView) or V.parent != B.lrm:
        raise StructureError("action is not over Inv(S)")
    et = is_etale(B)
    if not et:
        raise NotEtale(f"element {et.witness} is not a join of partial units")
    T = B.lrm
    act = []
    for a in range(T.size):
        decs = [et.decompositions[a]] + all_decompositions(B, a, max_parts)
        row = []
        for y in range(A.size):
            values = {A.join_all([A.act[V.index(u)][y] for u in d]) for d in decs}
            if len(values) != 1:
                raise LawViolation(f"a.y depends on the decomposition of {a} at {y}")
            row.append(values.pop())
        act.append(row)
    X = SupportedAction(T, act, [V.elems[e] for e in A.support], B, A.labels)
    rep = check_action(X)
    if not rep.ok:
        raise LawViolation(f"extended action fails {rep.failed()}")
    if restrict_action(X, V) != A:
        raise LawViolation("restricting the extension does not recover the action")
    return X


def check_category_iso(S, fixtures: Sequence[SupportedAction] | None = None,
                       max_carrier: int = 4,
                       max_search: int = DEFAULT_MAX_SEARCH) -> AxiomReport:
    """Restriction and extension are mutually inverse on objects and hom-sets agree.

    Without ``fixtures`` both categories are enumerated up to ``max_carrier``
    points and the restrictions of the S-actions are matched against the
    Inv(S)-actions.
    """
    B = as_boolean(S)
    V = inverse_view(B.lrm)
    c = Checker("inverse monoid extension")
    if fixtures is None:
        fixtures = [A for n in range(1, max_carrier + 1)
                    for A in enumerate_actions(B, n, max_search=max_search)]
        inv_actions = [A for n in range(1, max_carrier + 1)
                       for A in enumerate_actions(V, n, max_search=max_search)]
        restricted = {restrict_action(A, V) for A in fixtures}
        c.law("every Inv(S)-action is a restriction", [range(len(inv_actions))],
              lambda i: inv_actions[i] in restricted)
    if not fixtures:
        warnings.warn("no fixture actions; the check is vacuous", stacklevel=2)
    fx = list(fixtures)
    res = [restrict_action(A, V) for A in fx]
    c.law("restriction is an Inv(S)-action", [range(len(fx))],
          lambda i: check_inv_supported(res[i]).ok)
    c.law("extend after restrict", [range(len(fx))],
          lambda i: extend_action(res[i], B) == fx[i])
    c.law("restrict after extend", [range(len(fx))],
          lambda i: restrict_action(extend_action(res[i], B), V) == res[i])
    c.law("hom sets agree", [range(len(fx)), range(len(fx))],
          lambda i, j: enumerate_homs(fx[i], fx[j], max_search)
          == enumerate_homs(res[i], res[j], max_search))
    return c.done()
