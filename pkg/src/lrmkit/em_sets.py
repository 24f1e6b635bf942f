"""[E|M]-sets and their equivalence with factorizable supported actions.

An [E|M]-set carries a left M-action ``act[m][y]`` and, for each ``e`` in E,
an equivalence ``eq[e]`` on its points.  Indices of E and M are those of the
matched pair; when the pair comes from an LRM S, ``pair.e_elems`` and
``pair.m_elems`` translate them back into S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .actions import (
    DEFAULT_MAX_SEARCH,
    Exponential,
    SupportedAction,
    check_action_hom,
    exponential,
    fiber,
    hat,
    is_factorizable_action,
)
from .core import (
    AxiomReport,
    Checker,
    NoWitness,
    Partition,
    StructureError,
    Table,
    as_table,
    equivariant_maps,
    generating_set,
)
from .matched_pair import LawViolation, MatchedPair, from_lrm
from .restriction import LeftRestrictionMonoid, NotFactorizable, is_factorizable


class InadmissibleMap(ValueError):
    pass


@dataclass(frozen=True)
class EMSet:
    pair: MatchedPair
    act: Table
    eq: tuple[Partition, ...]
    boolean: bool | None = None
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        P = self.pair
        eq = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.eq)
        if len(eq) != P.E.size:
            raise StructureError(f"eq has {len(eq)} members, E has {P.E.size}")
        n = len(eq[0]) if eq else 0
        for e, c in enumerate(eq):
            if len(c) != n:
                raise StructureError(f"eq[{e}] covers {len(c)} points, expected {n}")
        object.__setattr__(self, "eq", eq)
        object.__setattr__(self, "act", as_table(self.act, P.M.size, n, n, "act"))
        flag = P.boolean if self.boolean is None else bool(self.boolean)
        if flag and not P.boolean:
            raise StructureError("Boolean flag needs a Boolean matched pair")
        object.__setattr__(self, "boolean", flag)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return len(self.eq[0]) if self.eq else 0

    def __len__(self) -> int:
        return self.size

    def same(self, e: int, x: int, y: int) -> bool:
        return self.eq[e].same(x, y)


def check_em_set(Y: EMSet, name: str = "[E|M]-set") -> AxiomReport:
    c = Checker(name)
    P = Y.pair
    E, M, X = range(P.E.size), range(P.M.size), range(Y.size)
    a, m = Y.act, P.M.mult
    b = [p.blocks for p in Y.eq]
    cg = [p.blocks for p in P.cong]
    star, meet, top = P.act, P.E.meet, P.E.top
    one = P.M.identity
    c.law("MPA1 identity", [X], lambda x: a[one][x] == x)
    c.law("MPA1 composition", [M, M, X], lambda u, v, x: a[m[u][v]][x] == a[u][a[v][x]])
    c.law("MPA2", [E], lambda e: len(Y.eq[e]) == Y.size)
    c.law("MPA3", [X, X], lambda x, y: b[top][x] != b[top][y] or x == y)
    c.law("MPA4", [E, E, X, X], lambda f, e, x, y: meet[f][e] != f
          or b[e][x] != b[e][y] or b[f][x] == b[f][y])
    c.law("MPA5", [E, M, M, X], lambda e, u, v, x: cg[e][u] != cg[e][v]
          or b[e][a[u][x]] == b[e][a[v][x]])
    c.law("MPA6", [E, X, X, M], lambda e, x, y, u: b[e][x] != b[e][y]
          or b[star[u][e]][a[u][x]] == b[star[u][e]][a[u][y]])
    if Y.boolean:
        bot, join, comp = P.E.bottom, P.E.join, P.E.complement
        c.law("MPA7", [X, X], lambda x, y: b[bot][x] == b[bot][y])
        c.law("MPA8", [E, E, X, X], lambda e, f, x, y: b[e][x] != b[e][y]
              or b[f][x] != b[f][y] or b[join[e][f]][x] == b[join[e][f]][y])

        def mpa9(x, y, e):
            be, bc = b[e], b[comp[e]]
            return any(be[z] == be[x] and bc[z] == bc[y] for z in X)

        c.law("MPA9", [X, X, E], mpa9)
    return c.done()


def regular_em_set(P: MatchedPair) -> EMSet:
    """M acting on itself, with the pair's own congruences."""
    return EMSet(P, P.M.mult, P.cong, labels=tuple(range(P.M.size)))


def mpa9_witness(Y: EMSet, x: int, y: int, e: int) -> int:
    """Least ``z`` with ``z ~e x`` and ``z ~e' y``, ``e'`` the complement of ``e``."""
    if not Y.boolean:
        raise StructureError("MPA9 needs a Boolean [E|M]-set")
    ce, cc = Y.eq[e], Y.eq[Y.pair.E.complement[e]]
    for z in range(Y.size):
        if ce.same(z, x) and cc.same(z, y):
            return z
    raise NoWitness(f"MPA9 fails for x={x}, y={y}, e={e}")


def w_interpolate(Y: EMSet, x: int, y: int, e: int, f: int) -> int:
    """``w`` with ``w ~e x`` and ``w ~f y``, given ``x ~ef y``.

    Any two such ``w`` are checked to agree modulo ``~(e+f)``.
    """
    E = Y.pair.E
    if not Y.same(E.meet[e][f], x, y):
        raise ValueError(f"precondition fails: {x} and {y} differ modulo e*f")
    w = mpa9_witness(Y, x, y, e)
    if not (Y.same(e, w, x) and Y.same(f, w, y)):
        raise LawViolation(f"MPA9 witness {w} does not interpolate")
    ef = E.join[e][f]
    for v in range(Y.size):
        if Y.same(e, v, x) and Y.same(f, v, y) and not Y.same(ef, w, v):
            raise LawViolation(f"interpolants {w} and {v} differ modulo e+f")
    return w


# --------------------------------------------------------------------------
# the two functors


def _pair_for(S: LeftRestrictionMonoid, boolean: bool) -> MatchedPair:
    cache = S.__dict__.setdefault("_pairs", {})
    if boolean not in cache:
        cache[boolean] = from_lrm(S, boolean)
    return cache[boolean]


def from_action(A: SupportedAction, pair: MatchedPair | None = None) -> EMSet:
    """The fiber ``X1`` over the identity, acted on by the totals.

    ``x ~e y`` iff ``e.x = e.y``.  Labels are the indices of the points in A.
    """
    ok, w = is_factorizable_action(A)
    if not ok:
        raise NotFactorizable(f"point {w} lies below no point of support 1")
    S = A.S
    P = _pair_for(S, A.boolean_mode)
    if pair is not None and pair != P:
        raise StructureError("the given matched pair is not the one extracted from S")
    top = fiber(A, S.identity)
    pos = {x: i for i, x in enumerate(top)}
    act = [[pos[A.act[m][x]] for x in top] for m in P.m_elems]
    eq = tuple(Partition.by_key(len(top), lambda i, e=e: A.act[e][top[i]]) for e in P.e_elems)
    return EMSet(P, act, eq, A.boolean_mode, top)


def _resolve_lrm(Y: EMSet, S: LeftRestrictionMonoid) -> MatchedPair:
    ok, w = is_factorizable(S)
    if not ok:
        raise NotFactorizable(f"element {w} has no total element above it")
    if Y.boolean and S.boolean is None:
        raise StructureError("Boolean [E|M]-set over a non-Boolean monoid")
    P = _pair_for(S, Y.boolean)
    if P != Y.pair:
        raise StructureError("the [E|M]-set's matched pair is not the one extracted from S")
    return P


def _located(Y: EMSet, S: LeftRestrictionMonoid) -> MatchedPair:
    """Y's pair if it knows its elements in S, else the equal pair extracted from S."""
    if Y.pair.e_elems is not None:
        return Y.pair
    return _resolve_lrm(Y, S)


def to_action(Y: EMSet, S: LeftRestrictionMonoid, verify: bool = True) -> SupportedAction:
    """``X = disjoint union of Y/~e`` with ``s.[x]_e = [hat(s).x]_{(se)+}``.

    Points are labelled ``(e, r)`` with ``e`` a projection of S and ``r`` the
    least member of the class; the carrier is sorted by label.
    """
    P = _resolve_lrm(Y, S)
    if Y.boolean and not Y.size:
        raise StructureError("Boolean [E|M]-sets must be nonempty")
    if verify:
        ok, w = check_action_formula(Y, S)
        if not ok:
            raise LawViolation(f"quotient action is not well defined: {w}")
    epos = {e: i for i, e in enumerate(P.e_elems)}
    mpos = {t: i for i, t in enumerate(P.m_elems)}
    labels = sorted((e, r) for e in P.e_elems for r in Y.eq[epos[e]].reps)
    index = {lab: i for i, lab in enumerate(labels)}
    m, plus = S.mult, S.plus
    act = []
    for s in range(S.size):
        u = mpos[hat(S, s)]
        row = []
        for e, r in labels:
            f = plus[m[s][e]]
            row.append(index[(f, Y.eq[epos[f]].rep(Y.act[u][r]))])
        act.append(row)
    structure = S.boolean if Y.boolean else None
    return SupportedAction(S, act, [e for e, _ in labels], structure, labels)


def check_action_formula(Y: EMSet, S: LeftRestrictionMonoid) -> tuple[bool, tuple | None]:
    """Independence of ``[u.x]_{(se)+}`` from the total ``u`` with ``s = s+ u`` and from ``x`` in its class."""
    P = _resolve_lrm(Y, S)
    epos = {e: i for i, e in enumerate(P.e_elems)}
    m, plus = S.mult, S.plus
    for s in range(S.size):
        sp = plus[s]
        totals = [i for i, t in enumerate(P.m_elems) if m[sp][t] == s]
        for e in P.e_elems:
            f = epos[plus[m[s][e]]]
            for cls in Y.eq[epos[e]].classes:
                values = {Y.eq[f].rep(Y.act[u][x]) for u in totals for x in cls}
                if len(values) > 1:
                    return False, (s, e, cls[0])
    return True, None


def quotient_leq(Y: EMSet, X: SupportedAction, a: int, b: int) -> bool:
    """``[x']_f <= [x]_e`` iff ``f <= e`` and ``x' ~f x``, on points of ``to_action(Y, S)``."""
    S = X.S
    P = _located(Y, S)
    epos = {e: i for i, e in enumerate(P.e_elems)}
    f, x1 = X.labels[a]
    e, x = X.labels[b]
    return S.mult[f][e] == f and Y.same(epos[f], x1, x)


def em_join(Y: EMSet, X: SupportedAction, a: int, b: int) -> int:
    """``[x]_e v [y]_f = [w]_{e+f}`` with ``w`` from :func:`w_interpolate`."""
    P = _located(Y, X.S)
    epos = {e: i for i, e in enumerate(P.e_elems)}
    e, x = X.labels[a]
    f, y = X.labels[b]
    ei, fi = epos[e], epos[f]
    w = w_interpolate(Y, x, y, ei, fi)
    g = P.E.join[ei][fi]
    return X.index_of((P.e_elems[g], Y.eq[g].rep(w)))


# --------------------------------------------------------------------------
# round trips


@dataclass(frozen=True)
class ActionRoundTrip:
    source: SupportedAction
    em_set: EMSet
    target: SupportedAction
    theta: tuple[int, ...]


def roundtrip_action_iso(A: SupportedAction) -> ActionRoundTrip:
    """``x -> [y]_{p(x)}`` with ``y`` of support 1 above ``x``; checked to be an isomorphism."""
    Y = from_action(A)
    X = to_action(Y, A.S)
    epos = {e: i for i, e in enumerate(Y.pair.e_elems)}
    top = Y.labels
    theta = []
    for x in range(A.size):
        e = A.support[x]
        classes = {Y.eq[epos[e]].rep(i) for i, y in enumerate(top) if A.leq(x, y)}
        if len(classes) != 1:
            raise LawViolation(f"point {x} does not determine a single class")
        theta.append(X.index_of((e, classes.pop())))
    theta = tuple(theta)
    _check_iso(A, X, theta)
    return ActionRoundTrip(A, Y, X, theta)


def _check_iso(A: SupportedAction, B: SupportedAction, theta: Sequence[int]) -> None:
    if sorted(theta) != list(range(B.size)):
        raise LawViolation("round-trip map is not bijective")
    ok, w = check_action_hom(A, B, theta)
    if not ok:
        raise LawViolation(f"round-trip map is not a homomorphism: {w}")
    inv = [0] * len(theta)
    for i, t in enumerate(theta):
        inv[t] = i
    ok, w = check_action_hom(B, A, inv)
    if not ok:
        raise LawViolation(f"inverse of the round-trip map is not a homomorphism: {w}")


@dataclass(frozen=True)
class EMRoundTrip:
    source: EMSet
    action: SupportedAction
    target: EMSet
    alpha: tuple[int, ...]


def roundtrip_em_iso(Y: EMSet, S: LeftRestrictionMonoid) -> EMRoundTrip:
    """``y -> {y}``: the identity fiber of ``to_action(Y)`` consists of singleton classes."""
    X = to_action(Y, S)
    Z = from_action(X, Y.pair)
    alpha = tuple(Z.labels.index(X.index_of((S.identity, Y.eq[Y.pair.top].rep(y))))
                  for y in range(Y.size))
    if sorted(alpha) != list(range(Z.size)):
        raise LawViolation("round-trip map is not bijective")
    inv = [0] * len(alpha)
    for i, t in enumerate(alpha):
        inv[t] = i
    for f, g, src, dst in ((alpha, "forward", Y, Z), (inv, "inverse", Z, Y)):
        ok, w = check_em_hom(src, dst, f)
        if not ok:
            raise LawViolation(f"{g} round-trip map is not a homomorphism: {w}")
    return EMRoundTrip(Y, X, Z, alpha)


# --------------------------------------------------------------------------
# homomorphisms


def check_em_hom(Y: EMSet, Z: EMSet, alpha: Sequence[int]) -> tuple[bool, tuple | None]:
    """M-equivariance and ``x ~e y => alpha(x) ~e alpha(y)``."""
    if Y.pair != Z.pair:
        raise StructureError("[E|M]-sets over different matched pairs")
    if len(alpha) != Y.size or any(not 0 <= v < Z.size for v in alpha):
        raise StructureError("alpha must map every point of Y into Z")
    for u in range(Y.pair.M.size):
        for x in range(Y.size):
            if alpha[Y.act[u][x]] != Z.act[u][alpha[x]]:
                return False, ("equivariance", u, x)
    for e in range(Y.pair.E.size):
        for cls in Y.eq[e].classes:
            if len({Z.eq[e].rep(alpha[x]) for x in cls}) > 1:
                return False, ("equivalence", e, cls[0], next(
                    x for x in cls if not Z.same(e, alpha[x], alpha[cls[0]])))
    return True, None


def enumerate_em_homs(Y: EMSet, Z: EMSet,
                      max_search: int = DEFAULT_MAX_SEARCH) -> list[tuple[int, ...]]:
    if Y.pair != Z.pair:
        raise StructureError("[E|M]-sets over different matched pairs")
    gens = generating_set(Y.pair.M)
    ceq = [[p.blocks for p in Y.eq], [p.blocks for p in Z.eq]]

    def accept(f):
        return all(ceq[1][e][f[x]] == ceq[1][e][f[y]]
                   for e in range(Y.pair.E.size)
                   for x in range(Y.size) for y in range(x + 1, Y.size)
                   if ceq[0][e][x] == ceq[0][e][y])

    return equivariant_maps(Y.size, [Y.act[g] for g in gens], [Z.act[g] for g in gens],
                            [range(Z.size)] * Y.size, accept, max_search)


def restrict_hom(A: SupportedAction, B: SupportedAction, theta: Sequence[int]) -> tuple[int, ...]:
    """``theta`` restricted to identity fibers, in the indexing of :func:`from_action`."""
    ok, w = check_action_hom(A, B, theta)
    if not ok:
        raise ValueError(f"not a homomorphism of supported actions: {w}")
    one = A.S.identity
    src, dst = fiber(A, one), fiber(B, one)
    pos = {y: i for i, y in enumerate(dst)}
    return tuple(pos[theta[x]] for x in src)


def induce_hom(Y: EMSet, Z: EMSet, alpha: Sequence[int], S: LeftRestrictionMonoid,
               X: SupportedAction | None = None,
               W: SupportedAction | None = None) -> tuple[int, ...]:
    """``[y]_e -> [alpha(y)]_e`` between ``to_action(Y)`` and ``to_action(Z)``."""
    ok, w = check_em_hom(Y, Z, alpha)
    if not ok:
        raise ValueError(f"not a homomorphism of [E|M]-sets: {w}")
    X = to_action(Y, S) if X is None else X
    W = to_action(Z, S) if W is None else W
    epos = {e: i for i, e in enumerate(_located(Y, S).e_elems)}
    return tuple(W.index_of((e, Z.eq[epos[e]].rep(alpha[r]))) for e, r in X.labels)


# --------------------------------------------------------------------------
# points of exponentials over the identity


@dataclass(frozen=True)
class PointTransport:
    """Bijection between ``(B^A)_1`` and admissible maps ``M x A1 -> B1``.

    ``domain`` lists ``(m, x)`` with ``m`` a total element of S and ``x`` a
    point of A of support 1; functions are tuples over ``domain`` with values
    in B.  ``top`` lists the points of ``B^A`` over the identity.
    """

    exp: Exponential
    domain: tuple[tuple[int, int], ...]
    top: tuple[int, ...]
    admissible: tuple[tuple[int, ...], ...] = field(compare=False)

    @cached_property
    def _dom_pos(self) -> dict:
        return {d: i for i, d in enumerate(self.domain)}

    def restrict(self, point: int) -> tuple[int, ...]:
        E = self.exp
        e, h = E.action.labels[point]
        if e != E.A.S.identity:
            raise ValueError(f"point {point} is not over the identity")
        return tuple(h[E.domain_index(e, m, x)] for m, x in self.domain)

    def extend(self, phi: Sequence[int]) -> int:
        """``(s, x) -> s+ . phi(hat(s), x')`` with ``x = p(x).x'``; every choice is checked."""
        ok, w = self.is_admissible(phi)
        if not ok:
            raise InadmissibleMap(f"map is not admissible: {w}")
        E = self.exp
        A, B, S = E.A, E.B, E.A.S
        m, plus = S.mult, S.plus
        one = S.identity
        top = fiber(A, one)
        table = []
        for t, x in E.domain_points(one):
            sp = plus[t]
            hats = [u for u in S.totals if m[sp][u] == t]
            lifts = [y for y in top if A.act[A.support[x]][y] == x]
            values = {B.act[sp][phi[self._dom_pos[(u, y)]]] for u in hats for y in lifts}
            if len(values) != 1:
                raise InadmissibleMap(f"extension depends on choices at {(t, x)}")
            table.append(values.pop())
        return E.action.index_of((one, tuple(table)))

    def is_admissible(self, phi: Sequence[int]) -> tuple[bool, tuple | None]:
        """Equivariance, componentwise preservation of ``~e`` and well-definedness."""
        E = self.exp
        A, B, S = E.A, E.B, E.A.S
        m = S.mult
        one = S.identity
        dom = self.domain
        pos = self._dom_pos
        if len(phi) != len(dom):
            raise StructureError(f"expected {len(dom)} values")
        if any(B.support[v] != one for v in phi):
            return False, ("values outside B1",)
        for u in S.totals:
            for i, (n, x) in enumerate(dom):
                j = pos[(m[u][n], A.act[u][x])]
                if phi[j] != B.act[u][phi[i]]:
                    return False, ("equivariance", u, i)
        for e in S.projections:
            for i, (n, x) in enumerate(dom):
                for j, (n2, x2) in enumerate(dom):
                    related = m[e][n] == m[e][n2] and A.act[e][x] == A.act[e][x2]
                    if related and B.act[e][phi[i]] != B.act[e][phi[j]]:
                        return False, ("equivalence", e, i, j)
        for s in range(S.size):
            sp = S.plus[s]
            hats = [u for u in S.totals if m[sp][u] == s]
            for u in hats:
                for v in hats:
                    for _, x in dom:
                        i, j = pos[(u, x)], pos[(v, x)]
                        if B.act[sp][phi[i]] != B.act[sp][phi[j]]:
                            return False, ("well-defined", s, i, j)
        return True, None


def exponential_point_transport(A: SupportedAction, B: SupportedAction,
                                E: Exponential | None = None,
                                max_search: int = DEFAULT_MAX_SEARCH) -> PointTransport:
    """Enumerate both sides and check that restrict and extend are mutually inverse."""
    for X, nm in ((A, "A"), (B, "B")):
        ok, w = is_factorizable_action(X)
        if not ok:
            raise NotFactorizable(f"{nm} is not factorizable (point {w})")
    E = exponential(A, B, max_search) if E is None else E
    S = A.S
    one = S.identity
    a1, b1 = fiber(A, one), fiber(B, one)
    domain = tuple((u, x) for u in S.totals for x in a1)
    top = tuple(i for i, (e, _) in enumerate(E.action.labels) if e == one)
    shell = PointTransport(E, domain, top, ())
    dpos = {d: i for i, d in enumerate(domain)}
    P = _pair_for(S, A.boolean_mode)
    gens, tot = generating_set(P.M), P.m_elems
    src = [[dpos[(S.mult[tot[g]][n], A.act[tot[g]][x])] for n, x in domain] for g in gens]
    dst = [list(B.act[tot[g]]) for g in gens]
    maps = equivariant_maps(len(domain), src, dst, [b1] * len(domain),
                            lambda f: shell.is_admissible(f)[0], max_search)
    T = PointTransport(E, domain, top, tuple(maps))
    restricted = sorted(T.restrict(p) for p in top)
    if restricted != sorted(maps):
        raise LawViolation("restriction does not land exactly on the admissible maps")
    for p in top:
        if T.extend(T.restrict(p)) != p:
            raise LawViolation(f"extend(restrict({p})) != {p}")
    for phi in maps:
        if T.restrict(T.extend(phi)) != phi:
            raise LawViolation("restrict(extend(phi)) != phi")
    return T

