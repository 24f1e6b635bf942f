"""Matched pairs [E|M] and the monoid S[E|M] built from them.

``act[m][e]`` is ``m * e`` and ``cong[e]`` is the right congruence on M
indexed by ``e``.  Elements of S[E|M] are pairs ``(e, r)`` with ``r`` the
least member of a class of ``cong[e]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    AxiomReport,
    BooleanAlgebra,
    Checker,
    FiniteMonoid,
    NoWitness,
    Partition,
    Semilattice,
    StructureError,
    Table,
    as_table,
    check_boolean_algebra,
    check_monoid,
    check_semilattice,
    submonoid_table,
)
from .restriction import (
    LeftRestrictionMonoid,
    NotFactorizable,
    as_boolean,
    check_lrm_hom,
    is_factorizable,
    least_total_above,
)


class LawViolation(AssertionError):
    """A property guaranteed for valid inputs failed; the inputs are not valid."""


@dataclass(frozen=True)
class MatchedPair:
    E: Semilattice | BooleanAlgebra
    M: FiniteMonoid
    act: Table
    cong: tuple[Partition, ...]
    # positions of E and M inside the LRM they were extracted from
    e_elems: tuple[int, ...] | None = field(default=None, compare=False)
    m_elems: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        nE, nM = self.E.size, self.M.size
        object.__setattr__(self, "act", as_table(self.act, nM, nE, nE, "act"))
        cong = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.cong)
        if len(cong) != nE:
            raise StructureError(f"congruence family has {len(cong)} members, E has {nE}")
        for e, c in enumerate(cong):
            if len(c) != nM:
                raise StructureError(f"cong[{e}] covers {len(c)} elements, M has {nM}")
        object.__setattr__(self, "cong", cong)

    @property
    def boolean(self) -> bool:
        return isinstance(self.E, BooleanAlgebra)

    @property
    def top(self) -> int:
        return self.E.top

    def star(self, m: int, e: int) -> int:
        return self.act[m][e]

    def equiv(self, e: int, m: int, n: int) -> bool:
        return self.cong[e].same(m, n)

    def rep(self, e: int, m: int) -> int:
        return self.cong[e].rep(m)


def check_matched_pair(P: MatchedPair, name: str = "matched pair") -> AxiomReport:
    rep = AxiomReport(name)
    rep.extend(check_boolean_algebra(P.E) if P.boolean else check_semilattice(P.E), prefix="E ")
    rep.extend(check_monoid(P.M), prefix="M ")

    c = Checker(name)
    E, M = range(P.E.size), range(P.M.size)
    a, m, meet = P.act, P.M.mult, P.E.meet
    one, top = P.M.identity, P.E.top
    b = [cg.blocks for cg in P.cong]
    c.law("MP1 identity", [E], lambda e: a[one][e] == e)
    c.law("MP1 composition", [M, M, E], lambda x, y, e: a[m[x][y]][e] == a[x][a[y][e]])
    c.law("MP2", [M], lambda x: a[x][top] == top)
    c.law("MP3", [M, E, E], lambda x, e, f: a[x][meet[e][f]] == meet[a[x][e]][a[x][f]])
    c.law("MP4", [E, M, M, M],
          lambda e, x, y, k: b[e][x] != b[e][y] or b[e][m[x][k]] == b[e][m[y][k]])
    c.law("MP5", [M, M], lambda x, y: b[top][x] != b[top][y] or x == y)
    c.law("MP6", [E, E, M, M], lambda f, e, x, y: meet[f][e] != f
          or b[e][x] != b[e][y] or b[f][x] == b[f][y])
    c.law("MP7", [E, M, M, M], lambda e, x, y, k: b[e][x] != b[e][y]
          or b[a[k][e]][m[k][x]] == b[a[k][e]][m[k][y]])
    c.law("MP8", [E, M, M, E], lambda e, x, y, f: b[e][x] != b[e][y]
          or meet[e][a[x][f]] == meet[e][a[y][f]])
    rep.extend(c.done())
    return rep


def check_boolean_matched_pair(P: MatchedPair, name: str = "boolean matched pair") -> AxiomReport:
    """(MP9)-(MP12); (MP12) is checked by exhaustive witness search."""
    if not P.boolean:
        raise StructureError("E is not a Boolean algebra")
    c = Checker(name)
    E, M = range(P.E.size), range(P.M.size)
    a, j, comp = P.act, P.E.join, P.E.complement
    b = [cg.blocks for cg in P.cong]
    bottom = P.E.bottom
    c.law("MP9", [M, M], lambda x, y: b[bottom][x] == b[bottom][y])
    c.law("MP10", [M, E, E], lambda x, e, f: a[x][j[e][f]] == j[a[x][e]][a[x][f]])
    c.law("MP11", [E, E, M, M], lambda e, f, x, y: b[e][x] != b[e][y]
          or b[f][x] != b[f][y] or b[j[e][f]][x] == b[j[e][f]][y])

    def mp12(x, y, e):
        ce, cc = b[e], b[comp[e]]
        return any(ce[p] == ce[x] and cc[p] == cc[y] for p in M)

    c.law("MP12", [M, M, E], mp12)
    return c.done()


def check_pair(P: MatchedPair) -> AxiomReport:
    rep = check_matched_pair(P)
    if P.boolean:
        rep.extend(check_boolean_matched_pair(P))
    return rep


def from_lrm(S: LeftRestrictionMonoid, boolean: bool | None = None) -> MatchedPair:
    """[Proj(S)|Tot(S)] with ``m * e = (me)+`` and ``m ~e n`` iff ``em = en``.

    With ``boolean=None`` the Boolean flag is set iff ``S`` is Boolean.
    """
    proj, tot = S.projections, S.totals
    if boolean is None:
        boolean = S.zero is not None and S.boolean is not None
    mult, plus = S.mult, S.plus
    pos = {e: i for i, e in enumerate(proj)}
    if boolean:
        E = as_boolean(S).algebra
    else:
        E = Semilattice([[pos[mult[e][f]] for f in proj] for e in proj], pos[S.identity])
    M = submonoid_table(S.monoid, tot)
    act = [[pos[plus[mult[m][e]]] for e in proj] for m in tot]
    cong = tuple(Partition.by_key(len(tot), lambda i, e=e: mult[e][tot[i]]) for e in proj)
    return MatchedPair(E, M, act, cong, tuple(proj), tuple(tot))


def build_lrm(P: MatchedPair) -> LeftRestrictionMonoid:
    """S[E|M]: pairs ``(e, [a]_e)`` with ``(e,[a])(f,[b]) = (e(a*f), [ab])``."""
    elems = [(e, r) for e in range(P.E.size) for r in P.cong[e].reps]
    index = {x: i for i, x in enumerate(elems)}
    meet, act, m = P.E.meet, P.act, P.M.mult
    one = P.M.identity
    rows = []
    for e, a in elems:
        row = []
        for f, b in elems:
            g = meet[e][act[a][f]]
            row.append(index[(g, P.rep(g, m[a][b]))])
        rows.append(row)
    plus = [index[(e, P.rep(e, one))] for e, _ in elems]
    identity = index[(P.E.top, one)]
    zero = index[(P.E.bottom, P.rep(P.E.bottom, one))] if P.boolean else None
    return LeftRestrictionMonoid(FiniteMonoid(rows, identity), tuple(plus), zero, tuple(elems))


def pair_embedding(P: MatchedPair, S: LeftRestrictionMonoid | None = None):
    """``(alpha, beta)`` from P into from_lrm(S[P]): ``a -> (1,[a])``, ``e -> (e,[1])``."""
    S = build_lrm(P) if S is None else S
    Q = from_lrm(S, P.boolean)
    tpos = {t: i for i, t in enumerate(Q.m_elems)}
    ppos = {e: i for i, e in enumerate(Q.e_elems)}
    one = P.M.identity
    alpha = tuple(tpos[S.index_of((P.E.top, a))] for a in range(P.M.size))
    beta = tuple(ppos[S.index_of((e, P.rep(e, one)))] for e in range(P.E.size))
    return Q, alpha, beta


def check_mp_hom(P: MatchedPair, Q: MatchedPair, alpha: Sequence[int],
                 beta: Sequence[int]) -> tuple[bool, tuple | None]:
    """Monoid hom, semilattice hom, ``beta(m*e) = alpha(m)*beta(e)``, congruence transport."""
    if len(alpha) != P.M.size or len(beta) != P.E.size:
        raise StructureError("alpha/beta must be total")
    mP, mQ = P.M.mult, Q.M.mult
    if alpha[P.M.identity] != Q.M.identity:
        return False, ("alpha identity",)
    for x in range(P.M.size):
        for y in range(P.M.size):
            if alpha[mP[x][y]] != mQ[alpha[x]][alpha[y]]:
                return False, ("alpha product", x, y)
    if beta[P.E.top] != Q.E.top:
        return False, ("beta top",)
    boolean = P.boolean and Q.boolean
    if boolean and beta[P.E.bottom] != Q.E.bottom:
        return False, ("beta bottom",)
    for e in range(P.E.size):
        for f in range(P.E.size):
            if beta[P.E.meet[e][f]] != Q.E.meet[beta[e]][beta[f]]:
                return False, ("beta meet", e, f)
            if boolean and beta[P.E.join[e][f]] != Q.E.join[beta[e]][beta[f]]:
                return False, ("beta join", e, f)
    for x in range(P.M.size):
        for e in range(P.E.size):
            if beta[P.act[x][e]] != Q.act[alpha[x]][beta[e]]:
                return False, ("action", x, e)
    for e in range(P.E.size):
        for x in range(P.M.size):
            for y in range(P.M.size):
                if P.equiv(e, x, y) and not Q.equiv(beta[e], alpha[x], alpha[y]):
                    return False, ("congruence", e, x, y)
    return True, None


def hom_to_lrm_hom(P: MatchedPair, Q: MatchedPair, alpha: Sequence[int], beta: Sequence[int],
                   SP: LeftRestrictionMonoid | None = None,
                   SQ: LeftRestrictionMonoid | None = None) -> tuple[int, ...]:
    """``(e,[a]_e) -> (beta(e), [alpha(a)]_beta(e))`` as a map S[P] -> S[Q]."""
    ok, w = check_mp_hom(P, Q, alpha, beta)
    if not ok:
        raise ValueError(f"not a matched-pair homomorphism: {w}")
    SP = build_lrm(P) if SP is None else SP
    SQ = build_lrm(Q) if SQ is None else SQ
    out = []
    for e, a in SP.labels:
        f = beta[e]
        out.append(SQ.index_of((f, Q.rep(f, alpha[a]))))
    return tuple(out)


def lrm_hom_to_mp_hom(S: LeftRestrictionMonoid, T: LeftRestrictionMonoid, theta: Sequence[int],
                      P: MatchedPair | None = None, Q: MatchedPair | None = None):
    """Restrict an LRM hom to totals and projections of the extracted pairs."""
    P = from_lrm(S) if P is None else P
    Q = from_lrm(T) if Q is None else Q
    tpos = {t: i for i, t in enumerate(Q.m_elems)}
    ppos = {e: i for i, e in enumerate(Q.e_elems)}
    alpha = tuple(tpos[theta[t]] for t in P.m_elems)
    beta = tuple(ppos[theta[e]] for e in P.e_elems)
    return alpha, beta


@dataclass(frozen=True)
class Reconstruction:
    theta: tuple[int, ...]
    source: LeftRestrictionMonoid
    target: LeftRestrictionMonoid
    pair: MatchedPair


def reconstruction_iso(S: LeftRestrictionMonoid, boolean: bool | None = None) -> Reconstruction:
    """``a -> (a+, [m]_{a+})`` from a factorizable S onto S[Proj(S)|Tot(S)].

    ``m`` is the least-index total above ``a``; every other choice is checked
    to give the same class.  The result is verified to be an isomorphism.
    """
    ok, w = is_factorizable(S)
    if not ok:
        raise NotFactorizable(f"element {w} has no total element above it")
    P = from_lrm(S, boolean)
    T = build_lrm(P)
    epos = {e: i for i, e in enumerate(P.e_elems)}
    mpos = {t: i for i, t in enumerate(P.m_elems)}
    leq, mult, plus = S.leq_matrix, S.mult, S.plus
    theta = []
    for a in range(S.size):
        e = plus[a]
        above = [t for t in S.totals if leq[a, t]]
        if len({mult[e][t] for t in above}) != 1:
            raise LawViolation(f"a+m depends on the total m above {a}")
        m = least_total_above(S, a)
        ei = epos[e]
        theta.append(T.index_of((ei, P.rep(ei, mpos[m]))))
    theta = tuple(theta)
    if sorted(theta) != list(range(T.size)):
        raise LawViolation("reconstruction map is not bijective")
    ok, w = check_lrm_hom(S, T, theta, boolean_mode=P.boolean)
    if not ok:
        raise LawViolation(f"reconstruction map is not a homomorphism: {w}")
    return Reconstruction(theta, S, T, P)


def relabel_lrm(S: LeftRestrictionMonoid, theta: Sequence[int]) -> LeftRestrictionMonoid:
    """Transport the tables of S along the bijection ``theta`` (``i -> theta[i]``)."""
    n = S.size
    inv = [0] * n
    for i, t in enumerate(theta):
        inv[t] = i
    rows = [[theta[S.mult[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    plus = [theta[S.plus[inv[a]]] for a in range(n)]
    zero = None if S.zero is None else theta[S.zero]
    return LeftRestrictionMonoid(FiniteMonoid(rows, theta[S.identity]), tuple(plus), zero)


def mp12_witness(P: MatchedPair, m: int, n: int, e: int) -> int:
    """Least ``p`` with ``p ~e m`` and ``p ~e' n``, ``e'`` the complement of ``e``."""
    if not P.boolean:
        raise StructureError("MP12 needs a Boolean algebra")
    ce, cc = P.cong[e], P.cong[P.E.complement[e]]
    for p in range(P.M.size):
        if ce.same(p, m) and cc.same(p, n):
            return p
    raise NoWitness(f"MP12 fails for m={m}, n={n}, e={e}")


def amelia_interpolate(P: MatchedPair, m: int, n: int, e: int, f: int) -> int:
    """``p`` with ``p ~e m`` and ``p ~f n``, given ``m ~ef n``.

    The returned element is the MP12 witness for ``(m, n, e)``.  Every other
    solution is checked to agree with it modulo ``~(e+f)``.
    """
    E = P.E
    if not P.equiv(E.meet[e][f], m, n):
        raise ValueError(f"precondition fails: {m} and {n} differ modulo e*f")
    p = mp12_witness(P, m, n, e)
    if not (P.equiv(e, p, m) and P.equiv(f, p, n)):
        raise LawViolation(f"MP12 witness {p} does not interpolate")
    ef = E.join[e][f]
    for q in range(P.M.size):
        if P.equiv(e, q, m) and P.equiv(f, q, n) and not P.equiv(ef, p, q):
            raise LawViolation(f"interpolants {p} and {q} differ modulo e+f")
    return p


def pair_join(P: MatchedPair, S: LeftRestrictionMonoid, x: int, y: int) -> int:
    """``(e,[a]) v (f,[b]) = (e+f, [p]_{e+f})`` with ``p`` interpolating a and b."""
    e, a = S.labels[x]
    f, b = S.labels[y]
    p = amelia_interpolate(P, a, b, e, f)
    g = P.E.join[e][f]
    return S.index_of((g, P.rep(g, p)))
