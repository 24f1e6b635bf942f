"""Supported actions of a left restriction monoid and their Cartesian closed structure.

An action is stored as ``act[s][x] = s.x`` together with ``support[x]``, the
projection of S supporting ``x``.  Boolean mode is switched on by attaching a
Boolean structure (a :class:`~lrmkit.restriction.BooleanLRM` or an inverse
view of one); it then adds the minimum element and joins to the axioms and to
the homomorphism conditions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from .core import (
    AxiomReport,
    Checker,
    StructureError,
    Table,
    as_table,
    as_vector,
    equivariant_maps,
    generating_set,
)
from .restriction import LeftRestrictionMonoid, least_total_above

DEFAULT_MAX_SEARCH = 10**7


class EmptyCarrier(StructureError):
    pass


def split_base(S):
    """``(lrm, structure)`` for an LRM or a Boolean structure wrapping one."""
    if isinstance(S, LeftRestrictionMonoid):
        return S, None
    return S.lrm, S


@dataclass(frozen=True)
class SupportedAction:
    S: LeftRestrictionMonoid
    act: Table
    support: tuple[int, ...]
    structure: object = field(default=None, compare=False)
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.support)
        object.__setattr__(self, "support", as_vector(self.support, n, self.S.size, "support"))
        object.__setattr__(self, "act", as_table(self.act, self.S.size, n, n, "act"))
        if self.structure is not None and self.structure.lrm is not self.S \
                and self.structure.lrm != self.S:
            raise StructureError("Boolean structure belongs to a different monoid")
        if self.labels is not None:
            if len(self.labels) != n:
                raise StructureError(f"{len(self.labels)} labels for {n} points")
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return len(self.support)

    def __len__(self) -> int:
        return len(self.support)

    @property
    def boolean_mode(self) -> bool:
        return self.structure is not None

    def index_of(self, label) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels or range(self.size))}

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """``leq_matrix[x, y]`` iff ``x = p(x).y``."""
        n = self.size
        m = np.zeros((n, n), dtype=bool)
        for x in range(n):
            row = self.act[self.support[x]]
            for y in range(n):
                m[x, y] = row[y] == x
        m.setflags(write=False)
        return m

    def leq(self, x: int, y: int) -> bool:
        return self.act[self.support[x]][y] == x

    def compat(self, x: int, y: int) -> bool:
        return self.act[self.support[x]][y] == self.act[self.support[y]][x]

    @cached_property
    def minimum(self) -> int | None:
        if not self.size:
            return None
        rows = np.flatnonzero(self.leq_matrix.all(axis=1))
        return int(rows[0]) if rows.size else None

    def lub(self, x: int, y: int) -> int | None:
        key = (x, y) if x <= y else (y, x)
        cache = self._lubs
        if key not in cache:
            leq = self.leq_matrix
            cand = np.flatnonzero(leq[x] & leq[y])
            least = cand[leq[np.ix_(cand, cand)].all(axis=1)] if cand.size else cand
            cache[key] = int(least[0]) if least.size else None
        return cache[key]

    @cached_property
    def _lubs(self) -> dict:
        return {}

    def join(self, x: int, y: int) -> int:
        u = self.lub(x, y)
        if u is None:
            raise LookupError(f"no join of {x} and {y}")
        return u

    def join_all(self, xs: Sequence[int]) -> int:
        xs = list(xs)
        r = self.minimum if not xs else xs[0]
        for x in xs[1:]:
            r = self.join(r, x)
        return r


def action_leq(A: SupportedAction, x: int, y: int) -> bool:
    return A.leq(x, y)


def action_compat(A: SupportedAction, x: int, y: int) -> bool:
    return A.compat(x, y)


def check_supported(A: SupportedAction, name: str = "supported action") -> AxiomReport:
    c = Checker(name)
    S = A.S
    m, p, act, sup = S.mult, S.plus, A.act, A.support
    X, Sr = range(A.size), range(S.size)
    one = S.identity
    c.law("action identity", [X], lambda x: act[one][x] == x)
    c.law("action composition", [Sr, Sr, X],
          lambda s, t, x: act[m[s][t]][x] == act[s][act[t][x]])
    c.law("support is a projection", [X], lambda x: p[sup[x]] == sup[x])
    c.law("E1", [X], lambda x: act[sup[x]][x] == x)
    c.law("E2", [Sr, X], lambda s, x: sup[act[s][x]] == p[m[s][sup[x]]])
    return c.done()


def check_boolean_supported(A: SupportedAction, structure=None,
                            name: str = "boolean supported action") -> AxiomReport:
    """(E3)-(E7).  (E7) ranges over the pairs the structure declares joinable."""
    B = structure if structure is not None else A.structure
    if B is None:
        raise StructureError("no Boolean structure attached")
    if not A.size:
        raise EmptyCarrier("Boolean supported actions need a nonempty carrier")
    c = Checker(name)
    S = A.S
    act, sup = A.act, A.support
    X, Sr = range(A.size), range(S.size)
    leq = A.leq_matrix

    def has_min():
        return bool(leq.all(axis=1).any())

    c.record("E3 minimum exists", has_min, 0 if has_min() else 1, ())
    z = A.minimum
    if z is not None:
        c.law("E3 minimum fixed", [Sr], lambda s: act[s][z] == z)
        c.law("E4", [X], lambda x: act[B.zero][x] == z)

    def e5(x, y):
        if not A.compat(x, y):
            return True
        u = A.lub(x, y)
        return u is not None and sup[u] == B.pjoin(sup[x], sup[y])

    c.law("E5", [X, X], e5)

    def e6(s, x, y):
        if not A.compat(x, y):
            return True
        u = A.lub(x, y)
        v = A.lub(act[s][x], act[s][y])
        return u is not None and v is not None and act[s][u] == v

    c.law("E6", [Sr, X, X], e6)

    def e7(s, t, x):
        if not B.joinable(s, t):
            return True
        v = A.lub(act[s][x], act[t][x])
        return v is not None and act[B.join(s, t)][x] == v

    c.law("E7", [Sr, Sr, X], e7)
    return c.done()


def check_action(A: SupportedAction) -> AxiomReport:
    rep = check_supported(A)
    if A.boolean_mode and A.size:
        rep.extend(check_boolean_supported(A))
    return rep


def fiber(A: SupportedAction, e: int) -> tuple[int, ...]:
    return tuple(x for x in range(A.size) if A.support[x] == e)


def restriction_map(A: SupportedAction, e: int, f: int) -> dict[int, int]:
    """``X_e -> X_f``, ``x -> f.x``, for projections ``f <= e``."""
    S = A.S
    if S.mult[f][e] != f:
        raise ValueError(f"projection {f} is not below {e}")
    return {x: A.act[f][x] for x in fiber(A, e)}


def is_factorizable_action(A: SupportedAction) -> tuple[bool, int | None]:
    top = fiber(A, A.S.identity)
    for y in range(A.size):
        if not any(A.leq(y, x) for x in top):
            return False, y
    return True, None


def projection_action(S) -> SupportedAction:
    """Proj(S) with ``s.e = (se)+`` and identity support: the terminal object."""
    S, B = split_base(S)
    proj = S.projections
    pos = {e: i for i, e in enumerate(proj)}
    act = [[pos[S.plus[S.mult[s][e]]] for e in proj] for s in range(S.size)]
    return SupportedAction(S, act, proj, B, proj)


def principal_action(S, e: int) -> SupportedAction:
    """``Se`` under left multiplication, supported by ``x -> x+``."""
    S, B = split_base(S)
    if S.plus[e] != e:
        raise ValueError(f"{e} is not a projection")
    carrier = sorted({S.mult[s][e] for s in range(S.size)})
    pos = {x: i for i, x in enumerate(carrier)}
    act = [[pos[S.mult[s][x]] for x in carrier] for s in range(S.size)]
    return SupportedAction(S, act, [S.plus[x] for x in carrier], B, carrier)


def empty_action(S) -> SupportedAction:
    S, B = split_base(S)
    return SupportedAction(S, [[] for _ in range(S.size)], (), B, ())


def box_product(A: SupportedAction, B: SupportedAction) -> SupportedAction:
    """Pairs with equal supports, acted on componentwise; labels are index pairs."""
    if A.S != B.S:
        raise StructureError("actions over different monoids")
    carrier = [(x, y) for x in range(A.size) for y in range(B.size)
               if A.support[x] == B.support[y]]
    pos = {xy: i for i, xy in enumerate(carrier)}
    act = [[pos[(A.act[s][x], B.act[s][y])] for x, y in carrier] for s in range(A.S.size)]
    return SupportedAction(A.S, act, [A.support[x] for x, _ in carrier], A.structure, carrier)


def disjoint_union(A: SupportedAction, B: SupportedAction) -> SupportedAction:
    """Coproduct: points of A, then points of B shifted by ``|A|``."""
    if A.S != B.S:
        raise StructureError("actions over different monoids")
    k = A.size
    act = [list(A.act[s]) + [y + k for y in B.act[s]] for s in range(A.S.size)]
    labels = [(0, x) for x in range(k)] + [(1, y) for y in range(B.size)]
    return SupportedAction(A.S, act, A.support + B.support, None, labels)


def box_projections(P: SupportedAction) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(x for x, _ in P.labels), tuple(y for _, y in P.labels)


def pairing(P: SupportedAction, f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """The map ``z -> (f(z), g(z))`` into the box product ``P``."""
    return tuple(P.index_of((a, b)) for a, b in zip(f, g))


def box_map(P: SupportedAction, Q: SupportedAction, f: Sequence[int],
            g: Sequence[int]) -> tuple[int, ...]:
    """``f x g`` from the box product ``P`` to the box product ``Q``."""
    return tuple(Q.index_of((f[x], g[y])) for x, y in P.labels)


def check_action_hom(A: SupportedAction, B: SupportedAction,
                     theta: Sequence[int]) -> tuple[bool, tuple | None]:
    """Equivariance and support preservation; Boolean mode adds minimum and joins."""
    if len(theta) != A.size or any(not 0 <= v < B.size for v in theta):
        raise StructureError("theta must map every point of A into B")
    for x in range(A.size):
        if B.support[theta[x]] != A.support[x]:
            return False, ("support", x)
    for s in range(A.S.size):
        row_a, row_b = A.act[s], B.act[s]
        for x in range(A.size):
            if theta[row_a[x]] != row_b[theta[x]]:
                return False, ("equivariance", s, x)
    if A.boolean_mode and B.boolean_mode and A.size:
        return _boolean_hom_conditions(A, B, theta)
    return True, None


def _boolean_hom_conditions(A, B, theta):
    if theta[A.minimum] != B.minimum:
        return False, ("minimum",)
    for x in range(A.size):
        for y in range(x + 1, A.size):
            if A.compat(x, y) and theta[A.lub(x, y)] != B.lub(theta[x], theta[y]):
                return False, ("join", x, y)
    return True, None


def enumerate_homs(A: SupportedAction, B: SupportedAction,
                   max_search: int = DEFAULT_MAX_SEARCH) -> list[tuple[int, ...]]:
    """All homomorphisms A -> B, sorted.

    Candidates for ``x`` are restricted to the fiber of ``p(x)``; choosing an
    image propagates along the action of a generating set of S.
    """
    if A.S != B.S:
        raise StructureError("actions over different monoids")
    gens = _generators(A.S)
    by_support: dict[int, list[int]] = {}
    for y in range(B.size):
        by_support.setdefault(B.support[y], []).append(y)
    candidates = [by_support.get(A.support[x], []) for x in range(A.size)]
    accept = None
    if A.boolean_mode and B.boolean_mode and A.size:
        accept = lambda f: _boolean_hom_conditions(A, B, f)[0]  # noqa: E731
    return equivariant_maps(A.size, [A.act[g] for g in gens], [B.act[g] for g in gens],
                            candidates, accept, max_search)


def _generators(S: LeftRestrictionMonoid) -> list[int]:
    cache = S.__dict__
    if "_generating_set" not in cache:
        cache["_generating_set"] = generating_set(S.monoid)
    return cache["_generating_set"]


# --------------------------------------------------------------------------
# exponentials


@dataclass(frozen=True)
class Exponential:
    """``B^A`` with the per-projection domains ``Se [] A`` used to build it."""

    action: SupportedAction
    A: SupportedAction
    B: SupportedAction
    domains: dict = field(compare=False)

    def domain_index(self, e: int, t: int, x: int) -> int:
        """Position of ``(t, x)`` in the carrier of ``Se [] A`` (``t`` an element of S)."""
        return self._domain_pos[e][(t, x)]

    @cached_property
    def _domain_pos(self) -> dict:
        out = {}
        for e, D in self.domains.items():
            ls = D.labels
            principal = self._principal[e]
            out[e] = {(principal.labels[i], x): k for k, (i, x) in enumerate(ls)}
        return out

    @cached_property
    def _principal(self) -> dict:
        base = self.A.structure if self.A.boolean_mode else self.A.S
        return {e: principal_action(base, e) for e in self.domains}

    def domain_points(self, e: int) -> list[tuple[int, int]]:
        """Carrier of ``Se [] A`` as ``(t, x)`` with ``t`` an element of S."""
        principal = self._principal[e]
        return [(principal.labels[i], x) for i, x in self.domains[e].labels]

    @cached_property
    def evaluation(self) -> tuple[SupportedAction, tuple[int, ...]]:
        P = box_product(self.action, self.A)
        out = []
        for i, x in P.labels:
            e, h = self.action.labels[i]
            out.append(h[self.domain_index(e, e, x)])
        return P, tuple(out)


def exponential(A: SupportedAction, B: SupportedAction,
                max_search: int = DEFAULT_MAX_SEARCH) -> Exponential:
    """``B^A``: homomorphisms ``Se [] A -> B`` for every projection ``e``.

    A point is labelled ``(e, table)`` with ``table`` indexed by the carrier of
    ``Se [] A``.  The action is ``(a.h)(t, x) = h(ta, (ta)+ . x)``.
    """
    if A.S != B.S:
        raise StructureError("actions over different monoids")
    S = A.S
    base = A.structure if A.boolean_mode else S
    domains = {e: box_product(principal_action(base, e), A) for e in S.projections}
    points = [(e, h) for e in S.projections
              for h in enumerate_homs(domains[e], B, max_search)]
    index = {pt: i for i, pt in enumerate(points)}
    shell = Exponential(None, A, B, domains)
    m, plus = S.mult, S.plus
    act = []
    for a in range(S.size):
        row = []
        for e, h in points:
            f = plus[m[a][e]]
            table = []
            for t, x in shell.domain_points(f):
                ta = m[t][a]
                table.append(h[shell.domain_index(e, ta, A.act[plus[ta]][x])])
            row.append(index[(f, tuple(table))])
        act.append(row)
    action = SupportedAction(S, act, [e for e, _ in points], A.structure, points)
    return Exponential(action, A, B, domains)


def eval_map(E: Exponential) -> tuple[SupportedAction, tuple[int, ...]]:
    """``(B^A [] A, eval)`` with ``eval(h, x) = h(p(x), x)``."""
    return E.evaluation


def curry(E: Exponential, Z: SupportedAction, g: Sequence[int]) -> tuple[int, ...]:
    """Transpose ``g: Z [] A -> B`` to ``Z -> B^A``.

    ``curry(g)(z)`` is the map ``(a, x) -> g(a.z, (a r(z))+ . x)`` on
    ``S r(z) [] A``.
    """
    A = E.A
    ZA = _box_with(E, Z)
    if len(g) != ZA.size:
        raise StructureError("g must be defined on Z [] A")
    S = A.S
    m, plus = S.mult, S.plus
    out = []
    for z in range(Z.size):
        e = Z.support[z]
        table = tuple(g[ZA.index_of((Z.act[t][z], A.act[plus[m[t][e]]][x]))]
                      for t, x in E.domain_points(e))
        out.append(E.action.index_of((e, table)))
    return tuple(out)


def _box_with(E: Exponential, Z: SupportedAction) -> SupportedAction:
    cache = E.__dict__.setdefault("_boxes", {})
    if Z not in cache:
        cache[Z] = box_product(Z, E.A)
    return cache[Z]


def uncurry(E: Exponential, Z: SupportedAction, h: Sequence[int]) -> tuple[int, ...]:
    """``eval o (h [] id)`` as a map on ``Z [] A``."""
    P, ev = eval_map(E)
    ZA = _box_with(E, Z)
    return tuple(ev[j] for j in box_map(ZA, P, h, range(E.A.size)))


def hat(S: LeftRestrictionMonoid, s: int) -> int:
    """A chosen total element above ``s``: the total cover when S is Boolean."""
    B = S.boolean
    if B is not None:
        return B.join(s, B.comp(S.plus[s]))
    return least_total_above(S, s)


# --------------------------------------------------------------------------
# enumeration of all small actions


def enumerate_actions(S, n: int, up_to_iso: bool = True,
                      max_search: int = DEFAULT_MAX_SEARCH) -> list[SupportedAction]:
    """Every supported action of S on ``{0..n-1}``.

    Supports are taken non-decreasing; with ``up_to_iso`` one representative
    per isomorphism class is kept.  Boolean mode filters by (E3)-(E7).
    """
    S, Bstruct = split_base(S)
    gens = _generators(S)
    proj = S.projections
    m, plus = S.mult, S.plus
    budget = [max_search]
    found: dict = {}

    for sup in _nondecreasing(proj, n):
        fib: dict[int, list[int]] = {}
        for x, e in enumerate(sup):
            fib.setdefault(e, []).append(x)
        options = []
        for g in gens:
            choices = [fib.get(plus[m[g][sup[x]]], []) for x in range(n)]
            options.append(list(product(*choices)))
        for tables in _consistent_generator_images(S, gens, options, n, budget, max_search):
            act = [tables[s] for s in range(S.size)]
            if any(act[sup[x]][x] != x for x in range(n)):
                continue
            A = SupportedAction(S, act, sup, Bstruct)
            if Bstruct is not None and n and not check_boolean_supported(A).ok:
                continue
            key = _canonical_key(A) if up_to_iso else (tuple(map(tuple, act)), tuple(sup))
            found.setdefault(key, A)
    return [found[k] for k in sorted(found)]


def _nondecreasing(values, n):
    if n == 0:
        yield ()
        return
    for i, v in enumerate(values):
        for rest in _nondecreasing(values[i:], n - 1):
            yield (v, *rest)


def _consistent_generator_images(S, gens, options, n, budget, max_search):
    """Assignments of transformations to generators that extend to a monoid action."""
    m = S.mult
    one = S.identity
    ident = tuple(range(n))

    def closure(chosen):
        # phi(s g) = phi(s) o phi(g), explored breadth first from the identity
        phi = {one: ident}
        queue = deque([one])
        while queue:
            s = queue.popleft()
            for g, fg in chosen:
                t = m[s][g]
                fs = phi[s]
                ft = tuple(fs[fg[x]] for x in range(n))
                if t in phi:
                    if phi[t] != ft:
                        return None
                else:
                    phi[t] = ft
                    queue.append(t)
        return phi

    def search(k, chosen):
        budget[0] -= 1
        if budget[0] < 0:
            from .core import SearchLimitExceeded
            raise SearchLimitExceeded(f"more than {max_search} candidate evaluations")
        phi = closure(chosen)
        if phi is None:
            return
        if k == len(gens):
            yield phi
            return
        g = gens[k]
        for f in options[k]:
            yield from search(k + 1, chosen + [(g, f)])

    yield from search(0, [])


def _canonical_key(A: SupportedAction):
    n = A.size
    best = None
    from itertools import permutations
    for perm in permutations(range(n)):
        # relabel point x as perm[x]; keep supports non-decreasing
        sup = [0] * n
        for x in range(n):
            sup[perm[x]] = A.support[x]
        if any(sup[i] > sup[i + 1] for i in range(n - 1)):
            continue
        act = [[0] * n for _ in range(A.S.size)]
        for s in range(A.S.size):
            for x in range(n):
                act[s][perm[x]] = perm[A.act[s][x]]
        key = (tuple(sup), tuple(map(tuple, act)))
        if best is None or key < best:
            best = key
    return best
