"""Finite algebraic primitives stored as explicit tables.

Elements are the dense indices ``0..n-1``.  Every structure keeps its tables
as tuples of tuples so values are hashable and immutable once built.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np

Table = tuple[tuple[int, ...], ...]


class StructureError(ValueError):
    """A table is malformed (ragged, wrong size, index out of range)."""


class NoWitness(LookupError):
    """An existence axiom has no witness for the requested arguments."""


class SearchLimitExceeded(RuntimeError):
    pass


def as_table(rows, n_rows: int | None = None, n_cols: int | None = None,
             bound: int | None = None, name: str = "table") -> Table:
    """Validate and freeze a rectangular integer table."""
    rows = [list(r) for r in rows]
    if n_rows is not None and len(rows) != n_rows:
        raise StructureError(f"{name}: expected {n_rows} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if n_cols is not None and len(row) != n_cols:
            raise StructureError(
                f"{name}[{i}]: expected {n_cols} entries, got {len(row)}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise StructureError(f"{name}[{i}][{j}]: not an integer: {v!r}")
            if bound is not None and not 0 <= v < bound:
                raise StructureError(f"{name}[{i}][{j}] = {v} out of range 0..{bound - 1}")
    return tuple(tuple(int(v) for v in row) for row in rows)


def as_vector(values, length: int | None = None, bound: int | None = None,
              name: str = "vector") -> tuple[int, ...]:
    return as_table([values], n_cols=length, bound=bound, name=name)[0]


# --------------------------------------------------------------------------
# axiom reports


@dataclass
class Violation:
    law: str
    witness: tuple
    count: int


@dataclass
class AxiomReport:
    """Outcome of an exhaustive axiom scan.

    Every law that was checked appears in ``laws`` in the order it was
    checked.  Failing laws have a :class:`Violation` holding the
    lexicographically least witness and the total number of failures.
    """

    name: str
    laws: list[str] = field(default_factory=list)
    violations: dict[str, Violation] = field(default_factory=dict)
    elapsed: float = 0.0
    _predicates: dict[str, Callable[..., bool]] = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def passed(self, law: str) -> bool:
        if law not in self.laws:
            raise KeyError(law)
        return law not in self.violations

    def failed(self) -> list[str]:
        return [law for law in self.laws if law in self.violations]

    def witness(self, law: str) -> tuple | None:
        v = self.violations.get(law)
        return None if v is None else v.witness

    def reverify(self) -> bool:
        """Re-evaluate every recorded witness; True iff each still fails."""
        return all(not self._predicates[law](*v.witness)
                   for law, v in self.violations.items())

    def extend(self, other: "AxiomReport", prefix: str = "") -> None:
        for law in other.laws:
            key = prefix + law
            self.laws.append(key)
            self._predicates[key] = other._predicates[law]
            if law in other.violations:
                v = other.violations[law]
                self.violations[key] = Violation(key, v.witness, v.count)
        self.elapsed += other.elapsed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "laws": {law: ("fail" if law in self.violations else "pass")
                     for law in self.laws},
            "witnesses": {law: list(v.witness) for law, v in self.violations.items()},
            "counts": {law: v.count for law, v in self.violations.items()},
            "elapsed": round(self.elapsed, 6),
        }

    def summary(self) -> str:
        lines = [f"{self.name}: {'OK' if self.ok else 'FAILED'} "
                 f"({len(self.laws)} laws, {self.elapsed:.3f}s)"]
        for law in self.laws:
            v = self.violations.get(law)
            if v is None:
                lines.append(f"  pass  {law}")
            else:
                lines.append(f"  FAIL  {law}  witness={v.witness}  ({v.count} violations)")
        return "\n".join(lines)


class Checker:
    """Accumulates exhaustive law scans into an :class:`AxiomReport`."""

    def __init__(self, name: str):
        self.report = AxiomReport(name)
        self._t0 = time.perf_counter()

    def law(self, name: str, domains: Sequence[Iterable[int]],
            holds: Callable[..., bool]) -> bool:
        count, first = 0, None
        for w in product(*[sorted(d) for d in domains]):
            if not holds(*w):
                count += 1
                if first is None:
                    first = w
        self.record(name, holds, count, first)
        return count == 0

    def record(self, name: str, holds: Callable[..., bool], count: int,
               witness: tuple | None) -> None:
        """Register a law whose scan was done by the caller (e.g. vectorised)."""
        if name in self.report.laws:
            raise ValueError(f"law {name!r} checked twice")
        self.report.laws.append(name)
        self.report._predicates[name] = holds
        if count:
            self.report.violations[name] = Violation(name, tuple(int(x) for x in witness), int(count))

    def done(self) -> AxiomReport:
        self.report.elapsed = time.perf_counter() - self._t0
        return self.report


def first_true(mask: np.ndarray) -> tuple[int, tuple | None]:
    """Count of True entries and the C-order (lexicographically) first index."""
    count = int(mask.sum())
    if not count:
        return 0, None
    return count, tuple(int(i) for i in np.argwhere(mask)[0])


# --------------------------------------------------------------------------
# monoids and semilattices


@dataclass(frozen=True)
class FiniteMonoid:
    mult: Table
    identity: int

    def __post_init__(self):
        n = len(self.mult)
        if n == 0:
            raise StructureError("monoid must have at least one element")
        object.__setattr__(self, "mult", as_table(self.mult, n, n, n, "mult"))
        if not isinstance(self.identity, int) or not 0 <= self.identity < n:
            raise StructureError(f"identity {self.identity!r} out of range")

    @property
    def size(self) -> int:
        return len(self.mult)

    def __len__(self) -> int:
        return len(self.mult)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def product(self, *xs: int) -> int:
        r = self.identity
        for x in xs:
            r = self.mult[r][x]
        return r

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.mult, dtype=np.int64)
        a.setflags(write=False)
        return a


def check_monoid(m: FiniteMonoid, name: str = "monoid") -> AxiomReport:
    c = Checker(name)
    t = m.array
    n = m.size
    mult = m.mult
    # t[t[a,b], c] vs t[a, t[b,c]] over all triples at once
    left = t[t[:, :, None], np.arange(n)[None, None, :]]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    count, w = first_true(left != right)
    c.record("associativity",
             lambda a, b, x: mult[mult[a][b]][x] == mult[a][mult[b][x]], count, w)
    e = m.identity
    c.law("left identity", [range(n)], lambda a: mult[e][a] == a)
    c.law("right identity", [range(n)], lambda a: mult[a][e] == a)
    return c.done()


def submonoid_table(m: FiniteMonoid, elems: Sequence[int]) -> FiniteMonoid:
    """Relabel the submonoid on ``elems`` (closed, contains identity) densely."""
    pos = {x: i for i, x in enumerate(elems)}
    try:
        rows = [[pos[m.mult[a][b]] for b in elems] for a in elems]
        ident = pos[m.identity]
    except KeyError as exc:
        raise StructureError(f"subset not closed: {exc.args[0]} missing") from None
    return FiniteMonoid(as_table(rows), ident)


def _closure(m: FiniteMonoid, gens: Sequence[int]) -> set[int]:
    reached = {m.identity}
    queue = deque(reached)
    while queue:
        x = queue.popleft()
        for h in gens:
            y = m.mult[x][h]
            if y not in reached:
                reached.add(y)
                queue.append(y)
    return reached


def generating_set(m: FiniteMonoid) -> list[int]:
    """A small monoid generating set.

    Greedy by largest closure (ties to the least index), then redundant
    generators are dropped.
    """
    gens: list[int] = []
    reached = {m.identity}
    while len(reached) < m.size:
        best, best_size = -1, -1
        for x in range(m.size):
            if x in reached:
                continue
            k = len(_closure(m, gens + [x]))
            if k > best_size:
                best, best_size = x, k
        gens.append(best)
        reached = _closure(m, gens)
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if len(_closure(m, rest)) == m.size:
            gens = rest
    return sorted(gens)


@dataclass(frozen=True)
class Semilattice:
    """Meet semilattice with top; the meet table is a commutative idempotent monoid."""

    meet: Table
    top: int

    def __post_init__(self):
        n = len(self.meet)
        if n == 0:
            raise StructureError("semilattice must be nonempty")
        object.__setattr__(self, "meet", as_table(self.meet, n, n, n, "meet"))
        if not 0 <= self.top < n:
            raise StructureError(f"top {self.top} out of range")

    @property
    def size(self) -> int:
        return len(self.meet)

    @property
    def monoid(self) -> FiniteMonoid:
        return FiniteMonoid(self.meet, self.top)

    def leq(self, e: int, f: int) -> bool:
        return self.meet[e][f] == e


def check_semilattice(s: Semilattice, name: str = "semilattice") -> AxiomReport:
    rep = check_monoid(s.monoid, name)
    c = Checker(name)
    m = s.meet
    n = s.size
    c.law("meet commutative", [range(n)] * 2, lambda e, f: m[e][f] == m[f][e])
    c.law("meet idempotent", [range(n)], lambda e: m[e][e] == e)
    rep.extend(c.done())
    return rep


@dataclass(frozen=True)
class BooleanAlgebra:
    meet: Table
    join: Table
    complement: tuple[int, ...]
    top: int
    bottom: int

    def __post_init__(self):
        n = len(self.meet)
        if n == 0:
            raise StructureError("Boolean algebra must be nonempty")
        object.__setattr__(self, "meet", as_table(self.meet, n, n, n, "meet"))
        object.__setattr__(self, "join", as_table(self.join, n, n, n, "join"))
        object.__setattr__(self, "complement", as_vector(self.complement, n, n, "complement"))
        for label, v in (("top", self.top), ("bottom", self.bottom)):
            if not 0 <= v < n:
                raise StructureError(f"{label} {v} out of range")

    @property
    def size(self) -> int:
        return len(self.meet)

    @property
    def semilattice(self) -> Semilattice:
        return Semilattice(self.meet, self.top)

    @property
    def monoid(self) -> FiniteMonoid:
        return FiniteMonoid(self.meet, self.top)

    def leq(self, e: int, f: int) -> bool:
        return self.meet[e][f] == e


def check_boolean_algebra(b: BooleanAlgebra, name: str = "boolean algebra") -> AxiomReport:
    rep = check_semilattice(b.semilattice, name)
    c = Checker(name)
    m, j, k = b.meet, b.join, b.complement
    n, one, zero = b.size, b.top, b.bottom
    pairs, triples = [range(n)] * 2, [range(n)] * 3
    c.law("join commutative", pairs, lambda e, f: j[e][f] == j[f][e])
    c.law("join associative", triples, lambda e, f, g: j[j[e][f]][g] == j[e][j[f][g]])
    c.law("join idempotent", [range(n)], lambda e: j[e][e] == e)
    c.law("bottom is join identity", [range(n)], lambda e: j[zero][e] == e)
    c.law("absorption", pairs, lambda e, f: m[e][j[e][f]] == e and j[e][m[e][f]] == e)
    c.law("meet distributes over join", triples,
          lambda e, f, g: m[e][j[f][g]] == j[m[e][f]][m[e][g]])
    c.law("join distributes over meet", triples,
          lambda e, f, g: j[e][m[f][g]] == m[j[e][f]][j[e][g]])
    c.law("complement meet", [range(n)], lambda e: m[e][k[e]] == zero)
    c.law("complement join", [range(n)], lambda e: j[e][k[e]] == one)
    c.law("de morgan", pairs, lambda e, f: k[j[e][f]] == m[k[e]][k[f]]
          and k[m[e][f]] == j[k[e]][k[f]])
    c.record("non-degenerate", lambda: zero != one, int(zero == one), ())
    rep.extend(c.done())
    return rep


def semilattice_leq(E: Semilattice | BooleanAlgebra, e: int, f: int) -> bool:
    return E.meet[e][f] == e


# --------------------------------------------------------------------------
# partitions and right congruences


@dataclass(frozen=True)
class Partition:
    """``blocks[i]`` is the least element of the block containing ``i``."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", canonical_blocks(self.blocks))

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def by_key(cls, n: int, key: Callable[[int], object]) -> "Partition":
        return cls(tuple(key(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def rep(self, i: int) -> int:
        return self.blocks[i]

    def same(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    @cached_property
    def reps(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.blocks)))

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: dict[int, list[int]] = {}
        for i, b in enumerate(self.blocks):
            out.setdefault(b, []).append(i)
        return tuple(tuple(out[r]) for r in self.reps)

    def class_of(self, i: int) -> tuple[int, ...]:
        return self.classes[self.reps.index(self.blocks[i])]

    def refines(self, other: "Partition") -> bool:
        return all(other.same(i, self.blocks[i]) for i in range(len(self)))


def canonical_blocks(ids: Sequence) -> tuple[int, ...]:
    """Relabel arbitrary hashable block ids by the least member of each block."""
    first: dict = {}
    out = []
    for i, b in enumerate(ids):
        if b not in first:
            first[b] = i
        out.append(first[b])
    return tuple(out)


@dataclass(frozen=True)
class RightCongruence:
    monoid: FiniteMonoid
    partition: Partition


def check_right_congruence(m: FiniteMonoid, p: Partition) -> tuple[bool, tuple | None]:
    """Right closure of ``p``; on failure ``(a, b, k)`` with a~b but ak !~ bk."""
    if len(p) != m.size:
        raise StructureError(f"partition covers {len(p)} elements, monoid has {m.size}")
    mult, blocks = m.mult, p.blocks
    for a in range(m.size):
        for b in range(m.size):
            if blocks[a] != blocks[b]:
                continue
            for k in range(m.size):
                if blocks[mult[a][k]] != blocks[mult[b][k]]:
                    return False, (a, b, k)
    return True, None


# --------------------------------------------------------------------------
# search for equivariant maps


def equivariant_maps(
    n_src: int,
    src_acts: Sequence[Sequence[int]],
    dst_acts: Sequence[Sequence[int]],
    candidates: Sequence[Sequence[int]],
    accept: Callable[[tuple[int, ...]], bool] | None = None,
    max_search: int = 10**7,
) -> list[tuple[int, ...]]:
    """All maps ``f`` with ``f(g.x) = g.f(x)`` for each paired generator.

    ``src_acts[i][x]`` and ``dst_acts[i][y]`` give the action of the i-th
    operator on source and target.  ``candidates[x]`` lists allowed images of
    ``x``.  Choosing ``f(x)`` forces ``f`` on the whole orbit of ``x``, so the
    search only branches on orbit generators.  ``max_search`` caps the number
    of tentative assignments.
    """
    allowed = [set(c) for c in candidates]
    results: list[tuple[int, ...]] = []
    assign = [-1] * n_src
    budget = [max_search]

    def propagate(x: int, v: int, trail: list[int]) -> bool:
        queue = [(x, v)]
        while queue:
            x, v = queue.pop()
            cur = assign[x]
            if cur >= 0:
                if cur != v:
                    return False
                continue
            if v not in allowed[x]:
                return False
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchLimitExceeded(f"more than {max_search} candidate evaluations")
            assign[x] = v
            trail.append(x)
            for sa, da in zip(src_acts, dst_acts):
                queue.append((sa[x], da[v]))
        return True

    def search(start: int) -> None:
        x = start
        while x < n_src and assign[x] >= 0:
            x += 1
        if x == n_src:
            f = tuple(assign)
            if accept is None or accept(f):
                results.append(f)
            return
        for v in sorted(allowed[x]):
            trail: list[int] = []
            if propagate(x, v, trail):
                search(x + 1)
            for y in trail:
                assign[y] = -1

    search(0)
    results.sort()
    return results
