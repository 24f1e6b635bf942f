"""Standard finite structures used as fixtures.

Partial maps on ``{0..n-1}`` are tuples whose entry ``None`` marks an
undefined point; they compose left to right.
"""

from __future__ import annotations

from itertools import permutations, product
from math import comb, factorial

from .core import BooleanAlgebra, FiniteMonoid, StructureError
from .restriction import LeftRestrictionMonoid

MAX_SIZE = 4096


def _check_cap(n: int) -> None:
    if n > MAX_SIZE:
        raise StructureError(f"generated structure would have {n} elements (cap {MAX_SIZE})")


def _then(f: tuple, g: tuple) -> tuple:
    """First ``f``, then ``g``."""
    return tuple(None if f[x] is None else g[f[x]] for x in range(len(f)))


def _domain_identity(f: tuple) -> tuple:
    return tuple(None if v is None else x for x, v in enumerate(f))


def _partial_map_lrm(maps: list[tuple], n: int) -> LeftRestrictionMonoid:
    index = {f: i for i, f in enumerate(maps)}
    mult = [[index[_then(f, g)] for g in maps] for f in maps]
    plus = [index[_domain_identity(f)] for f in maps]
    identity = index[tuple(range(n))]
    zero = index[(None,) * n]
    return LeftRestrictionMonoid(FiniteMonoid(mult, identity), tuple(plus), zero, tuple(maps))


def pt(n: int) -> LeftRestrictionMonoid:
    """All partial transformations of an n-set; (n+1)^n elements."""
    _check_cap((n + 1) ** n)
    maps = list(product([None, *range(n)], repeat=n))
    return _partial_map_lrm(maps, n)


def sym_inv(n: int) -> LeftRestrictionMonoid:
    """Partial injections of an n-set (the symmetric inverse monoid)."""
    _check_cap(sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1)))
    maps = [f for f in product([None, *range(n)], repeat=n)
            if len([v for v in f if v is not None]) == len({v for v in f if v is not None})]
    return _partial_map_lrm(maps, n)


def full_transformation(n: int) -> FiniteMonoid:
    """All maps n -> n under left-to-right composition."""
    _check_cap(n ** n)
    maps = list(product(range(n), repeat=n))
    index = {f: i for i, f in enumerate(maps)}
    mult = [[index[tuple(g[f[x]] for x in range(n))] for g in maps] for f in maps]
    return FiniteMonoid(mult, index[tuple(range(n))])


def cyclic_group(n: int) -> FiniteMonoid:
    return FiniteMonoid([[(a + b) % n for b in range(n)] for a in range(n)], 0)


def powerset(k: int) -> BooleanAlgebra:
    """Subsets of a k-set as bitmasks; top is ``2**k - 1``."""
    n = 1 << k
    _check_cap(n)
    return BooleanAlgebra(
        meet=[[a & b for b in range(n)] for a in range(n)],
        join=[[a | b for b in range(n)] for a in range(n)],
        complement=[(n - 1) ^ a for a in range(n)],
        top=n - 1,
        bottom=0,
    )


def boolean_as_lrm(B: BooleanAlgebra | int) -> LeftRestrictionMonoid:
    """A Boolean algebra as an LRM: product is meet and every element is a projection."""
    if isinstance(B, int):
        B = powerset(B)
    return LeftRestrictionMonoid(FiniteMonoid(B.meet, B.top), tuple(range(B.size)), B.bottom)


def trivial_plus(M: FiniteMonoid) -> LeftRestrictionMonoid:
    """Any monoid with ``m+ = 1`` for all m."""
    return LeftRestrictionMonoid(M, (M.identity,) * M.size)


def with_zero(M: FiniteMonoid) -> FiniteMonoid:
    """Adjoin a new absorbing element, indexed last."""
    n = M.size
    rows = [list(r) + [n] for r in M.mult] + [[n] * (n + 1)]
    return FiniteMonoid(rows, M.identity)


def symmetric_group(n: int) -> FiniteMonoid:
    perms = list(permutations(range(n)))
    index = {f: i for i, f in enumerate(perms)}
    mult = [[index[tuple(g[f[x]] for x in range(n))] for g in perms] for f in perms]
    return FiniteMonoid(mult, index[tuple(range(n))])
