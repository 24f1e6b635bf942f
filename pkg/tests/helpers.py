"""Shared fixture structures, built once per session."""

from __future__ import annotations

from functools import cache

from lrmkit.actions import (
    disjoint_union,
    empty_action,
    enumerate_actions,
    principal_action,
    projection_action,
)
from lrmkit.generators import boolean_as_lrm, full_transformation, pt, sym_inv, trivial_plus


@cache
def pt2():
    return pt(2)


@cache
def pt3():
    return pt(3)


@cache
def sym_inv2():
    return sym_inv(2)


@cache
def t2():
    """Trivial-plus monoid on the four maps of a 2-set."""
    return trivial_plus(full_transformation(2))


@cache
def boolean_lrm(k: int):
    return boolean_as_lrm(k)


@cache
def pt2_actions(boolean: bool) -> tuple:
    """Named pt(2) actions with at most five points (Boolean: those satisfying (E3)-(E7))."""
    S = pt2()
    base = S.boolean if boolean else S
    out = [("terminal", projection_action(base))]
    for e in S.projections:
        P = principal_action(base, e)
        if P.size <= 5:
            out.append((f"principal{e}", P))
    out.append(("point", enumerate_actions(base, 1)[0]))
    if not boolean:
        out.append(("terminal+point", disjoint_union(out[0][1], out[-1][1])))
    return tuple(out)


@cache
def t2_actions() -> tuple:
    S = t2()
    out = [(f"enum{n}.{i}", A) for n in (1, 2, 3) for i, A in enumerate(enumerate_actions(S, n))]
    reg = principal_action(S, S.identity)
    out.append(("regular", reg))
    out.append(("regular+point", disjoint_union(reg, enumerate_actions(S, 1)[0])))
    return tuple(out)


@cache
def factorizable_actions() -> tuple:
    """Factorizable actions used by the round-trip tests, with their Boolean flag."""
    out = []
    for S in (pt2(), pt3()):
        for base in (S, S.boolean):
            out.append(projection_action(base))
            out.append(principal_action(base, S.identity))
    S = t2()
    out.append(projection_action(S))
    out.append(principal_action(S, S.identity))
    out.append(empty_action(pt2()))
    return tuple(out)
