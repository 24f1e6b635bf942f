"""Independent reference computations used to cross-check the library.

Nothing here calls the library's checkers or search routines; structures are
read only through their raw tables.
"""

from __future__ import annotations

from itertools import product
from math import comb, factorial

import numpy as np


# --------------------------------------------------------------------------
# partial maps as dicts


def label_to_dict(label: tuple) -> dict[int, int]:
    return {x: v for x, v in enumerate(label) if v is not None}


def compose(f: dict, g: dict) -> dict:
    """First f, then g."""
    return {x: g[y] for x, y in f.items() if y in g}


def dict_to_label(f: dict, n: int) -> tuple:
    return tuple(f.get(x) for x in range(n))


def count_partial_maps(n: int) -> int:
    return (n + 1) ** n


def count_partial_injections(n: int) -> int:
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


# --------------------------------------------------------------------------
# law scans written out longhand


def lrm_failures(mult, plus, identity, zero=None) -> set[str]:
    n = len(mult)
    bad = set()
    R = range(n)
    for a in R:
        for b in R:
            for c in R:
                if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                    bad.add("associativity")
    for a in R:
        if mult[identity][a] != a:
            bad.add("left identity")
        if mult[a][identity] != a:
            bad.add("right identity")
        if plus[plus[a]] != plus[a]:
            bad.add("LR1")
        if mult[plus[a]][a] != a:
            bad.add("LR4")
        for b in R:
            e = mult[plus[a]][plus[b]]
            if plus[e] != e:
                bad.add("LR2")
            if e != mult[plus[b]][plus[a]]:
                bad.add("LR3")
            if plus[mult[a][b]] != plus[mult[a][plus[b]]]:
                bad.add("LR5")
            if mult[a][plus[b]] != mult[plus[mult[a][b]]][a]:
                bad.add("LR6")
    if zero is not None:
        if plus[zero] != zero:
            bad.add("zero is a projection")
        if any(mult[zero][a] != zero or mult[a][zero] != zero for a in R):
            bad.add("zero absorbing")
    return bad


def action_failures(mult, plus, identity, act, support) -> set[str]:
    n_s, n_x = len(mult), len(support)
    bad = set()
    for x in range(n_x):
        if act[identity][x] != x:
            bad.add("action identity")
        if plus[support[x]] != support[x]:
            bad.add("support is a projection")
        if act[support[x]][x] != x:
            bad.add("E1")
        for s in range(n_s):
            if support[act[s][x]] != plus[mult[s][support[x]]]:
                bad.add("E2")
            for t in range(n_s):
                if act[mult[s][t]][x] != act[s][act[t][x]]:
                    bad.add("action composition")
    return bad


def em_failures(Y) -> set[str]:
    """(MPA1)-(MPA6) read off the raw tables of an [E|M]-set."""
    P = Y.pair
    nE, nM, n = P.E.size, P.M.size, Y.size
    m, meet, star = P.M.mult, P.E.meet, P.act
    one, top = P.M.identity, P.E.top
    eq = [[[Y.eq[e].blocks[x] == Y.eq[e].blocks[y] for y in range(n)] for x in range(n)]
          for e in range(nE)]
    cg = [[[P.cong[e].blocks[u] == P.cong[e].blocks[v] for v in range(nM)] for u in range(nM)]
          for e in range(nE)]
    act = Y.act
    bad = set()
    for x in range(n):
        if act[one][x] != x:
            bad.add("MPA1 identity")
        for u in range(nM):
            for v in range(nM):
                if act[m[u][v]][x] != act[u][act[v][x]]:
                    bad.add("MPA1 composition")
    for x in range(n):
        for y in range(n):
            if eq[top][x][y] and x != y:
                bad.add("MPA3")
            for e in range(nE):
                for f in range(nE):
                    if meet[f][e] == f and eq[e][x][y] and not eq[f][x][y]:
                        bad.add("MPA4")
                if eq[e][x][y]:
                    for u in range(nM):
                        if not eq[star[u][e]][act[u][x]][act[u][y]]:
                            bad.add("MPA6")
    for e in range(nE):
        for u in range(nM):
            for v in range(nM):
                if cg[e][u][v]:
                    for x in range(n):
                        if not eq[e][act[u][x]][act[v][x]]:
                            bad.add("MPA5")
    return bad


def pair_failures(P) -> set[str]:
    """(MP1)-(MP12) of a matched pair, from its raw tables."""
    nE, nM = P.E.size, P.M.size
    m, act, meet = P.M.mult, P.act, P.E.meet
    one, top = P.M.identity, P.E.top
    same = [[[c.blocks[u] == c.blocks[v] for v in range(nM)] for u in range(nM)] for c in P.cong]
    bad = set()
    for e in range(nE):
        if act[one][e] != e:
            bad.add("MP1 identity")
        for u in range(nM):
            for v in range(nM):
                if act[m[u][v]][e] != act[u][act[v][e]]:
                    bad.add("MP1 composition")
    for u in range(nM):
        if act[u][top] != top:
            bad.add("MP2")
        for e in range(nE):
            for f in range(nE):
                if act[u][meet[e][f]] != meet[act[u][e]][act[u][f]]:
                    bad.add("MP3")
    for e in range(nE):
        for u in range(nM):
            for v in range(nM):
                if not same[e][u][v]:
                    continue
                for k in range(nM):
                    if not same[e][m[u][k]][m[v][k]]:
                        bad.add("MP4")
                    if not same[act[k][e]][m[k][u]][m[k][v]]:
                        bad.add("MP7")
                for f in range(nE):
                    if meet[f][e] == f and not same[f][u][v]:
                        bad.add("MP6")
                    if meet[e][act[u][f]] != meet[e][act[v][f]]:
                        bad.add("MP8")
    if any(same[top][u][v] and u != v for u in range(nM) for v in range(nM)):
        bad.add("MP5")
    if P.boolean:
        join, comp, bottom = P.E.join, P.E.complement, P.E.bottom
        if not all(same[bottom][u][v] for u in range(nM) for v in range(nM)):
            bad.add("MP9")
        for e in range(nE):
            for f in range(nE):
                for u in range(nM):
                    if act[u][join[e][f]] != join[act[u][e]][act[u][f]]:
                        bad.add("MP10")
                    for v in range(nM):
                        if same[e][u][v] and same[f][u][v] and not same[join[e][f]][u][v]:
                            bad.add("MP11")
            for u in range(nM):
                for v in range(nM):
                    if not any(same[e][p][u] and same[comp[e]][p][v] for p in range(nM)):
                        bad.add("MP12")
    return bad


# --------------------------------------------------------------------------
# order


def natural_order(mult, plus) -> np.ndarray:
    """``s <= t`` iff ``s = e t`` for some projection ``e``."""
    n = len(mult)
    proj = [e for e in range(n) if plus[e] == e]
    out = np.zeros((n, n), dtype=bool)
    for t in range(n):
        for e in proj:
            out[mult[e][t], t] = True
    return out


def lub_by_definition(leq: np.ndarray, xs) -> int | None:
    n = leq.shape[0]
    ub = [u for u in range(n) if all(leq[x, u] for x in xs)]
    least = [u for u in ub if all(leq[u, v] for v in ub)]
    return least[0] if least else None


# --------------------------------------------------------------------------
# homomorphisms by brute force


def all_maps(n: int, k: int) -> np.ndarray:
    """Every map ``{0..n-1} -> {0..k-1}`` as rows of an array, lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if k == 0:
        return np.zeros((0, n), dtype=np.int64)
    grids = np.indices((k,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def brute_homs(A, B, boolean: bool = False) -> list[tuple[int, ...]]:
    """Filter all maps by support preservation and equivariance (no pruning)."""
    maps = all_maps(A.size, B.size)
    sa = np.asarray(A.support, dtype=np.int64)
    sb = np.asarray(B.support, dtype=np.int64)
    keep = (sb[maps] == sa[None, :]).all(axis=1) if A.size else np.ones(len(maps), bool)
    maps = maps[keep]
    for s in range(A.S.size):
        if not len(maps):
            break
        ra = np.asarray(A.act[s], dtype=np.int64)
        rb = np.asarray(B.act[s], dtype=np.int64)
        keep = (maps[:, ra] == rb[maps]).all(axis=1) if A.size else np.ones(len(maps), bool)
        maps = maps[keep]
    out = [tuple(int(v) for v in row) for row in maps]
    if boolean and A.size:
        out = [f for f in out if _preserves_boolean(A, B, f)]
    return out


def _action_leq(A):
    n = A.size
    return np.array([[A.act[A.support[x]][y] == x for y in range(n)] for x in range(n)],
                    dtype=bool).reshape(n, n)


def _preserves_boolean(A, B, f) -> bool:
    la, lb = _action_leq(A), _action_leq(B)
    za = lub_by_definition(la, [])
    zb = lub_by_definition(lb, [])
    if f[za] != zb:
        return False
    for x in range(A.size):
        for y in range(A.size):
            if A.act[A.support[x]][y] == A.act[A.support[y]][x]:
                if f[lub_by_definition(la, [x, y])] != lub_by_definition(lb, [f[x], f[y]]):
                    return False
    return True


def brute_em_homs(Y, Z) -> list[tuple[int, ...]]:
    out = []
    for f in product(range(Z.size), repeat=Y.size):
        ok = all(f[Y.act[u][x]] == Z.act[u][f[x]]
                 for u in range(Y.pair.M.size) for x in range(Y.size))
        ok = ok and all(Z.eq[e].blocks[f[x]] == Z.eq[e].blocks[f[y]]
                        for e in range(Y.pair.E.size)
                        for x in range(Y.size) for y in range(Y.size)
                        if Y.eq[e].blocks[x] == Y.eq[e].blocks[y])
        if ok:
            out.append(f)
    return out


def box_pairs(A, B) -> list[tuple[int, int]]:
    return [(x, y) for x in range(A.size) for y in range(B.size)
            if A.support[x] == B.support[y]]
