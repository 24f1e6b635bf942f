import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrmkit.core import (
    FiniteMonoid,
    Partition,
    SearchLimitExceeded,
    StructureError,
    as_table,
    check_boolean_algebra,
    check_monoid,
    check_right_congruence,
    check_semilattice,
    equivariant_maps,
    generating_set,
    submonoid_table,
)
from lrmkit.generators import (
    cyclic_group,
    full_transformation,
    powerset,
    pt,
    symmetric_group,
    with_zero,
)

from oracles import all_maps


def test_as_table_rejects_ragged_row():
    with pytest.raises(StructureError, match=r"t\[1\]"):
        as_table([[0, 1], [1]], 2, 2, 2, "t")


def test_as_table_rejects_out_of_range_and_bools():
    with pytest.raises(StructureError, match=r"t\[0\]\[1\] = 5"):
        as_table([[0, 5]], 1, 2, 2, "t")
    with pytest.raises(StructureError, match="not an integer"):
        as_table([[True]], 1, 1, 2, "t")


@pytest.mark.parametrize("M", [cyclic_group(5), full_transformation(3), symmetric_group(3),
                               with_zero(cyclic_group(3))])
def test_standard_monoids_pass(M):
    assert check_monoid(M).ok


def test_associativity_witness_is_lexicographically_least():
    rows = [list(r) for r in cyclic_group(3).mult]
    rows[1][1] = 0
    rep = check_monoid(FiniteMonoid(rows, 0))
    assert not rep.passed("associativity")
    w = rep.witness("associativity")
    brute = next((a, b, c) for a in range(3) for b in range(3) for c in range(3)
                 if rows[rows[a][b]][c] != rows[a][rows[b][c]])
    assert w == brute
    assert rep.reverify()


def test_violation_count_matches_brute_force():
    rows = [list(r) for r in full_transformation(2).mult]
    rows[2][3] = 0
    rep = check_monoid(FiniteMonoid(rows, full_transformation(2).identity))
    n = len(rows)
    expected = sum(rows[rows[a][b]][c] != rows[a][rows[b][c]]
                   for a in range(n) for b in range(n) for c in range(n))
    assert rep.violations["associativity"].count == expected


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_powerset_is_boolean(k):
    B = powerset(k)
    rep = check_boolean_algebra(B)
    assert rep.ok == (k > 0)
    if k == 0:
        assert rep.failed() == ["non-degenerate"]


def test_boolean_algebra_mutation_detected():
    B = powerset(2)
    comp = list(B.complement)
    comp[1] = 1
    from lrmkit.core import BooleanAlgebra
    bad = BooleanAlgebra(B.meet, B.join, comp, B.top, B.bottom)
    rep = check_boolean_algebra(bad)
    assert "complement meet" in rep.failed()
    assert rep.reverify()


def test_semilattice_of_powerset():
    assert check_semilattice(powerset(3).semilattice).ok


def test_partition_canonical_form():
    p = Partition((7, 7, 3, 7, 3))
    assert p.blocks == (0, 0, 2, 0, 2)
    assert p.reps == (0, 2)
    assert p.classes == ((0, 1, 3), (2, 4))
    assert Partition.identity(3).refines(Partition.universal(3))
    assert not Partition.universal(3).refines(Partition.identity(3))


@given(st.lists(st.integers(0, 4), min_size=1, max_size=12))
def test_partition_rep_is_least_member(ids):
    p = Partition(tuple(ids))
    for i in range(len(ids)):
        cls = [j for j in range(len(ids)) if ids[j] == ids[i]]
        assert p.rep(i) == min(cls)
        assert p.class_of(i) == tuple(cls)


def test_right_congruence_detection():
    M = cyclic_group(4)
    ok, _ = check_right_congruence(M, Partition.by_key(4, lambda a: a % 2))
    assert ok
    ok, w = check_right_congruence(M, Partition((0, 0, 1, 2)))
    assert not ok and w is not None


@pytest.mark.parametrize("M", [cyclic_group(6), full_transformation(3), pt(2).monoid,
                               symmetric_group(3)])
def test_generating_set_generates(M):
    gens = generating_set(M)
    reached, frontier = {M.identity}, [M.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = M.mult[x][g]
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    assert len(reached) == M.size


def test_submonoid_table_rejects_unclosed_subset():
    M = cyclic_group(4)
    assert submonoid_table(M, [0, 2]).size == 2
    with pytest.raises(StructureError):
        submonoid_table(M, [0, 1])


def _orbit_maps_by_brute_force(src, dst, n, k):
    out = []
    for row in all_maps(n, k):
        f = tuple(int(v) for v in row)
        if all(f[s[x]] == d[f[x]] for s, d in zip(src, dst) for x in range(n)):
            out.append(f)
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_equivariant_maps_match_brute_force(n, k, data):
    src = [data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)) for _ in range(2)]
    dst = [data.draw(st.lists(st.integers(0, k - 1), min_size=k, max_size=k)) for _ in range(2)]
    got = equivariant_maps(n, src, dst, [range(k)] * n)
    assert got == _orbit_maps_by_brute_force(src, dst, n, k)


def test_equivariant_maps_search_cap():
    with pytest.raises(SearchLimitExceeded):
        equivariant_maps(6, [], [], [range(6)] * 6, max_search=50)


def test_monoid_array_is_read_only():
    a = cyclic_group(3).array
    assert isinstance(a, np.ndarray)
    with pytest.raises(ValueError):
        a[0, 0] = 1
