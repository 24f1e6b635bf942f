import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrmkit.core import FiniteMonoid, StructureError
from lrmkit.generators import MAX_SIZE, boolean_as_lrm, pt, sym_inv, trivial_plus, cyclic_group
from lrmkit.restriction import (
    LeftRestrictionMonoid,
    NoJoin,
    NotBoolean,
    NotCompatible,
    as_boolean,
    boolean_structure,
    check_boolean_lrm,
    check_lrm,
    check_lrm_hom,
    factorizable_part,
    is_factorizable,
    least_upper_bound,
    natural_leq,
    right_compatible,
    sub_lrm,
    total_cover,
)

from helpers import pt2, pt3, sym_inv2, t2
from oracles import (
    compose,
    count_partial_injections,
    count_partial_maps,
    dict_to_label,
    label_to_dict,
    lrm_failures,
    lub_by_definition,
    natural_order,
)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pt_sizes_and_composition(n):
    S = pt(n)
    assert S.size == count_partial_maps(n)
    for a in range(S.size):
        f = label_to_dict(S.label(a))
        assert label_to_dict(S.label(S.plus[a])) == {x: x for x in f}
        for b in range(S.size):
            g = label_to_dict(S.label(b))
            assert S.label(S.mult[a][b]) == dict_to_label(compose(f, g), n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sym_inv_sizes(n):
    assert sym_inv(n).size == count_partial_injections(n)


def test_projection_and_total_counts():
    assert (len(pt2().projections), len(pt2().totals)) == (4, 4)
    assert (len(pt3().projections), len(pt3().totals)) == (8, 27)
    assert (len(sym_inv2().projections), len(sym_inv2().totals)) == (4, 2)


def test_generator_cap():
    assert MAX_SIZE == 4096
    with pytest.raises(StructureError):
        pt(5)


@pytest.mark.parametrize("S", [pt2(), pt3(), sym_inv2(), t2(), boolean_as_lrm(2),
                               trivial_plus(cyclic_group(3))], ids=str)
def test_lrm_laws_agree_with_oracle(S):
    rep = check_lrm(S)
    assert rep.ok
    assert lrm_failures(S.mult, S.plus, S.identity, S.zero) == set()


def test_natural_order_matches_existential_definition():
    for S in (pt2(), pt3(), sym_inv2()):
        assert np.array_equal(S.leq_matrix, natural_order(S.mult, S.plus))
        assert natural_leq(S, S.zero, S.identity)


def test_natural_order_is_a_partial_order():
    L = pt3().leq_matrix
    n = L.shape[0]
    assert L.diagonal().all()
    assert not (L & L.T & ~np.eye(n, dtype=bool)).any()
    assert ((L.astype(int) @ L.astype(int) > 0) <= L).all()


def test_pt_boolean_and_sym_inv_not():
    assert check_boolean_lrm(pt2()).ok
    assert check_boolean_lrm(pt3()).ok
    rep = check_boolean_lrm(sym_inv2())
    assert rep.failed() == ["B2"]
    assert rep.reverify()
    a, b = rep.witness("B2")
    assert right_compatible(sym_inv2(), a, b)
    with pytest.raises(NotBoolean):
        boolean_structure(sym_inv2())


@pytest.mark.parametrize("k", [1, 2, 3])
def test_boolean_algebra_as_lrm_is_boolean(k):
    S = boolean_as_lrm(k)
    assert check_lrm(S).ok
    assert check_boolean_lrm(S).ok
    assert len(S.projections) == S.size


def test_boolean_lrm_needs_zero():
    with pytest.raises(NotBoolean):
        check_boolean_lrm(t2())


def test_joins_are_least_upper_bounds():
    S = pt2()
    B = as_boolean(S)
    L = natural_order(S.mult, S.plus)
    for a in range(S.size):
        for b in range(S.size):
            if right_compatible(S, a, b):
                assert B.join(a, b) == lub_by_definition(L, [a, b])
            else:
                with pytest.raises(NotCompatible):
                    B.join(a, b)


def test_join_of_partial_maps_is_union():
    S = pt3()
    B = as_boolean(S)
    for a in range(S.size):
        for b in range(S.size):
            if B.joinable(a, b):
                f, g = label_to_dict(S.label(a)), label_to_dict(S.label(b))
                assert label_to_dict(S.label(B.join(a, b))) == {**f, **g}


def test_projection_complement_is_set_complement():
    S = pt3()
    B = as_boolean(S)
    for e in S.projections:
        dom = set(label_to_dict(S.label(e)))
        assert set(label_to_dict(S.label(B.comp(e)))) == {0, 1, 2} - dom


def test_total_cover_extends_by_identity():
    S = pt2()
    for s in range(S.size):
        u = total_cover(S, s)
        assert u in S.totals and natural_leq(S, s, u)
        f = label_to_dict(S.label(s))
        assert label_to_dict(S.label(u)) == {x: f.get(x, x) for x in range(2)}


def test_least_upper_bound_of_incomparable_totals_is_none():
    S = pt2()
    t1, t2_ = S.totals[0], S.totals[1]
    assert least_upper_bound(S, [t1, t2_]) is None


def test_factorizability():
    for S in (pt2(), pt3(), sym_inv2(), t2()):
        assert is_factorizable(S) == (True, None)
    # projections only
    S = sub_lrm(pt2(), [x for x in range(9) if pt2().label(x) in
                        [(None, None), (0, None), (0, 1), (None, 1)]])
    assert check_lrm(S).ok
    assert is_factorizable(S) == (True, None)


def test_non_factorizable_part():
    S = pt2()
    shape = [(0, 1), (None, None), (0, None), (None, 1), (1, None)]
    T = sub_lrm(S, sorted(S.index_of(lab) for lab in shape))
    assert check_lrm(T).ok
    ok, s = is_factorizable(T)
    assert not ok and T.label(s) == (1, None)
    F, elems = factorizable_part(T)
    assert {T.label(x) for x in elems} == set(shape[:4])
    assert check_lrm(F).ok and is_factorizable(F)[0]


def test_lrm_hom_identity_and_failure():
    S = pt2()
    ident = tuple(range(S.size))
    assert check_lrm_hom(S, S, ident, boolean_mode=True) == (True, None)
    const = tuple([S.identity] * S.size)
    assert check_lrm_hom(S, S, const) == (True, None)
    ok, w = check_lrm_hom(S, S, const, boolean_mode=True)
    assert not ok and w[0] == "zero"
    swap = tuple(S.index_of(lab[::-1]) for lab in S.labels)
    ok, w = check_lrm_hom(S, S, swap)
    assert not ok


def test_no_join_raised_for_missing_join():
    S = sym_inv2()
    from lrmkit.restriction import BooleanLRM, _proj_algebra
    from lrmkit.core import Checker
    B = BooleanLRM(S, _proj_algebra(S, Checker("x")), {})
    a, b = check_boolean_lrm(S).witness("B2")
    with pytest.raises(NoJoin):
        B.join(a, b)


def _closure(S, seeds):
    elems = {S.identity} | set(seeds)
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            if S.plus[a] not in elems:
                elems.add(S.plus[a])
                changed = True
            for b in list(elems):
                c = S.mult[a][b]
                if c not in elems:
                    elems.add(c)
                    changed = True
    return sorted(elems)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 63), max_size=3))
def test_sub_lrms_of_pt3_satisfy_the_laws(seeds):
    S = pt3()
    T = sub_lrm(S, _closure(S, seeds))
    assert check_lrm(T).ok
    assert lrm_failures(T.mult, T.plus, T.identity) == set()


def test_lrm_rejects_bad_tables():
    M = FiniteMonoid([[0, 1], [1, 1]], 0)
    with pytest.raises(StructureError):
        LeftRestrictionMonoid(M, (0, 5))
    with pytest.raises(StructureError):
        LeftRestrictionMonoid(M, (0,))
