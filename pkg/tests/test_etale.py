from functools import cache
from itertools import product

import pytest

from lrmkit.actions import (
    SupportedAction,
    check_action,
    disjoint_union,
    enumerate_actions,
    enumerate_homs,
    principal_action,
    projection_action,
)
from lrmkit.etale import (
    NotEtale,
    all_decompositions,
    check_boolean_inverse_monoid,
    check_category_iso,
    check_inv_supported,
    check_partial_units,
    check_unit_compatibility,
    extend_action,
    inverse_view,
    is_etale,
    non_etale_example,
    partial_units,
    restrict_action,
)
from lrmkit.core import StructureError
from lrmkit.generators import pt
from lrmkit.restriction import NotBoolean, as_boolean, check_boolean_lrm, right_compatible

from helpers import boolean_lrm, pt2, pt2_actions, pt3, sym_inv2, t2
from oracles import count_partial_injections, label_to_dict


def _is_injective(label) -> bool:
    vals = [v for v in label if v is not None]
    return len(vals) == len(set(vals))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_partial_units_of_pt_are_partial_injections(n):
    S = pt2() if n == 2 else pt3() if n == 3 else pt(1)
    U = partial_units(S)
    assert len(U.elements) == count_partial_injections(n)
    assert all(_is_injective(S.label(a)) for a in U.elements)
    assert check_partial_units(U).ok


def test_projections_are_their_own_inverses():
    S = pt3()
    U = partial_units(S)
    for e in S.projections:
        assert e in U and U.inverse(e) == e


def test_boolean_algebra_is_all_units():
    for k in (1, 2, 3):
        S = boolean_lrm(k)
        assert len(partial_units(S).elements) == S.size


def test_inverse_witness_is_the_inverse_partial_map():
    S = pt3()
    U = partial_units(S)
    for a, b in zip(U.elements, U.inverse_witness):
        f, g = label_to_dict(S.label(a)), label_to_dict(S.label(b))
        assert g == {v: k for k, v in f.items()}


def test_inverse_view_is_a_boolean_inverse_monoid():
    V = inverse_view(pt2())
    assert V.lrm.size == 7
    assert check_boolean_inverse_monoid(V.lrm).ok
    assert check_boolean_inverse_monoid(sym_inv2()).ok
    assert check_boolean_inverse_monoid(inverse_view(pt3()).lrm).ok


def test_full_compatibility_matches_union_being_injective():
    S = pt3()
    V = inverse_view(S)
    for s in range(V.lrm.size):
        for t in range(V.lrm.size):
            f, g = label_to_dict(S.label(V.elems[s])), label_to_dict(S.label(V.elems[t]))
            agree = all(f[x] == g[x] for x in f.keys() & g.keys())
            union = {**f, **g}
            expected = agree and len(set(union.values())) == len(union)
            assert V.compatible(s, t) == expected
            if expected:
                assert label_to_dict(S.label(V.elems[V.join(s, t)])) == union


def test_inverse_monoid_check_flags_pt2():
    rep = check_boolean_inverse_monoid(pt2())
    assert "every element a partial unit" in rep.failed()
    assert rep.reverify()


def test_inverse_view_needs_zero():
    with pytest.raises(NotBoolean):
        inverse_view(t2())


@pytest.mark.parametrize("S", [pt2(), pt3(), boolean_lrm(2)], ids=["pt2", "pt3", "bool2"])
def test_etale_monoids(S):
    r = is_etale(S)
    assert r.ok and r.witness is None
    B = as_boolean(S)
    U = partial_units(S)
    for a, d in r.decompositions.items():
        assert all(u in U for u in d)
        assert B.join_all(d) == a


def test_pt2_decomposition_sizes_are_domain_sizes():
    S = pt2()
    r = is_etale(S)
    for a, d in r.decompositions.items():
        f = label_to_dict(S.label(a))
        if _is_injective(S.label(a)):
            assert len(d) == 1
        else:
            assert len(d) == len(f)


def test_non_etale_example():
    S = non_etale_example()
    assert S.size == 3 and check_boolean_lrm(S).ok
    r = is_etale(S)
    assert not r.ok and r.witness is not None
    assert r.witness not in partial_units(S)
    V = inverse_view(S)
    A = restrict_action(projection_action(as_boolean(S)), V)
    with pytest.raises(NotEtale):
        extend_action(A, S)


def test_all_decompositions_are_joins_of_units():
    S = pt3()
    B = as_boolean(S)
    U = partial_units(S)
    a = S.index_of((0, 0, 0))
    decs = all_decompositions(S, a, max_parts=3)
    assert (a,) not in decs
    assert len(decs) == 1 and len(decs[0]) == 3
    assert all(B.join_all(d) == a and all(u in U for u in d) for d in decs)
    b = S.index_of((0, 0, None))
    decs = all_decompositions(S, b)
    assert [sorted((S.label(u) for u in d), key=str) for d in decs] == [
        [(0, None, None), (None, 0, None)]]


@cache
def _restrictions():
    S = pt2()
    B = as_boolean(S)
    V = inverse_view(S)
    acts = [A for _, A in pt2_actions(True)] + list(enumerate_actions(B, 4))
    return S, B, V, acts


def test_restrictions_pass_inverse_axioms():
    _, _, V, acts = _restrictions()
    for A in acts:
        R = restrict_action(A, V)
        assert check_inv_supported(R).ok


def test_projection_action_of_inverse_view_passes():
    V = inverse_view(pt2())
    assert check_inv_supported(projection_action(V)).ok


def test_two_minima_fail_e3():
    V = inverse_view(pt2())
    T = projection_action(V)
    U = disjoint_union(T, T)
    bad = SupportedAction(U.S, U.act, U.support, V, U.labels)
    rep = check_inv_supported(bad)
    assert rep.failed() == ["E3 minimum exists"]
    assert rep.reverify()


def test_unit_compatibility():
    S, _, V, acts = _restrictions()
    for A in acts:
        assert check_unit_compatibility(A, V) == (True, None)


def test_extend_recovers_table_identically():
    S, B, V, acts = _restrictions()
    for A in acts:
        assert extend_action(restrict_action(A, V), B) == A


def test_extension_of_partial_unit_rows_is_unchanged():
    S, B, V, acts = _restrictions()
    for A in acts:
        X = extend_action(restrict_action(A, V), B)
        for a in V.elems:
            assert X.act[a] == A.act[a]


def test_extension_preserves_joins():
    S, B, V, acts = _restrictions()
    for A in acts:
        X = extend_action(restrict_action(A, V), B)
        for a, b in product(range(S.size), repeat=2):
            if right_compatible(S, a, b):
                j = B.join(a, b)
                for y in range(X.size):
                    assert X.act[j][y] == X.lub(X.act[a][y], X.act[b][y])
        assert check_action(X).ok


def test_extend_rejects_action_over_wrong_structure():
    with pytest.raises(StructureError):
        extend_action(projection_action(as_boolean(pt2())), pt2())


def test_category_iso_by_enumeration():
    rep = check_category_iso(pt2(), max_carrier=4)
    assert rep.ok, rep.summary()


def test_hom_counts_agree_across_categories():
    S, B, V, acts = _restrictions()
    for A, C in product(acts, repeat=2):
        assert len(enumerate_homs(A, C)) == len(
            enumerate_homs(restrict_action(A, V), restrict_action(C, V)))


def test_category_iso_on_principal_fixture():
    B = as_boolean(pt2())
    rep = check_category_iso(pt2(), [principal_action(B, pt2().identity)])
    assert rep.ok


def test_category_iso_warns_on_empty_fixtures():
    with pytest.warns(UserWarning, match="vacuous"):
        rep = check_category_iso(pt2(), [])
    assert rep.ok
