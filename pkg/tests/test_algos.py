from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hopfgal.algos import (
    BoundError,
    all_subgroups,
    are_conjugate,
    aut_stabilizing,
    automorphism_group,
    center,
    centralizer,
    closure,
    conjugates,
    derived_series,
    find_isomorphism,
    is_isomorphic,
    is_solvable,
    normalizer,
    subgroup_class_reps,
)
from hopfgal.holomorph import holomorph, left_regular
from hopfgal.perm import PermGroup, cyclic_group, from_cycles, inv, mul, order_of, symmetric_group
from hopfgal.zoo import group_type, make_2p2


def _s3_regular():
    return group_type("D6", 6).construct()


def test_all_subgroups_c6():
    assert len(all_subgroups(cyclic_group(6))) == 4


def test_all_subgroups_s3():
    assert len(all_subgroups(_s3_regular())) == 6


def test_all_subgroups_order18_brute_force():
    G = make_2p2(3, "generalized_dihedral")
    els = G.elements_raw
    seen = set()
    for x in els:
        seen.add(frozenset(closure([x], 18)))
    for k in (2, 3):
        for xs in combinations(els, k):
            seen.add(frozenset(closure(list(xs), 18)))
    # every subgroup of this group is generated by at most three elements
    # (the whole group needs three: two reflections only generate a D6)
    assert {frozenset(H.elements_raw) for H in all_subgroups(G)} == seen


def test_class_reps_s3():
    reps = subgroup_class_reps(_s3_regular())
    assert [size for _, size in reps] == [1, 3, 1, 1]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_class_reps_cyclic_prime(p):
    assert len(subgroup_class_reps(cyclic_group(p))) == 2


def test_class_reps_hol_c6_partition():
    H = holomorph(cyclic_group(6))
    reps = subgroup_class_reps(H)
    subs = all_subgroups(H)
    assert sum(size for _, size in reps) == len(subs)
    # brute-force conjugacy partition of all subgroups
    classes = []
    for K in subs:
        for c in classes:
            if are_conjugate(H, c[0], K) is not None:
                c.append(K)
                break
        else:
            classes.append([K])
    assert len(classes) == len(reps)
    assert sorted(len(c) for c in classes) == sorted(size for _, size in reps)


@pytest.mark.parametrize("n,count,total", [(4, 11, 30), (5, 19, 156), (6, 56, 1455)])
def test_symmetric_subgroup_counts(n, count, total):
    reps = subgroup_class_reps(symmetric_group(n), bound=1000)
    assert len(reps) == count
    assert sum(s for _, s in reps) == total


def test_bound_enforced():
    with pytest.raises(BoundError):
        subgroup_class_reps(symmetric_group(6), bound=100)


def test_order_filter():
    reps = subgroup_class_reps(symmetric_group(5), orders=[20, 60])
    assert sorted(H.order() for H, _ in reps) == [20, 60]


def test_conjugator_identity_case():
    S = symmetric_group(4)
    H = PermGroup([from_cycles(4, [(1, 2)])])
    c = are_conjugate(S, H, H)
    assert c is not None and c.is_identity()


def test_point_stabilizers_conjugate():
    S = symmetric_group(5)
    A, B = S.point_stabilizer(1), S.point_stabilizer(4)
    c = are_conjugate(S, A, B)
    assert c is not None
    conj = frozenset(mul(mul(c.t, x), inv(c.t)) for x in A.elements_raw)
    assert conj == B.element_set


def test_different_orders_not_conjugate():
    S = symmetric_group(3)
    assert are_conjugate(S, PermGroup([from_cycles(3, [(1, 2)])]), PermGroup([from_cycles(3, [(1, 2, 3)])])) is None


def test_normalizer_and_conjugates():
    S = symmetric_group(4)
    V = PermGroup([from_cycles(4, [(1, 2), (3, 4)]), from_cycles(4, [(1, 3), (2, 4)])])
    assert normalizer(S, V).order() == 24
    C = PermGroup([from_cycles(4, [(1, 2, 3, 4)])])
    assert normalizer(S, C).order() == 8
    assert len(conjugates(S, C)) == 3


def test_center_centralizer_derived():
    S = symmetric_group(4)
    assert center(S).order() == 1
    D = group_type("C3xD6", 18).construct()
    assert center(D).order() == 3
    assert center(group_type("D18", 18).construct()).order() == 1
    assert center(make_2p2(3, "generalized_dihedral")).order() == 1
    assert [H.order() for H in derived_series(S)] == [24, 12, 4, 1]
    assert is_solvable(S) and not is_solvable(symmetric_group(5))
    x = PermGroup([from_cycles(4, [(1, 2, 3, 4)])])
    assert centralizer(S, x).order() == 4


def test_iso_cyclic_different_generators():
    A = PermGroup([from_cycles(12, [tuple(range(1, 13))])])
    B = PermGroup([from_cycles(12, [(1, 2, 3, 4), (5, 6, 7), (8, 9, 10)])])
    assert B.order() == 12
    f = find_isomorphism(A, B)
    assert f is not None and f.is_bijective()


def test_iso_c4_vs_klein():
    assert not is_isomorphic(cyclic_group(4), group_type("C2xC2", 4).construct())


def test_iso_d18_regular_images():
    D = group_type("D18", 18).construct()
    L = left_regular(D).image
    R = PermGroup([from_cycles(18, [tuple(range(1, 10)), tuple(range(10, 19))]),
                   from_cycles(18, [(1, 10)] + [(1 + i, 19 - i) for i in range(1, 9)])])
    assert R.order() == 18
    for target in (L, R):
        f = find_isomorphism(D, target)
        assert f is not None
        x = next(x for x in D.elements_raw if order_of(x) == 9)
        assert order_of(f(x)) == 9


def test_iso_is_homomorphism():
    A = group_type("Dic3", 12).construct()
    B = PermGroup([from_cycles(12, [(1, 2, 3, 4, 5, 6), (7, 8, 9, 10, 11, 12)]),
                   from_cycles(12, [(1, 7, 4, 10), (2, 12, 5, 9), (3, 11, 6, 8)])])
    assert B.order() == 12
    f = find_isomorphism(A, B)
    assert f is not None
    m = f.mapping
    for x in A.elements_raw:
        for y in A.elements_raw:
            assert m[mul(x, y)] == mul(m[x], m[y])


@pytest.mark.parametrize("label,order", [("C18", 6), ("D18", 54), ("C3xC6", 48), ("C3xD6", 12),
                                         ("(C3xC3):C2", 432)])
def test_aut_orders_18(label, order):
    assert automorphism_group(group_type(label, 18).construct()).order == order


def test_aut_s5():
    assert automorphism_group(symmetric_group(5)).order == 120


def test_aut_elements_are_distinct_automorphisms():
    G = group_type("D8", 8).construct()
    A = automorphism_group(G)
    keys = {a.key() for a in A.autos}
    assert len(keys) == A.order == 8
    for a in A.autos:
        assert a.is_bijective()


def test_aut_stabilizing_trivial_and_whole():
    G = group_type("A4", 12).construct()
    A = automorphism_group(G)
    assert len(aut_stabilizing(G, PermGroup([], G.degree), A)) == A.order
    assert len(aut_stabilizing(G, G, A)) == A.order


def test_aut_stabilizing_s3_c2():
    G = _s3_regular()
    t = next(x for x in G.elements_raw if order_of(x) == 2)
    C2 = PermGroup([t], 6)
    assert len(aut_stabilizing(G, C2)) == 2


@settings(max_examples=40)
@given(st.sampled_from([("C12", 12), ("A4", 12), ("D8", 8), ("Q8", 8), ("C3xC3", 9), ("D10", 10)]),
       st.permutations(range(12)))
def test_iso_to_relabelled_copy(case, perm):
    label, order = case
    G = group_type(label, order).construct()
    n = G.degree
    sigma = tuple(x for x in perm if x < n)
    si = inv(sigma)
    H = PermGroup([mul(mul(sigma, g), si) for g in G.gens_raw], n)
    f = find_isomorphism(G, H)
    assert f is not None and f.is_bijective()
