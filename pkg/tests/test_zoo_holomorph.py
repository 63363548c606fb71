from itertools import combinations

import pytest

from hopfgal.algos import automorphism_group, center, is_isomorphic
from hopfgal.holomorph import holomorph, holomorph_data, left_regular, opposite, right_regular
from hopfgal.perm import PermError, cyclic_group, mul
from hopfgal.zoo import (
    TWO_P2_KINDS,
    UnsupportedOrder,
    automorphism_formula,
    evaluate_word,
    group_type,
    groups_of_order,
    make_2p2,
    two_p2_label,
)


@pytest.mark.parametrize("g,count", [(4, 2), (6, 2), (8, 5), (9, 2), (12, 5), (13, 1), (14, 2), (15, 1)])
def test_type_counts(g, count):
    assert len(groups_of_order(g)) == count


def test_order_18_labels():
    assert [t.label for t in groups_of_order(18)] == ["C18", "C3xC6", "C3xD6", "(C3xC3):C2", "D18"]


@pytest.mark.parametrize("g", [4, 6, 8, 9, 10, 12, 14, 18, 22, 26])
def test_types_regular_and_distinct(g):
    types = groups_of_order(g)
    groups = [t.construct() for t in types]
    for t, G in zip(types, groups):
        assert G.is_regular() and G.order() == g
        assert t.relators_hold()
    for A, B in combinations(groups, 2):
        assert not is_isomorphic(A, B)


def test_unsupported_orders():
    with pytest.raises(UnsupportedOrder):
        groups_of_order(16)
    with pytest.raises(UnsupportedOrder):
        groups_of_order(50)  # above the default degree cap
    assert len(groups_of_order(50, degree_cap=50)) == 5


@pytest.mark.parametrize("kind,zorder", [("dihedral", 1), ("dihedral_x_cyclic", 3), ("generalized_dihedral", 1),
                                         ("cyclic", 18), ("abelian", 18)])
def test_2p2_centers(kind, zorder):
    assert center(make_2p2(3, kind)).order() == zorder


def test_make_2p2_rejects_bad_p():
    with pytest.raises(PermError):
        make_2p2(4, "cyclic")
    with pytest.raises(PermError):
        make_2p2(2, "cyclic")


def test_evaluate_word():
    t = group_type("D8", 8)
    gens = t.named_generators()
    r, s = gens["r"], gens["s"]
    assert evaluate_word("srs", gens, 8) == evaluate_word("R", gens, 8)
    assert evaluate_word("r^4", gens, 8).is_identity()
    assert (s * r * s) == r.inverse()


@pytest.mark.parametrize("p", [3, 5])
def test_aut_formula(p):
    for kind in TWO_P2_KINDS:
        G = make_2p2(p, kind, degree_cap=2 * p * p)
        if p == 5 and kind == "generalized_dihedral":
            continue  # covered by the acceptance suite (about 10 s)
        assert automorphism_group(G).order == automorphism_formula(p, kind), two_p2_label(p, kind)


# --- regular representations and holomorphs --------------------------------------

def test_left_right_abelian_equal():
    N = cyclic_group(5)
    assert left_regular(N).image.same_group(right_regular(N).image)


def test_left_right_s3():
    N = group_type("D6", 6).construct()
    L, R = left_regular(N).image, right_regular(N).image
    assert not L.same_group(R)
    assert all(mul(a, b) == mul(b, a) for a in L.gens_raw for b in R.gens_raw)


def test_d18_left_right_intersection():
    N = group_type("D18", 18).construct()
    L, R = left_regular(N).image, right_regular(N).image
    assert L.is_regular() and R.is_regular()
    assert len(L.element_set & R.element_set) == 1


@pytest.mark.parametrize("label,order", [("C18", 108), ("D18", 972), ("(C3xC3):C2", 7776), ("C3xC6", 864),
                                         ("C3xD6", 216)])
def test_hol_orders_18(label, order):
    assert holomorph(group_type(label, 18).construct()).order() == order


@pytest.mark.parametrize("label,g,order", [("C13", 13, 156), ("C14", 14, 84), ("D14", 14, 588), ("C15", 15, 120),
                                           ("A4", 12, 288), ("C12", 12, 48), ("Dic3", 12, 144)])
def test_hol_orders_small(label, g, order):
    assert holomorph(group_type(label, g).construct()).order() == order


def test_hol_point_stabilizer_is_aut():
    H = holomorph_data(group_type("Q8", 8).construct())
    assert H.group.point_stabilizer(1).order() == H.aut_order == 24
    assert H.regular.is_subgroup_of(H.group)


def test_opposite_examples():
    C6 = left_regular(cyclic_group(6)).image
    assert opposite(C6).same_group(C6)
    S3 = group_type("D6", 6).construct()
    assert opposite(left_regular(S3).image).same_group(right_regular(S3).image)
    D = group_type("D18", 18).construct()
    assert opposite(right_regular(D).image).same_group(left_regular(D).image)


def test_opposite_requires_regular():
    with pytest.raises(PermError):
        opposite(holomorph(cyclic_group(5)))


def test_degree_cap():
    with pytest.raises(PermError):
        left_regular(cyclic_group(40))
