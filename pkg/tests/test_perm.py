import pytest
from hypothesis import given, settings, strategies as st

from hopfgal.holomorph import holomorph, left_regular
from hopfgal.perm import (
    Perm,
    PermError,
    PermGroup,
    cyclic_group,
    format_cycles,
    from_cycles,
    mul,
    parse_perm,
    symmetric_group,
)
from hopfgal.zoo import group_type


def test_from_cycles_images():
    assert from_cycles(4, [(1, 2, 3, 4)]).images == (2, 3, 4, 1)


def test_empty_cycle_list_is_identity():
    p = from_cycles(5, [])
    assert p.is_identity() and p.degree == 5


def test_cycle_action_on_point():
    p = from_cycles(6, [(1, 2), (3, 4, 5)])
    assert p(3) == 4


def test_composition_applies_right_factor_first():
    a = from_cycles(3, [(1, 2)])
    b = from_cycles(3, [(2, 3)])
    assert (a * b)(2) == a(b(2)) == 3


def test_parse_and_format_roundtrip():
    p = parse_perm("(1,3,5)(2,4)", 6)
    assert format_cycles(p.t) == "(1,3,5)(2,4)"
    assert parse_perm("()", 3).is_identity()


@pytest.mark.parametrize("bad", ["(1,2", "(1,1)", "(0,2)", "(1,7)", "abc"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(PermError):
        parse_perm(bad, 6)


def test_not_a_permutation():
    with pytest.raises(PermError):
        Perm([1, 1, 2])


def test_inverse_and_order():
    p = from_cycles(7, [(1, 2, 3), (4, 5)])
    assert p.order() == 6
    assert (p * p.inverse()).is_identity()


def test_s4_order():
    G = PermGroup([from_cycles(4, [(1, 2)]), from_cycles(4, [(1, 2, 3, 4)])])
    assert G.order() == 24


def test_cyclic_seven_regular():
    G = PermGroup([from_cycles(7, [(1, 2, 3, 4, 5, 6, 7)])])
    assert G.order() == 7
    assert G.is_regular()
    assert G.orbit(1) == frozenset(range(1, 8))


def test_hol_d18_order():
    assert holomorph(group_type("D18", 18).construct()).order() == 972


def test_left_regular_c6_is_regular():
    assert left_regular(cyclic_group(6)).image.is_regular()


def test_point_stabilizer_s4():
    S = symmetric_group(4).point_stabilizer(1)
    assert S.order() == 6
    assert all(g(1) == 1 for g in S.generators)


def test_membership():
    A = PermGroup([from_cycles(4, [(1, 2, 3)]), from_cycles(4, [(2, 3, 4)])])
    assert A.order() == 12
    assert from_cycles(4, [(1, 2), (3, 4)]) in A
    assert from_cycles(4, [(1, 2)]) not in A


def test_degree_mismatch_rejected():
    with pytest.raises(PermError):
        PermGroup([from_cycles(3, [(1, 2)]), from_cycles(4, [(1, 2)])])


def test_elements_sorted_identity_first():
    G = symmetric_group(4)
    els = G.elements_raw
    assert els[0] == (0, 1, 2, 3)
    assert els == sorted(els) and len(set(els)) == 24


def _closure_size(gens, n):
    idt = tuple(range(n))
    seen = {idt}
    frontier = [idt]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


@st.composite
def small_groups(draw, max_degree=6):
    n = draw(st.integers(2, max_degree))
    k = draw(st.integers(1, 3))
    gens = [tuple(draw(st.permutations(range(n)))) for _ in range(k)]
    return n, gens


@settings(max_examples=200)
@given(small_groups())
def test_order_matches_brute_force_closure(data):
    n, gens = data
    assert PermGroup(gens, n).order() == _closure_size(gens, n)


@settings(max_examples=200)
@given(small_groups(7), st.data())
def test_contains_agrees_with_elements(data, d):
    n, gens = data
    G = PermGroup(gens, n)
    x = tuple(d.draw(st.permutations(range(n))))
    assert (x in G) == (x in G.element_set)
