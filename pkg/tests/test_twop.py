import pytest

from hopfgal.perm import PermError
from hopfgal.twop import (
    ALLOWED_TYPE_SETS,
    COROLLARY_COLUMNS,
    check_lemma_orders,
    row_label,
    run_suite,
    type_set_allowed,
    verify_aut_orders,
    verify_cyclic_implies_dihedral,
)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_lemma_orders(p, n):
    rep = check_lemma_orders(p, n)
    assert rep.passed, [c for c in rep.checks if not c.passed]


def test_lemma_rejects_even_prime():
    with pytest.raises(PermError):
        check_lemma_orders(2, 3)
    with pytest.raises(PermError):
        check_lemma_orders(9, 2)


@pytest.mark.parametrize("suite", ["lemma", "2pn", "2p2", "aut"])
def test_suites_pass_at_3(suite):
    rep = run_suite(suite, p=3)
    assert rep.checks and rep.passed, [c for c in rep.checks if not c.passed]
    assert rep.to_dict()["passed"]


def test_cyclic_implies_dihedral_p5():
    rep = verify_cyclic_implies_dihedral(5, 1)
    assert rep.passed
    norm = next(c for c in rep.checks if c.name.startswith("|N_Hol(D)(<sφ>)|"))
    assert norm.actual == 40


def test_aut_orders_p5():
    assert verify_aut_orders(5).passed


def test_unknown_suite():
    with pytest.raises(PermError):
        run_suite("nope")


def test_type_sets():
    assert type_set_allowed(frozenset())
    assert type_set_allowed(frozenset({"dihedral", "cyclic"}))
    assert not type_set_allowed(frozenset({"cyclic"}))
    assert not type_set_allowed(frozenset({"abelian", "dihedral_x_cyclic"}))
    assert all(s <= set(COROLLARY_COLUMNS) for s in ALLOWED_TYPE_SETS)


def test_row_labels():
    assert row_label(3, "Hol(N5)") == "Hol((C3xC3):C2)"
    assert row_label(3, "CxC") == "C3xC6"
    assert row_label(5, "Hol(CxD)") == "Hol(C5xD10)"
    assert row_label(3, "C") == "C18"
