"""Small groups as regular permutation groups, with type labels.

Every group is first described abstractly (cyclic groups, direct and
semidirect products, or a few permutation groups), then realised by left
multiplication on an element list whose first element is the identity.
Point ``j`` is the ``j``-th element, so the element carrying 1 to ``j`` is
the ``j``-th element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .perm import DEFAULT_DEGREE_CAP, Perm, PermError, PermGroup, from_cycles, mul


class UnsupportedOrder(PermError):
    pass


@dataclass(frozen=True)
class _Abstract:
    """Finite group as (elements, product, generators); elements[0] is the identity."""

    elements: tuple
    op: Callable[[Hashable, Hashable], Hashable]
    gens: tuple

    def regular(self) -> tuple[PermGroup, list[Perm]]:
        index = {x: i for i, x in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise PermError("duplicate elements in group recipe")

        def lam(x):
            return Perm.raw(tuple(index[self.op(x, y)] for y in self.elements))

        gens = [lam(g) for g in self.gens]
        return PermGroup(gens, len(self.elements)), gens


def _cyclic(n: int) -> _Abstract:
    return _Abstract(tuple(range(n)), lambda a, b: (a + b) % n, (1,) if n > 1 else ())


def _direct(A: _Abstract, B: _Abstract) -> _Abstract:
    elems = tuple((a, b) for a in A.elements for b in B.elements)
    gens = tuple((g, B.elements[0]) for g in A.gens) + tuple((A.elements[0], h) for h in B.gens)
    return _Abstract(elems, lambda x, y: (A.op(x[0], y[0]), B.op(x[1], y[1])), gens)


def _semidirect(A: _Abstract, k: int, act: Callable) -> _Abstract:
    """A ⋊ C_k, the generator of C_k acting on A by ``act`` (order dividing k)."""

    def act_pow(i, a):
        for _ in range(i):
            a = act(a)
        return a

    elems = tuple((a, i) for i in range(k) for a in A.elements)
    gens = tuple((g, 0) for g in A.gens) + ((A.elements[0], 1),)
    return _Abstract(elems, lambda x, y: (A.op(x[0], act_pow(x[1], y[0])), (x[1] + y[1]) % k), gens)


def _from_perms(gens: Sequence[Perm]) -> _Abstract:
    G = PermGroup(gens)
    return _Abstract(tuple(G.elements_raw), mul, tuple(g.t for g in gens))


def _neg(n: int) -> Callable:
    return lambda a: (-a) % n


def _neg2(n: int) -> Callable:
    return lambda a: ((-a[0]) % n, (-a[1]) % n)


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class GroupType:
    """An isomorphism type of order ``order`` with a regular realisation.

    ``gen_names`` name the generators of ``construct()`` in order and
    ``relators`` are words in them (a capital letter is an inverse, ``^k``
    a power of the preceding letter) that evaluate to the identity.
    """

    order: int
    label: str
    gen_names: str
    relators: tuple[str, ...]
    recipe: Callable[[], _Abstract]

    def construct(self) -> PermGroup:
        return self.recipe().regular()[0]

    def named_generators(self) -> dict[str, Perm]:
        return dict(zip(self.gen_names, self.recipe().regular()[1]))

    def relators_hold(self) -> bool:
        gens = self.named_generators()
        return all(evaluate_word(w, gens, self.order).is_identity() for w in self.relators)


def evaluate_word(word: str, gens: dict[str, Perm], degree: int) -> Perm:
    result = Perm.identity(degree)
    i = 0
    while i < len(word):
        ch = word[i]
        g = gens[ch.lower()]
        if ch.isupper():
            g = g.inverse()
        i += 1
        k = 1
        if i < len(word) and word[i] == "^":
            j = i + 1
            while j < len(word) and word[j].isdigit():
                j += 1
            k = int(word[i + 1:j])
            i = j
        result = result * g ** k
    return result


def _cyc(n: int) -> GroupType:
    rel = (f"a^{n}",) if n > 1 else ()
    return GroupType(n, f"C{n}", "a" if n > 1 else "", rel, lambda: _cyclic(n))


def _dihedral(m: int) -> GroupType:
    """Dihedral group of order 2m."""
    return GroupType(2 * m, f"D{2 * m}", "rs", (f"r^{m}", "s^2", "srsr"),
                     lambda: _semidirect(_cyclic(m), 2, _neg(m)))


def _abelian2(a: int, b: int) -> GroupType:
    return GroupType(a * b, f"C{a}xC{b}", "ab", (f"a^{a}", f"b^{b}", "abAB"),
                     lambda: _direct(_cyclic(a), _cyclic(b)))


def _c2cubed() -> GroupType:
    return GroupType(8, "C2xC2xC2", "abc", ("a^2", "b^2", "c^2", "abAB", "acAC", "bcBC"),
                     lambda: _direct(_direct(_cyclic(2), _cyclic(2)), _cyclic(2)))


def _q8() -> GroupType:
    i = from_cycles(8, [(1, 2, 3, 4), (5, 6, 7, 8)])
    j = from_cycles(8, [(1, 5, 3, 7), (2, 8, 4, 6)])
    return GroupType(8, "Q8", "ij", ("i^4", "i^2J^2", "jiJi"), lambda: _from_perms([i, j]))


def _dic3() -> GroupType:
    return GroupType(12, "Dic3", "ax", ("a^3", "x^4", "xaXa"), lambda: _semidirect(_cyclic(3), 4, _neg(3)))


def _a4() -> GroupType:
    s = from_cycles(4, [(1, 2), (3, 4)])
    t = from_cycles(4, [(1, 2, 3)])
    return GroupType(12, "A4", "st", ("s^2", "t^3", "ststst"), lambda: _from_perms([s, t]))


# the five groups of order 2p^2, p an odd prime ---------------------------------

TWO_P2_KINDS = ("cyclic", "abelian", "dihedral_x_cyclic", "generalized_dihedral", "dihedral")


def two_p2_label(p: int, kind: str) -> str:
    return {
        "cyclic": f"C{2 * p * p}",
        "abelian": f"C{p}xC{2 * p}",
        "dihedral_x_cyclic": f"C{p}xD{2 * p}",
        "generalized_dihedral": f"(C{p}xC{p}):C2",
        "dihedral": f"D{2 * p * p}",
    }[kind]


def automorphism_formula(p: int, label: str) -> int:
    """Closed-form |Aut| of the group of order 2p^2 with the given label or kind."""
    kinds = {two_p2_label(p, k): k for k in TWO_P2_KINDS}
    kind = kinds.get(label, label)
    gl2 = p * (p - 1) ** 2 * (p + 1)
    return {
        "cyclic": p * (p - 1),
        "abelian": gl2,
        "dihedral_x_cyclic": p * (p - 1) ** 2,
        "generalized_dihedral": p * p * gl2,
        "dihedral": p ** 3 * (p - 1),
    }[kind]


def _two_p2_type(p: int, kind: str) -> GroupType:
    label = two_p2_label(p, kind)
    n = 2 * p * p
    if kind == "cyclic":
        return GroupType(n, label, "a", (f"a^{n}",), lambda: _cyclic(n))
    if kind == "abelian":
        return GroupType(n, label, "ab", (f"a^{p}", f"b^{2 * p}", "abAB"),
                         lambda: _direct(_cyclic(p), _cyclic(2 * p)))
    if kind == "dihedral_x_cyclic":
        return GroupType(n, label, "crs", (f"c^{p}", f"r^{p}", "s^2", "srsr", "crCR", "csCS"),
                         lambda: _direct(_cyclic(p), _semidirect(_cyclic(p), 2, _neg(p))))
    if kind == "generalized_dihedral":
        return GroupType(n, label, "abs", (f"a^{p}", f"b^{p}", "s^2", "abAB", "sasa", "sbsb"),
                         lambda: _semidirect(_direct(_cyclic(p), _cyclic(p)), 2, _neg2(p)))
    if kind == "dihedral":
        return _dihedral(p * p)
    raise PermError(f"unknown kind {kind!r}; expected one of {TWO_P2_KINDS}")


def make_2p2(p: int, which: str, degree_cap: int | None = None) -> PermGroup:
    """Regular realisation of one of the five groups of order 2p^2.

    ``which`` is a kind from TWO_P2_KINDS or the corresponding label.
    """
    if p < 3 or not _is_prime(p):
        raise PermError(f"p must be an odd prime, got {p}")
    cap = 2 * p * p if degree_cap is None else degree_cap
    if 2 * p * p > cap:
        raise UnsupportedOrder(f"2p^2 = {2 * p * p} exceeds degree cap {cap}")
    kind = which
    if which not in TWO_P2_KINDS:
        by_label = {two_p2_label(p, k): k for k in TWO_P2_KINDS}
        if which not in by_label:
            raise PermError(f"unknown group {which!r} of order {2 * p * p}")
        kind = by_label[which]
    return _two_p2_type(p, kind).construct()


# catalogue ------------------------------------------------------------------------

def _small(g: int) -> list[GroupType]:
    if g == 4:
        return [_cyc(4), _abelian2(2, 2)]
    if g == 6:
        return [_cyc(6), _dihedral(3)]
    if g == 8:
        return [_cyc(8), _abelian2(4, 2), _c2cubed(), _dihedral(4), _q8()]
    if g == 9:
        return [_cyc(9), _abelian2(3, 3)]
    if g == 12:
        return [_cyc(12), _abelian2(6, 2), _dihedral(6), _a4(), _dic3()]
    if g == 15 or _is_prime(g) or g == 1:
        return [_cyc(g)]
    if g % 2 == 0 and _is_prime(g // 2):
        return [_cyc(g), _dihedral(g // 2)]
    raise UnsupportedOrder(f"no recipe for order {g}")


def _as_2p2(g: int) -> int | None:
    if g % 2:
        return None
    m = g // 2
    p = round(m ** 0.5)
    return p if p * p == m and p > 2 and _is_prime(p) else None


def groups_of_order(g: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> list[GroupType]:
    """All isomorphism types of order g that this module knows about.

    Supported: every g <= 15, g = 2p (p odd prime) and g = 2p^2, subject to
    ``g <= degree_cap``.
    """
    if g < 1:
        raise UnsupportedOrder(f"invalid order {g}")
    if g > degree_cap:
        raise UnsupportedOrder(f"order {g} exceeds degree cap {degree_cap}")
    p = _as_2p2(g)
    if p is not None:
        return [_two_p2_type(p, k) for k in TWO_P2_KINDS]
    if g <= 15 or (g % 2 == 0 and _is_prime(g // 2)):
        return _small(g)
    raise UnsupportedOrder(f"order {g} is not supported (need g <= 15, 2p or 2p^2)")


def group_type(label: str, order: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroupType:
    for t in groups_of_order(order, degree_cap):
        if t.label == label:
            return t
    raise PermError(f"no group labelled {label!r} of order {order}")
