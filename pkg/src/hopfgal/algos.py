"""Subgroups, conjugacy, isomorphisms and automorphism groups of small groups.

All routines work on the explicit element list of the groups involved, so
they are meant for groups of a few thousand elements (plus the symmetric
groups of degree <= 8 used by the transitive-group enumeration).
"""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .perm import Perm, PermError, PermGroup, conj, ident, inv, is_ident, mul, order_of

DEFAULT_SUBGROUP_BOUND = 2000


class BoundError(PermError):
    """A group exceeds the configured size bound for an operation."""


class NotASubgroup(PermError):
    pass


# ---------------------------------------------------------------------------
# element tables

class _Table:
    """Element list, conjugacy classes and conjugators of a group."""

    def __init__(self, G: PermGroup):
        self.G = G
        self.elems: list[tuple] = G.elements_raw
        self.index = {x: i for i, x in enumerate(self.elems)}
        self.orders = [order_of(x) for x in self.elems]
        n = len(self.elems)
        self.class_of = [-1] * n
        self.conjugator: list[tuple] = [None] * n  # t with t rep t^-1 = elem
        self.classes: list[list[int]] = []
        gens = G.gens_raw
        for i in range(n):
            if self.class_of[i] >= 0:
                continue
            c = len(self.classes)
            self.class_of[i] = c
            self.conjugator[i] = self.elems[0]
            members = [i]
            for j in members:
                x = self.elems[j]
                t = self.conjugator[j]
                for g in gens:
                    k = self.index[conj(g, x)]
                    if self.class_of[k] < 0:
                        self.class_of[k] = c
                        self.conjugator[k] = mul(g, t)
                        members.append(k)
            self.classes.append(members)
        self.class_size = [len(self.classes[c]) for c in self.class_of]
        self._centralizers: dict[int, list[tuple]] = {}

    def rep(self, c: int) -> tuple:
        return self.elems[self.classes[c][0]]

    def centralizer_of_rep(self, c: int) -> list[tuple]:
        cent = self._centralizers.get(c)
        if cent is None:
            r = self.rep(c)
            cent = [x for x in self.elems if mul(x, r) == mul(r, x)]
            self._centralizers[c] = cent
        return cent

    def conjugators(self, a: tuple, b: tuple) -> Iterable[tuple]:
        """All x in G with x a x^-1 = b (empty if not conjugate)."""
        ia, ib = self.index[a], self.index[b]
        c = self.class_of[ia]
        if self.class_of[ib] != c:
            return []
        tb = self.conjugator[ib]
        ta_inv = inv(self.conjugator[ia])
        return (mul(mul(tb, z), ta_inv) for z in self.centralizer_of_rep(c))

    def signature(self, i: int) -> tuple[int, int]:
        return self.orders[i], self.class_size[i]

    def class_histogram(self, elems: Iterable[tuple]) -> tuple:
        return tuple(sorted(Counter(self.class_of[self.index[x]] for x in elems).items()))


def table(G: PermGroup) -> _Table:
    tab = G.__dict__.get("_table")
    if tab is None:
        tab = _Table(G)
        G.__dict__["_table"] = tab
    return tab


def group_from_elements(gens: Sequence[tuple], elems: Iterable[tuple], degree: int) -> PermGroup:
    H = PermGroup(gens, degree)
    H.__dict__["elements_raw"] = sorted(elems)
    return H


def closure(gens: Sequence[tuple], degree: int, base: Sequence[tuple] | None = None,
            base_gens: Sequence[tuple] = (), limit: int | None = None) -> set[tuple] | None:
    """Element set of <base_gens, gens> by Dimino's coset method.

    ``base`` (if given) must be the element set of ``<base_gens>``.  Returns
    None when ``limit`` is exceeded.
    """
    idt = ident(degree)
    if base is None:
        elems = {idt}
        cur_gens: list[tuple] = []
    else:
        elems = set(base)
        cur_gens = list(base_gens)
    for g in gens:
        if g in elems:
            continue
        cur_gens.append(g)
        prev = list(elems)
        reps = [g]
        elems.update(mul(h, g) for h in prev)
        k = 0
        while k < len(reps):
            r = reps[k]
            k += 1
            for s in cur_gens:
                t = mul(r, s)
                if t not in elems:
                    elems.update(mul(h, t) for h in prev)
                    reps.append(t)
                    if limit is not None and len(elems) > limit:
                        return None
    return elems


def subgroup(G: PermGroup, gens: Sequence[Perm | tuple]) -> PermGroup:
    raw = [g.t if isinstance(g, Perm) else g for g in gens]
    return group_from_elements(raw, closure(raw, G.degree), G.degree)


def small_generating_set(elems: Sequence[tuple], degree: int) -> list[tuple]:
    """Greedy generating set drawn from an element list (in list order)."""
    target = len(set(elems))
    gens: list[tuple] = []
    cur = {ident(degree)}
    for x in elems:
        if len(cur) == target:
            break
        if x in cur:
            continue
        cur = closure([x], degree, base=cur, base_gens=gens)
        gens.append(x)
    return gens


# ---------------------------------------------------------------------------
# normal structure

def normal_closure(G: PermGroup, gens: Sequence[tuple]) -> PermGroup:
    ngens = [g for g in gens if not is_ident(g)]
    N = PermGroup(ngens, G.degree)
    changed = True
    while changed:
        changed = False
        for g in G.gens_raw:
            for n in list(ngens):
                c = conj(g, n)
                if c not in N:
                    ngens.append(c)
                    N = PermGroup(ngens, G.degree)
                    changed = True
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.gens_raw
    comms = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            comms.append(mul(mul(inv(a), inv(b)), mul(a, b)))
    return normal_closure(G, comms)


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].order() == 1


def is_perfect(G: PermGroup) -> bool:
    return derived_subgroup(G).order() == G.order()


def center(G: PermGroup) -> PermGroup:
    gens = G.gens_raw
    z = [x for x in G.elements_raw if all(mul(x, g) == mul(g, x) for g in gens)]
    return group_from_elements(small_generating_set(z, G.degree), z, G.degree)


def centralizer(G: PermGroup, H: PermGroup) -> PermGroup:
    hg = H.gens_raw
    c = [x for x in G.elements_raw if all(mul(x, h) == mul(h, x) for h in hg)]
    return group_from_elements(small_generating_set(c, G.degree), c, G.degree)


def _check_subgroup(ambient: PermGroup, H: PermGroup) -> None:
    if not H.is_subgroup_of(ambient):
        raise NotASubgroup("group is not a subgroup of the ambient group")


def _pivot(tab: _Table, H: PermGroup, target: frozenset) -> tuple[tuple, list[tuple]]:
    """Element h of H minimising the conjugator search from h into target."""
    by_class = defaultdict(list)
    for y in target:
        by_class[tab.class_of[tab.index[y]]].append(y)
    best = None
    tried = set()
    for x in H.elements_raw:
        c = tab.class_of[tab.index[x]]
        if c in tried or is_ident(x):
            continue
        tried.add(c)
        hits = by_class[c]
        cost = len(hits) * (len(tab.elems) // len(tab.classes[c]))
        if best is None or cost < best[0]:
            best = (cost, x, hits)
            if cost <= 1:
                break
    return best[1], sorted(best[2])


def normalizer_elements(ambient: PermGroup, H: PermGroup) -> list[tuple]:
    tab = table(ambient)
    if H.order() == 1:
        return list(tab.elems)
    hset = H.element_set
    hgens = H.gens_raw
    pivot, hits = _pivot(tab, H, hset)
    out = []
    for r in hits:
        for x in tab.conjugators(pivot, r):
            xi = inv(x)
            if all(tuple(x[h[i]] for i in xi) in hset for h in hgens):
                out.append(x)
    return out


def normalizer(ambient: PermGroup, H: PermGroup) -> PermGroup:
    _check_subgroup(ambient, H)
    elems = normalizer_elements(ambient, H)
    elems.sort()
    return group_from_elements(small_generating_set(elems, ambient.degree), elems, ambient.degree)


def are_conjugate(ambient: PermGroup, H1: PermGroup, H2: PermGroup) -> Perm | None:
    """A conjugator c in ambient with c H1 c^-1 = H2, or None."""
    _check_subgroup(ambient, H1)
    _check_subgroup(ambient, H2)
    c = _conjugator(table(ambient), H1, H2)
    return None if c is None else Perm.raw(c)


def _conjugator(tab: _Table, H1: PermGroup, H2: PermGroup) -> tuple | None:
    if H1.order() != H2.order():
        return None
    if H1.order() == 1:
        return tab.elems[0]
    s1, s2 = H1.element_set, H2.element_set
    if s1 == s2:
        return tab.elems[0]
    if tab.class_histogram(s1) != tab.class_histogram(s2):
        return None
    pivot, hits = _pivot(tab, H1, s2)
    gens = H1.gens_raw
    for r in hits:
        for x in tab.conjugators(pivot, r):
            xi = inv(x)
            if all(tuple(x[h[i]] for i in xi) in s2 for h in gens):
                return x
    return None


def conjugates(ambient: PermGroup, H: PermGroup) -> list[PermGroup]:
    """All distinct conjugates of H in ambient (H first)."""
    seen = {H.element_set: H}
    queue = [H]
    for K in queue:
        for g in ambient.gens_raw:
            gens = [conj(g, h) for h in K.gens_raw]
            elems = frozenset(conj(g, x) for x in K.elements_raw)
            if elems not in seen:
                J = group_from_elements(gens, elems, ambient.degree)
                seen[elems] = J
                queue.append(J)
    return queue


# ---------------------------------------------------------------------------
# subgroup enumeration

def _is_prime(m: int) -> bool:
    return m > 1 and all(m % d for d in range(2, int(m ** 0.5) + 1))


def perfect_subgroup_reps(G: PermGroup) -> list[PermGroup]:
    """Nontrivial perfect subgroups of G up to conjugacy.

    Searches subgroups generated by an involution class representative and
    a second element taken up to conjugation by the involution's
    centralizer.
    """
    top = derived_series(G)[-1]
    if top.order() == 1:
        return []
    tab = table(G)
    deg = G.degree
    dset = top.element_set
    found: list[PermGroup] = []
    seen_sets: set[frozenset] = set()
    for c, members in enumerate(tab.classes):
        x = tab.elems[members[0]]
        if tab.orders[members[0]] != 2 or x not in dset:
            continue
        cgens = small_generating_set(tab.centralizer_of_rep(c), deg)
        seen: set[tuple] = set()
        for y in top.elements_raw:
            if y in seen:
                continue
            orb = [y]
            seen.add(y)
            for z in orb:
                for g in cgens:
                    w = conj(g, z)
                    if w not in seen:
                        seen.add(w)
                        orb.append(w)
            P = PermGroup([x, y], deg)
            m = P.order()
            if m < 60 or m % 4 or not is_perfect(P):
                continue
            elems = frozenset(P.elements_raw)
            if elems in seen_sets:
                continue
            seen_sets.add(elems)
            if any(_conjugator(tab, P, Q) is not None for Q in found):
                continue
            found.append(P)
    return found


@dataclass
class _Reps:
    tab: _Table
    by_key: dict = field(default_factory=lambda: defaultdict(list))
    heap: list = field(default_factory=list)
    all: list = field(default_factory=list)

    def register(self, H: PermGroup) -> bool:
        key = (H.order(), self.tab.class_histogram(H.element_set))
        bucket = self.by_key[key]
        for R in bucket:
            if _conjugator(self.tab, H, R) is not None:
                return False
        bucket.append(H)
        self.all.append(H)
        heapq.heappush(self.heap, (H.order(), len(self.all), H))
        return True


def _cyclic_extensions(G: PermGroup, K: PermGroup, wanted: Callable[[int], bool]):
    kset = K.element_set
    kel = K.elements_raw
    korder = len(kel)
    covered = set(kset)
    for x in normalizer_elements(G, K):
        if x in covered:
            continue
        y, m = x, 1
        while y not in kset:
            y = mul(y, x)
            m += 1
        if not _is_prime(m) or not wanted(korder * m):
            continue
        elems = set(kel)
        xi = x
        for _ in range(m - 1):
            elems.update(mul(k, xi) for k in kel)
            xi = mul(xi, x)
        covered |= elems
        yield group_from_elements(K.gens_raw + [x], elems, G.degree)


def _sort_key(H: PermGroup):
    return H.order(), tuple(H.elements_raw)


def subgroup_class_reps(G: PermGroup, orders: Iterable[int] | None = None,
                        bound: int = DEFAULT_SUBGROUP_BOUND) -> list[tuple[PermGroup, int]]:
    """One representative per conjugacy class of subgroups, with class sizes.

    Uses cyclic extension layer by layer over subgroup orders, seeded with
    the perfect subgroups when G is not solvable.  With ``orders`` given,
    only classes of those orders are returned and only layers whose order
    divides one of them are built, which is what makes groups above
    ``bound`` tractable.
    """
    if orders is None:
        if G.order() > bound:
            raise BoundError(f"|G| = {G.order()} exceeds subgroup bound {bound}")
        targets = None
    else:
        targets = {int(m) for m in orders if G.order() % int(m) == 0}
        if not targets:
            return []

    def wanted(m: int) -> bool:
        return targets is None or any(t % m == 0 for t in targets)

    tab = table(G)
    reps = _Reps(tab)
    reps.register(PermGroup([], G.degree))
    if not is_solvable(G):
        for P in perfect_subgroup_reps(G):
            if wanted(P.order()):
                reps.register(P)
    while reps.heap:
        _, _, K = heapq.heappop(reps.heap)
        if targets is not None and not any(t % K.order() == 0 and t > K.order() for t in targets):
            continue
        for J in _cyclic_extensions(G, K, wanted):
            reps.register(J)
    out = [H for H in reps.all if targets is None or H.order() in targets]
    out.sort(key=_sort_key)
    n = G.order()
    return [(H, n // len(normalizer_elements(G, H))) for H in out]


def all_subgroups(G: PermGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[PermGroup]:
    """Every subgroup of G exactly once, ordered by (order, sorted elements)."""
    if G.order() > bound:
        raise BoundError(f"|G| = {G.order()} exceeds subgroup bound {bound}")
    out = []
    for H, _ in subgroup_class_reps(G, bound=bound):
        out.extend(conjugates(G, H))
    out.sort(key=_sort_key)
    return out


# ---------------------------------------------------------------------------
# isomorphisms

@dataclass(frozen=True, eq=False)
class GroupIso:
    """Homomorphism between permutation groups given by generator images."""

    source: PermGroup
    target: PermGroup
    gens: tuple[tuple, ...]
    images: tuple[tuple, ...]

    @property
    def gen_images(self) -> list[Perm]:
        return [Perm.raw(x) for x in self.images]

    @cached_property
    def mapping(self) -> dict[tuple, tuple]:
        m = _extend(self.source, self.gens, self.images, self.target.degree)
        if m is None:
            raise PermError("generator images do not define a homomorphism")
        return m

    def evaluate(self, x: tuple) -> tuple:
        """Image of one element, without building the whole map."""
        m = self.__dict__.get("mapping")
        if m is not None:
            return m[x]
        tree = _word_tree(self.source, self.gens)
        path = []
        while True:
            step = tree[x]
            if step is None:
                break
            x, s = step
            path.append(s)
        y = ident(self.target.degree)
        for s in reversed(path):
            y = mul(self.images[s], y)
        return y

    def __call__(self, x: Perm | tuple):
        if isinstance(x, Perm):
            return Perm.raw(self.evaluate(x.t))
        return self.evaluate(x)

    def image_of(self, H: PermGroup) -> frozenset[tuple]:
        m = self.mapping
        return frozenset(m[x] for x in H.elements_raw)

    def maps_into(self, gens: Iterable[tuple], target: frozenset | set) -> bool:
        return all(self.evaluate(x) in target for x in gens)

    def is_bijective(self) -> bool:
        return (self.source.order() == self.target.order()
                and len(set(self.mapping.values())) == self.source.order())

    def inverse(self) -> GroupIso:
        m = self.mapping
        back = {v: k for k, v in m.items()}
        tg = small_generating_set(self.target.elements_raw, self.target.degree)
        return GroupIso(self.target, self.source, tuple(tg), tuple(back[y] for y in tg))

    def then(self, other: GroupIso) -> GroupIso:
        """other ∘ self."""
        m = other.mapping
        return GroupIso(self.source, other.target, self.gens, tuple(m[self.mapping[g]] for g in self.gens))

    def key(self) -> tuple:
        return self.images


def _word_tree(A: PermGroup, gens: tuple[tuple, ...]) -> dict[tuple, tuple | None]:
    """x -> (y, s) with x = gens[s] * y, along a BFS tree from the identity."""
    cache = A.__dict__.setdefault("_word_trees", {})
    tree = cache.get(gens)
    if tree is None:
        idt = ident(A.degree)
        tree = {idt: None}
        queue = [idt]
        for x in queue:
            for s, g in enumerate(gens):
                y = mul(g, x)
                if y not in tree:
                    tree[y] = (x, s)
                    queue.append(y)
        cache[gens] = tree
    return tree


def _extend(A: PermGroup, gens: Sequence[tuple], images: Sequence[tuple], tdeg: int) -> dict | None:
    """Extend generator images to a map on <gens>; None if inconsistent."""
    idt = ident(A.degree)
    img = {idt: ident(tdeg)}
    queue = [idt]
    for x in queue:
        ix = img[x]
        for g, h in zip(gens, images):
            y = mul(g, x)
            v = mul(h, ix)
            w = img.get(y)
            if w is None:
                img[y] = v
                queue.append(y)
            elif w != v:
                return None
    return img


class _IsoSearch:
    """Backtracking over images of a fixed generating sequence of A in B."""

    def __init__(self, A: PermGroup, B: PermGroup):
        self.A, self.B = A, B
        self.ta, self.tb = table(A), table(B)
        self.ok = self._compatible()
        if self.ok:
            self.gens = self._generating_sequence()
            self._prepare()

    def _compatible(self) -> bool:
        if self.A.order() != self.B.order():
            return False
        sa = Counter(self.ta.signature(i) for i in range(len(self.ta.elems)))
        sb = Counter(self.tb.signature(i) for i in range(len(self.tb.elems)))
        return sa == sb

    def _cost(self, x: tuple) -> int:
        return self.ta.class_size[self.ta.index[x]]

    def _generating_sequence(self) -> list[tuple]:
        A, ta = self.A, self.ta
        n = A.order()
        if n == 1:
            return []
        elems = sorted(ta.elems[1:], key=lambda x: (self._cost(x), -order_of(x), x))
        for x in elems:
            if order_of(x) == n:
                return [x]
        reps = sorted((ta.rep(c) for c in range(len(ta.classes)) if len(ta.classes[c]) and ta.classes[c][0] != 0),
                      key=lambda x: (self._cost(x), -order_of(x), x))
        abelian = all(mul(x, y) == mul(y, x) for x in A.gens_raw for y in A.gens_raw)
        tries = 0
        for a in reps:
            for b in elems:
                if tries > 4000:
                    break
                if b == a or (not abelian and mul(a, b) == mul(b, a)):
                    continue
                tries += 1
                if PermGroup([a, b], A.degree).order() == n:
                    return [a, b]
        gens: list[tuple] = []
        cur = PermGroup([], A.degree)
        for x in elems:
            if x not in cur:
                gens.append(x)
                cur = PermGroup(gens, A.degree)
                if cur.order() == n:
                    break
        return gens

    def _prepare(self) -> None:
        ta, tb = self.ta, self.tb
        by_sig = defaultdict(list)
        for i, y in enumerate(tb.elems):
            by_sig[tb.signature(i)].append(y)
        self.cands = [by_sig[ta.signature(ta.index[g])] for g in self.gens]
        self.pair_orders = [[self._pair_profile(ta, g, h) for h in self.gens[:i]]
                            for i, g in enumerate(self.gens)]

    @staticmethod
    def _pair_profile(tab: _Table, g: tuple, h: tuple) -> tuple[int, ...]:
        """Orders of a few short words in g and h."""
        hi, gg, hh = inv(h), mul(g, g), mul(h, h)
        words = (mul(g, h), mul(g, hi), mul(gg, h), mul(g, hh), mul(mul(inv(g), hi), mul(g, h)), mul(gg, hh))
        o, idx = tab.orders, tab.index
        return tuple(o[idx[w]] for w in words)

    def search(self, first_reps_only: bool, find_all: bool, limit_first: set | None = None):
        """Yield tuples of images defining isomorphisms A -> B."""
        if not self.ok:
            return
        k = len(self.gens)
        if k == 0:
            yield ()
            return
        n = self.A.order()
        tb = self.tb
        first = self.cands[0]
        if first_reps_only:
            first = [y for y in first if tb.classes[tb.class_of[tb.index[y]]][0] == tb.index[y]]
        if limit_first is not None:
            first = [y for y in first if y in limit_first]
        imgs: list[tuple] = []

        def rec(d: int):
            cands = first if d == 0 else self.cands[d]
            profiles = self.pair_orders[d]
            for c in cands:
                if any(self._pair_profile(tb, c, imgs[j]) != prof for j, prof in enumerate(profiles)):
                    continue
                imgs.append(c)
                m = _extend(self.A, self.gens[:d + 1], imgs, self.B.degree)
                if m is not None:
                    if d + 1 == k:
                        if len(m) == n and len(set(m.values())) == n:
                            yield tuple(imgs)
                            if not find_all:
                                imgs.pop()
                                return
                    else:
                        stop = False
                        for sol in rec(d + 1):
                            yield sol
                            if not find_all:
                                stop = True
                                break
                        if stop:
                            imgs.pop()
                            return
                imgs.pop()

        yield from rec(0)


def find_isomorphism(A: PermGroup, B: PermGroup) -> GroupIso | None:
    """Some isomorphism A -> B, or None.  Deterministic for fixed inputs."""
    if A.order() != B.order():
        return None
    if A.degree == B.degree and A.same_group(B):
        gens = tuple(A.gens_raw) or ()
        return GroupIso(A, B, gens, gens)
    s = _IsoSearch(A, B)
    for sol in s.search(first_reps_only=True, find_all=False):
        return GroupIso(A, B, tuple(s.gens), sol)
    return None


def is_isomorphic(A: PermGroup, B: PermGroup) -> bool:
    return find_isomorphism(A, B) is not None


@dataclass
class AutGroup:
    base: PermGroup
    gens: tuple[tuple, ...]
    autos: list[GroupIso]

    @property
    def order(self) -> int:
        return len(self.autos)

    def __len__(self) -> int:
        return len(self.autos)

    def __iter__(self):
        return iter(self.autos)


def automorphism_group(G: PermGroup, bound: int = 20000) -> AutGroup:
    """All automorphisms of G, as generator images.

    Only automorphisms sending the first generator to a class
    representative are searched; the rest are their compositions with
    inner automorphisms.
    """
    if G.order() > bound:
        raise BoundError(f"|G| = {G.order()} exceeds automorphism bound {bound}")
    cached = G.__dict__.get("_aut")
    if cached is not None:
        return cached
    s = _IsoSearch(G, G)
    gens = tuple(s.gens)
    tab = s.tb
    autos: list[GroupIso] = []
    if not gens:
        autos.append(GroupIso(G, G, (), ()))
    else:
        base = list(s.search(first_reps_only=True, find_all=True))
        for sol in base:
            c = tab.class_of[tab.index[sol[0]]]
            for i in tab.classes[c]:
                t = tab.conjugator[i]
                autos.append(GroupIso(G, G, gens, tuple(conj(t, y) for y in sol)))
    autos.sort(key=lambda a: a.images)
    result = AutGroup(G, gens, autos)
    G.__dict__["_aut"] = result
    return result


def aut_stabilizing(G: PermGroup, G1: PermGroup, aut: AutGroup | None = None) -> list[GroupIso]:
    """Automorphisms a of G with a(G1) = G1 (a sublist of automorphism_group(G))."""
    _check_subgroup(G, G1)
    aut = aut or automorphism_group(G)
    s1 = G1.element_set
    return [a for a in aut.autos if a.maps_into(G1.gens_raw, s1)]
