"""Enumeration of Hopf Galois structures through the holomorph.

For a transitive group G of degree g (the Galois group of the normal
closure acting on the cosets of G', with G' the stabilizer of point 1) and
a group N of order g, the structures of type N are the regular subgroups of
Sym(g) of type N normalized by G.  They are found from embeddings
β: G -> Hol(N) with β(G') = Stab(1): with t_j any element of G carrying 1
to j, φ(j) = β(t_j)(1) is a bijection and φ^-1 λ(N) φ is the structure.

``direct_hgs`` is an independent brute-force enumerator used as an oracle
for small degrees.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from .algos import (
    GroupIso,
    aut_stabilizing,
    automorphism_group,
    closure,
    conjugates,
    find_isomorphism,
    group_from_elements,
    subgroup_class_reps,
    table,
    DEFAULT_SUBGROUP_BOUND,
)
from .holomorph import Holomorph, holomorph_data
from .perm import PermError, PermGroup, cycle_lengths, ident, inv, is_ident, symmetric_group
from .zoo import GroupType

log = logging.getLogger(__name__)

DIRECT_ORACLE_CAP = 6


class ContextError(PermError):
    pass


@dataclass(eq=False)
class ExtensionContext:
    """A transitive group G with G' = Stab_G(1)."""

    G: PermGroup
    Gp: PermGroup
    degree: int
    name: str = ""

    @classmethod
    def from_group(cls, G: PermGroup, name: str = "") -> ExtensionContext:
        if not G.is_transitive():
            raise ContextError("G must be transitive")
        return cls(G, G.point_stabilizer(1), G.degree, name)

    def __post_init__(self):
        if self.G.degree != self.degree or self.Gp.degree != self.degree:
            raise ContextError("degree mismatch")
        if not self.G.is_transitive():
            raise ContextError("G must be transitive")
        if any(g[0] != 0 for g in self.Gp.gens_raw) or self.G.order() != self.degree * self.Gp.order():
            raise ContextError("Gp must be the stabilizer of point 1 in G")
        if not self.Gp.is_subgroup_of(self.G):
            raise ContextError("Gp is not a subgroup of G")

    @property
    def is_galois(self) -> bool:
        return self.Gp.order() == 1

    @cached_property
    def aut(self):
        return automorphism_group(self.G)

    @cached_property
    def aut_gp(self) -> list[GroupIso]:
        return aut_stabilizing(self.G, self.Gp, self.aut)

    @cached_property
    def schreier_tree(self) -> list[tuple[int, int, int]]:
        """(point, parent point, generator index) for every point but the first.

        Generators are those of ``self.aut.gens``; following the tree from 1
        to j gives an element t_j of G with t_j(1) = j.
        """
        gens = self.aut.gens
        seen = {0}
        out = []
        queue = [0]
        for i in queue:
            for s, g in enumerate(gens):
                j = g[i]
                if j not in seen:
                    seen.add(j)
                    out.append((j, i, s))
                    queue.append(j)
        if len(seen) != self.degree:
            raise ContextError("generating sequence is not transitive")
        return out


@dataclass(eq=False)
class HgsRecord:
    N_image: PermGroup
    type_label: str
    almost_classical: bool | None = None
    bijective_corr: bool | None = None
    class_id: int | None = None

    @property
    def flags(self) -> dict[str, bool | None]:
        return {"almost_classical": self.almost_classical, "bijective_corr": self.bijective_corr}

    @cached_property
    def key(self) -> tuple[tuple, ...]:
        return tuple(self.N_image.elements_raw)


@dataclass
class FindStats:
    classes: int = 0
    gstars: int = 0
    betas: int = 0
    records: int = 0


@dataclass
class EngineOptions:
    expand_conjugates: bool = False
    subgroup_bound: int = DEFAULT_SUBGROUP_BOUND
    # when |G| = |Hol(N)|, read the structures off the regular normal subgroups of G
    normal_shortcut: bool = True


# ---------------------------------------------------------------------------
# per-holomorph cache of transitive subgroup classes

def _transitive_classes(hol: Holomorph, order: int, bound: int) -> list[PermGroup]:
    cache = hol.__dict__.setdefault("_classes", {})
    if order in cache:
        return cache[order]
    H = hol.group
    if H.order() <= bound:
        if "_all" not in cache:
            cache["_all"] = [K for K, _ in subgroup_class_reps(H, bound=bound)]
        reps = [K for K in cache["_all"] if K.order() == order]
    else:
        reps = [K for K, _ in subgroup_class_reps(H, orders=[order])]
    cache[order] = [K for K in reps if K.is_transitive()]
    return cache[order]


def prepare_holomorph(hol: Holomorph, orders, bound: int = DEFAULT_SUBGROUP_BOUND) -> None:
    """Precompute transitive subgroup classes of Hol(N) for several orders at once."""
    cache = hol.__dict__.setdefault("_classes", {})
    want = sorted({m for m in orders if m not in cache and hol.group.order() % m == 0})
    if not want:
        return
    if hol.group.order() <= bound:
        for m in want:
            _transitive_classes(hol, m, bound)
        return
    reps = [K for K, _ in subgroup_class_reps(hol.group, orders=want)]
    for m in want:
        cache[m] = [K for K in reps if K.order() == m and K.is_transitive()]
    for m in orders:
        cache.setdefault(m, [])


def _element_orders(G: PermGroup) -> set[int]:
    return set(table(G).orders)


def may_embed(G: PermGroup, hol: Holomorph) -> bool:
    """Cheap necessary conditions for G to embed in Hol(N)."""
    h = hol.group.order()
    n = G.order()
    if n > h or h % n:
        return False
    return _element_orders(G) <= _element_orders(hol.group)


# ---------------------------------------------------------------------------
# the case |G| = |Hol(N)|

def _small_class(G: PermGroup, x: tuple, limit: int) -> list[tuple] | None:
    """Conjugacy class of x in G, or None if it has more than ``limit`` elements."""
    gens = [(g, inv(g)) for g in G.gens_raw]
    cls = [x]
    seen = {x}
    for y in cls:
        for g, gi in gens:
            z = tuple(g[y[i]] for i in gi)
            if z not in seen:
                if len(cls) >= limit:
                    return None
                seen.add(z)
                cls.append(z)
    return cls


def _semiregular(elems) -> bool:
    return all(is_ident(x) or all(x[i] != i for i in range(len(x))) for x in elems)


def regular_normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """All regular subgroups of G that are normal in G.

    Such a subgroup is a union of conjugacy classes of fixed-point-free
    elements, so it is a join of normal closures of single classes, all of
    them semiregular.
    """
    g = G.degree
    idt = ident(g)
    done: set[tuple] = {idt}
    pieces: dict[frozenset, list[tuple]] = {}
    for x in G.elements_raw:
        if x in done:
            continue
        cls = _small_class(G, x, g - 1)
        if cls is None:
            continue
        done.update(cls)
        if not _semiregular(cls[:1]):
            continue
        elems = closure(cls, g, limit=g)
        if elems is None or not _semiregular(elems):
            continue
        pieces.setdefault(frozenset(elems), cls)
    found = {frozenset([idt]): []}  # the answer when g = 1
    found.update(pieces)
    frontier = list(pieces.items())
    while frontier:
        nxt = []
        for a, ga in frontier:
            for b, gb in pieces.items():
                if b <= a:
                    continue
                elems = closure(gb, g, base=a, base_gens=ga, limit=g)
                if elems is None or not _semiregular(elems):
                    continue
                key = frozenset(elems)
                if key not in found:
                    found[key] = ga + gb
                    nxt.append((key, ga + gb))
        frontier = nxt
    out = [group_from_elements(gens, key, g) for key, gens in found.items() if len(key) == g]
    out.sort(key=lambda R: tuple(R.elements_raw))
    return out


def _records_normal(ctx: ExtensionContext, gtype: GroupType) -> list[HgsRecord]:
    N = gtype.construct()
    return [HgsRecord(R, gtype.label) for R in regular_normal_subgroups(ctx.G)
            if find_isomorphism(R, N) is not None]


# ---------------------------------------------------------------------------
# main enumeration

def _records_from(ctx: ExtensionContext, hol: Holomorph, Gstar: PermGroup, label: str,
                  seen: dict, stats: FindStats) -> None:
    f = find_isomorphism(Gstar, ctx.G)
    if f is None:
        return
    stab = Gstar.point_stabilizer(1)
    fS = f.image_of(stab)
    gp_gens = ctx.Gp.gens_raw
    a = None
    if fS == ctx.Gp.element_set:
        a = None
    else:
        for cand in ctx.aut.autos:
            if cand.maps_into(gp_gens, fS):
                a = cand
                break
        else:
            return
    stats.gstars += 1
    finv = {v: k for k, v in f.mapping.items()}
    amap = a.mapping if a is not None else None
    tree = ctx.schreier_tree
    g = ctx.degree
    L = hol.regular
    lam = L.elements_raw
    lam_gens = L.gens_raw
    for ap in ctx.aut_gp:
        stats.betas += 1
        imgs = ap.images if amap is None else tuple(amap[y] for y in ap.images)
        psi = [finv[y] for y in imgs]
        phi = [0] * g
        for j, i, s in tree:
            phi[j] = psi[s][phi[i]]
        phinv = inv(tuple(phi))
        key = frozenset(tuple(phinv[x[p]] for p in phi) for x in lam)
        if key in seen:
            continue
        gens = [tuple(phinv[x[p]] for p in phi) for x in lam_gens]
        seen[key] = HgsRecord(group_from_elements(gens, key, g), label)


def find_hgs(ctx: ExtensionContext, gtype: GroupType, options: EngineOptions | None = None,
             stats: FindStats | None = None, hol: Holomorph | None = None) -> list[HgsRecord]:
    """All Hopf Galois structures of type ``gtype`` on the extension ``ctx``.

    Records are ordered by the sorted element list of the regular subgroup.
    """
    options = options or EngineOptions()
    stats = stats if stats is not None else FindStats()
    if gtype.order != ctx.degree:
        raise ContextError(f"type {gtype.label} has order {gtype.order}, degree is {ctx.degree}")
    if hol is None:
        hol = holomorph_data(gtype.construct(), degree_cap=max(ctx.degree, gtype.order))
    if not may_embed(ctx.G, hol):
        return []
    H = hol.group
    if ctx.G.order() == H.order() and options.normal_shortcut:
        # G normalizes a structure N' and |G| = |Hol(N')|, so G = Norm(N') and N' is normal in G
        out = _records_normal(ctx, gtype)
        stats.classes += 1
        stats.gstars += 1 if out else 0
        stats.records += len(out)
        return out
    if ctx.G.order() == H.order():
        reps = [H]
    else:
        reps = _transitive_classes(hol, ctx.G.order(), options.subgroup_bound)
    seen: dict[frozenset, HgsRecord] = {}
    for K in reps:
        stats.classes += 1
        members = conjugates(H, K) if options.expand_conjugates else [K]
        for Gstar in members:
            _records_from(ctx, hol, Gstar, gtype.label, seen, stats)
    out = sorted(seen.values(), key=lambda r: r.key)
    stats.records += len(out)
    return out


# ---------------------------------------------------------------------------
# oracle

_REGULAR_CACHE: dict[int, list[PermGroup]] = {}


def regular_subgroups(g: int) -> list[PermGroup]:
    """Every regular subgroup of S_g, by closure over semiregular elements."""
    if g in _REGULAR_CACHE:
        return _REGULAR_CACHE[g]
    idt = ident(g)
    if g == 1:
        _REGULAR_CACHE[g] = [PermGroup([], 1)]
        return _REGULAR_CACHE[g]
    semireg = [x for x in symmetric_group(g).elements_raw
               if not is_ident(x) and len(set(cycle_lengths(x))) == 1 and g % len(cycle_lengths(x)) == 0]
    found: dict[frozenset, list[tuple]] = {}
    frontier = [(frozenset([idt]), [])]
    seen = {frozenset([idt])}
    while frontier:
        nxt = []
        for elems, gens in frontier:
            for x in semireg:
                if x in elems:
                    continue
                new = closure([x], g, base=elems, base_gens=gens, limit=g)
                if new is None or len(new) > g or any(not is_ident(y) and any(y[i] == i for i in range(g)) for y in new):
                    continue
                key = frozenset(new)
                if key in seen:
                    continue
                seen.add(key)
                if len(key) == g:
                    found[key] = gens + [x]
                else:
                    nxt.append((key, gens + [x]))
        frontier = nxt
    out = [group_from_elements(gens, elems, g) for elems, gens in found.items()]
    out.sort(key=lambda R: tuple(R.elements_raw))
    _REGULAR_CACHE[g] = out
    return out


def direct_hgs(ctx: ExtensionContext, gtype: GroupType, cap: int = DIRECT_ORACLE_CAP) -> list[HgsRecord]:
    """Oracle: regular subgroups of S_g of the given type normalized by G."""
    g = ctx.degree
    if g > cap:
        raise ContextError(f"direct oracle limited to degree <= {cap}")
    if gtype.order != g:
        raise ContextError(f"type {gtype.label} has order {gtype.order}, degree is {g}")
    N = gtype.construct()
    out = []
    for R in regular_subgroups(g):
        rs = R.element_set
        if not all(tuple(x[r[i]] for i in inv(x)) in rs for x in ctx.G.gens_raw for r in R.gens_raw):
            continue
        if find_isomorphism(R, N) is None:
            continue
        out.append(HgsRecord(R, gtype.label))
    return out
