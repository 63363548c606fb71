"""Almost-classical flag, Galois-correspondence test and G-isomorphism classes."""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .algos import _extend, all_subgroups, small_generating_set
from .engine import ExtensionContext, HgsRecord
from .holomorph import opposite
from .perm import PermError, PermGroup, inv, order_of


def _conj_by(x: tuple, xi: tuple, h: tuple) -> tuple:
    return tuple(x[h[i]] for i in xi)


def is_almost_classical(rec: HgsRecord, ctx: ExtensionContext) -> bool:
    """True iff the centralizer of N in Sym(g) lies in G.

    That centralizer is then the image of a normal complement of G' in G.
    """
    opp = opposite(rec.N_image)
    return all(x in ctx.G for x in opp.gens_raw)


def stable_subgroup_count(N: PermGroup, G: PermGroup) -> int:
    """Number of subgroups of N mapped to themselves by conjugation with G."""
    gens = [(x, inv(x)) for x in G.gens_raw]
    count = 0
    for P in all_subgroups(N):
        ps = P.element_set
        if all(_conj_by(x, xi, h) in ps for x, xi in gens for h in P.gens_raw):
            count += 1
    return count


def minimal_block(gens: Sequence[tuple], n: int, points) -> frozenset[int]:
    """Smallest block of <gens> containing the given 0-based points."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pts = list(points)
    queue = []
    for p in pts[1:]:
        a, b = find(pts[0]), find(p)
        if a != b:
            parent[b] = a
            queue.append((pts[0], p))
    while queue:
        x, y = queue.pop()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((g[x], g[y]))
    root = find(pts[0])
    return frozenset(x for x in range(n) if find(x) == root)


def blocks_containing_first(G: PermGroup) -> list[frozenset[int]]:
    """All blocks of G containing point 1 (0-based sets), from {1} to everything."""
    n = G.degree
    start = frozenset([0])
    seen = {start}
    queue = [start]
    for B in queue:
        for j in range(n):
            if j in B:
                continue
            C = minimal_block(G.gens_raw, n, sorted(B) + [j])
            if C not in seen:
                seen.add(C)
                queue.append(C)
    return sorted(seen, key=lambda b: (len(b), sorted(b)))


def intermediate_count(ctx: ExtensionContext) -> int:
    """Number of subgroups W with G' <= W <= G.

    Such W correspond to the blocks of G containing 1 (W is the setwise
    stabilizer of its orbit through 1).
    """
    cached = ctx.__dict__.get("_intermediate")
    if cached is None:
        cached = len(blocks_containing_first(ctx.G))
        ctx.__dict__["_intermediate"] = cached
    return cached


def has_bijective_correspondence(rec: HgsRecord, ctx: ExtensionContext) -> bool:
    return stable_subgroup_count(rec.N_image, ctx.G) == intermediate_count(ctx)


def _orbit_sizes(N: PermGroup, G: PermGroup) -> dict[tuple, int]:
    gens = [(x, inv(x)) for x in G.gens_raw]
    size: dict[tuple, int] = {}
    for n in N.elements_raw:
        if n in size:
            continue
        orb = [n]
        seen = {n}
        for y in orb:
            for x, xi in gens:
                z = _conj_by(x, xi, y)
                if z not in seen:
                    seen.add(z)
                    orb.append(z)
        for y in orb:
            size[y] = len(orb)
    return size


def equivariant_isomorphism(N1: PermGroup, N2: PermGroup, G: PermGroup) -> dict | None:
    """An isomorphism θ: N1 -> N2 with θ(g n g^-1) = g θ(n) g^-1 for g in G, or None."""
    if N1.order() != N2.order():
        return None
    s1, s2 = _orbit_sizes(N1, G), _orbit_sizes(N2, G)
    sig1 = {n: (order_of(n), s1[n]) for n in N1.elements_raw}
    sig2 = {n: (order_of(n), s2[n]) for n in N2.elements_raw}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return None
    by_sig: dict[tuple, list[tuple]] = {}
    for n in N2.elements_raw:
        by_sig.setdefault(sig2[n], []).append(n)
    freq = Counter(sig1.values())
    elems = sorted(N1.elements_raw, key=lambda n: (freq[sig1[n]], -order_of(n), n))
    gens = small_generating_set(elems, N1.degree)
    cands = [by_sig[sig1[g]] for g in gens]
    ggens = [(x, inv(x)) for x in G.gens_raw]
    size = N1.order()
    imgs: list[tuple] = []

    def rec(d: int):
        if d == len(gens):
            m = _extend(N1, gens, imgs, N2.degree)
            if m is None or len(m) != size or len(set(m.values())) != size:
                return None
            for n, t in m.items():
                for x, xi in ggens:
                    if m[_conj_by(x, xi, n)] != _conj_by(x, xi, t):
                        return None
            return m
        for c in cands[d]:
            imgs.append(c)
            if _extend(N1, gens[:d + 1], imgs, N2.degree) is not None:
                m = rec(d + 1)
                if m is not None:
                    return m
            imgs.pop()
        return None

    return rec(0)


def g_iso_classes(recs: Sequence[HgsRecord], ctx: ExtensionContext) -> list[int]:
    """Class ids (0, 1, ...) of the G-isomorphism partition, in record order.

    Almost-classical records are always alone in their class, so they are
    not compared with anything.
    """
    ids: list[int] = []
    reps: list[tuple[HgsRecord, int]] = []
    next_id = 0
    for r in recs:
        if r.N_image.degree != ctx.degree:
            raise PermError("record does not belong to this context")
        ac = r.almost_classical if r.almost_classical is not None else is_almost_classical(r, ctx)
        found = None
        if not ac:
            for rep, cid in reps:
                if rep.type_label == r.type_label and equivariant_isomorphism(rep.N_image, r.N_image, ctx.G) is not None:
                    found = cid
                    break
        if found is None:
            found = next_id
            next_id += 1
            if not ac:
                reps.append((r, found))
        ids.append(found)
    return ids


def classify(recs: Sequence[HgsRecord], ctx: ExtensionContext) -> None:
    """Fill in the flags and class ids of the records in place."""
    for r in recs:
        r.almost_classical = is_almost_classical(r, ctx)
        r.bijective_corr = has_bijective_correspondence(r, ctx)
    for r, cid in zip(recs, g_iso_classes(recs, ctx)):
        r.class_id = cid
