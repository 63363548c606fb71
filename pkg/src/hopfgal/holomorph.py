"""Left and right regular representations, holomorphs and opposite groups."""

from __future__ import annotations

from dataclasses import dataclass

from .algos import automorphism_group, group_from_elements
from .perm import DEFAULT_DEGREE_CAP, Perm, PermError, PermGroup, inv, mul


@dataclass(frozen=True, eq=False)
class RegularRep:
    """A regular image of ``source``: point ``i + 1`` is ``elements[i]``.

    ``elements[0]`` is the identity and the image of ``elements[j]`` sends
    point 1 to point ``j + 1``.
    """

    source: PermGroup
    image: PermGroup
    elements: tuple[tuple, ...]

    @property
    def elem_order(self) -> list[Perm]:
        return [Perm.raw(x) for x in self.elements]

    def point_of(self, x: Perm | tuple) -> int:
        t = x.t if isinstance(x, Perm) else x
        return self.elements.index(t) + 1


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise PermError(f"group order {n} exceeds degree cap {cap}")


def _labelled_elements(R: PermGroup) -> list[tuple]:
    """Elements of a regular group R listed so that the j-th one sends 1 to j."""
    out: list[tuple] = [None] * R.degree
    for x in R.elements_raw:
        out[x[0]] = x
    return out


def _regular_images(N: PermGroup, side: str) -> RegularRep:
    if N.is_regular():
        elems = _labelled_elements(N)
    else:
        elems = list(N.elements_raw)  # identity sorts first
    index = {x: i for i, x in enumerate(elems)}
    if side == "left":
        gens = [tuple(index[mul(g, y)] for y in elems) for g in N.gens_raw]
    else:
        gens = [tuple(index[mul(y, inv(g))] for y in elems) for g in N.gens_raw]
    image = PermGroup(gens, len(elems))
    return RegularRep(N, image, tuple(elems))


def left_regular(N: PermGroup, degree_cap: int = DEFAULT_DEGREE_CAP) -> RegularRep:
    """λ(N): left translation on the element list.

    A group that is already regular is labelled through point 1 and is its
    own left regular image.
    """
    _check_cap(N.order(), degree_cap)
    return _regular_images(N, "left")


def right_regular(N: PermGroup, degree_cap: int = DEFAULT_DEGREE_CAP) -> RegularRep:
    """ρ(N): x acts by y ↦ y x^-1 on the same element list as left_regular."""
    _check_cap(N.order(), degree_cap)
    return _regular_images(N, "right")


def opposite(R: PermGroup) -> PermGroup:
    """Centralizer of a regular group R in the symmetric group on its points."""
    if not R.is_regular():
        raise PermError("opposite() needs a regular group")
    elems = _labelled_elements(R)
    # the element of R sending 1 to k is elems[k]; rho(n) sends k to elems[k](n^-1(1))
    gens = [tuple(e[inv(g)[0]] for e in elems) for g in R.gens_raw]
    opp = [tuple(e[m] for e in elems) for m in range(R.degree)]
    return group_from_elements(gens, opp, R.degree)


@dataclass(frozen=True, eq=False)
class Holomorph:
    """Hol(N) on the points of λ(N), with Aut(N) as the stabilizer of point 1."""

    rep: RegularRep
    group: PermGroup
    aut_perms: tuple[tuple, ...]

    @property
    def regular(self) -> PermGroup:
        return self.rep.image

    @property
    def aut_order(self) -> int:
        return len(self.aut_perms)


_HOL_CACHE: dict[tuple, Holomorph] = {}


def holomorph_data(N: PermGroup, degree_cap: int = DEFAULT_DEGREE_CAP) -> Holomorph:
    rep = left_regular(N, degree_cap)
    L = rep.image
    key = (L.degree, tuple(sorted(L.elements_raw)))
    cached = _HOL_CACHE.get(key)
    if cached is not None and cached.rep.elements == rep.elements:
        return cached
    elems = _labelled_elements(L)
    aut = automorphism_group(L)
    perms = sorted(tuple(a.mapping[x][0] for x in elems) for a in aut.autos)
    gens = list(L.gens_raw)
    H = PermGroup(gens, L.degree)
    target = L.order() * len(perms)
    for p in perms:
        if H.order() == target:
            break
        if p not in H:
            gens.append(p)
            H = PermGroup(gens, L.degree)
    if H.order() != target:
        raise PermError("holomorph order mismatch")
    hol = Holomorph(rep, H, tuple(perms))
    _HOL_CACHE[key] = hol
    return hol


def holomorph(N: PermGroup, degree_cap: int = DEFAULT_DEGREE_CAP) -> PermGroup:
    """Hol(N) = λ(N)·Aut(N) as a permutation group of degree |N|."""
    return holomorph_data(N, degree_cap).group
