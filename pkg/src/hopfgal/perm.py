"""Permutations of {1..n} and permutation groups with stabilizer chains.

Points are 1-based in every public signature and in the textual cycle
notation.  Internally a permutation is a tuple ``t`` of 0-based images
(``t[i]`` is the image of point ``i + 1`` minus one); the helpers ``mul``,
``inv`` and friends operate on those raw tuples and are used by the hot
loops elsewhere in the package.

Products follow function composition: ``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

import re
from functools import cached_property
from math import factorial, gcd
from typing import Iterable, Iterator, Sequence

DEFAULT_DEGREE_CAP = 31


class PermError(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw tuple helpers

def mul(a: tuple, b: tuple) -> tuple:
    """a∘b on raw tuples (apply b first)."""
    return tuple(map(a.__getitem__, b))


def inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(c: tuple, x: tuple) -> tuple:
    """c x c^-1."""
    ci = inv(c)
    return tuple(c[x[i]] for i in ci)


def ident(n: int) -> tuple:
    return tuple(range(n))


def is_ident(a: tuple) -> bool:
    return all(i == x for i, x in enumerate(a))


def power(a: tuple, k: int) -> tuple:
    n = len(a)
    if k < 0:
        a, k = inv(a), -k
    result = tuple(range(n))
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def cycle_lengths(a: tuple) -> list[int]:
    seen = [False] * len(a)
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            k += 1
        lengths.append(k)
    return lengths


def cycle_type(a: tuple) -> tuple:
    return tuple(sorted(cycle_lengths(a)))


def order_of(a: tuple) -> int:
    o = 1
    for k in cycle_lengths(a):
        o = o * k // gcd(o, k)
    return o


def first_moved(a: tuple) -> int | None:
    for i, x in enumerate(a):
        if i != x:
            return i
    return None


# ---------------------------------------------------------------------------
# Perm

class Perm:
    """A bijection of {1..n}."""

    __slots__ = ("t",)

    def __init__(self, images: Sequence[int]):
        n = len(images)
        t = tuple(int(x) - 1 for x in images)
        if sorted(t) != list(range(n)):
            raise PermError(f"not a permutation of 1..{n}: {list(images)}")
        self.t = t

    @classmethod
    def raw(cls, t: tuple) -> Perm:
        p = object.__new__(cls)
        p.t = t
        return p

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls.raw(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.t)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.t)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= len(self.t):
            raise PermError(f"point {point} out of range 1..{len(self.t)}")
        return self.t[point - 1] + 1

    def __mul__(self, other: Perm) -> Perm:
        if not isinstance(other, Perm):
            return NotImplemented
        if len(other.t) != len(self.t):
            raise PermError("degree mismatch")
        return Perm.raw(mul(self.t, other.t))

    def __pow__(self, k: int) -> Perm:
        return Perm.raw(power(self.t, k))

    def inverse(self) -> Perm:
        return Perm.raw(inv(self.t))

    def order(self) -> int:
        return order_of(self.t)

    def is_identity(self) -> bool:
        return is_ident(self.t)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.t)):
            if i in seen or self.t[i] == i:
                continue
            cyc = [i + 1]
            seen.add(i)
            j = self.t[i]
            while j != i:
                seen.add(j)
                cyc.append(j + 1)
                j = self.t[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.t == other.t

    def __lt__(self, other: Perm) -> bool:
        return self.t < other.t

    def __hash__(self) -> int:
        return hash(self.t)

    def __str__(self) -> str:
        return format_cycles(self.t)

    def __repr__(self) -> str:
        return f"Perm<{len(self.t)}>{format_cycles(self.t)}"


def format_cycles(t: tuple) -> str:
    return "".join("(" + ",".join(map(str, c)) + ")" for c in Perm.raw(t).cycles()) or "()"


def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Permutation of {1..degree} acting as the given disjoint cycles."""
    img = list(range(degree))
    used: set[int] = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 1 <= x <= degree:
                raise PermError(f"point {x} out of range 1..{degree}")
            if x in used:
                raise PermError(f"point {x} repeated across cycles")
            used.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return Perm.raw(tuple(img))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int) -> Perm:
    """Parse disjoint cycle notation such as ``(1,2,3)(4,5)``; ``()`` is the identity."""
    s = text.strip()
    if not s:
        raise PermError("empty permutation text")
    if _CYCLE_RE.sub("", s).strip():
        raise PermError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(s):
        body = body.strip()
        if not body:
            continue
        try:
            cycles.append([int(x) for x in re.split(r"[,\s]+", body) if x])
        except ValueError:
            raise PermError(f"malformed cycle notation: {text!r}") from None
    return from_cycles(degree, cycles)


# ---------------------------------------------------------------------------
# stabilizer chain

class _Chain:
    """Base, strong generators per level and explicit transversals.

    ``levels[i]`` holds ``(gens, trans)``: the strong generators fixing the
    first ``i`` base points and a dict mapping each orbit point of
    ``base[i]`` to a raw element carrying ``base[i]`` there.
    """

    def __init__(self, n: int, gens: list[tuple], base_prefix: Sequence[int] = ()):
        self.n = n
        self.idt = tuple(range(n))
        self.base: list[int] = []
        self.gens: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        self.done: list[set] = []
        for b in base_prefix:
            self._add_level(b)
        self._build([g for g in gens if not is_ident(g)])

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: self.idt})
        self.done.append(set())

    def _extend_orbit(self, i: int) -> None:
        trans = self.trans[i]
        gens = self.gens[i]
        queue = list(trans)
        k = 0
        while k < len(queue):
            b = queue[k]
            k += 1
            u = trans[b]
            for s in gens:
                c = s[b]
                if c not in trans:
                    trans[c] = mul(s, u)
                    queue.append(c)

    def strip(self, h: tuple, start: int = 0) -> tuple[tuple, int]:
        for l in range(start, len(self.base)):
            c = h[self.base[l]]
            u = self.trans[l].get(c)
            if u is None:
                return h, l
            if c != self.base[l]:
                h = mul(inv(u), h)
        return h, len(self.base)

    def _add_strong(self, r: tuple, lo: int, hi: int) -> None:
        if hi == len(self.base):
            self._add_level(first_moved(r))
        for l in range(lo, hi + 1):
            self.gens[l].append(r)
            self._extend_orbit(l)

    def _build(self, gens: list[tuple]) -> None:
        for g in gens:
            r, j = self.strip(g)
            if j < len(self.base) or not is_ident(r):
                self._add_strong(r, 0, j)
        i = len(self.base) - 1
        while i >= 0:
            restart = None
            trans = self.trans[i]
            done = self.done[i]
            gens = self.gens[i]
            for b in list(trans):
                u = trans[b]
                for si, s in enumerate(gens):
                    if (b, si) in done:
                        continue
                    done.add((b, si))
                    su = mul(s, u)
                    v = trans[su[self.base[i]]]
                    if su == v:
                        continue
                    r, j = self.strip(mul(inv(v), su), i + 1)
                    if j < len(self.base) or not is_ident(r):
                        self._add_strong(r, i + 1, j)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = min(restart, len(self.base) - 1)
            else:
                i -= 1

    def order(self) -> int:
        o = 1
        for t in self.trans:
            o *= len(t)
        return o

    def contains(self, h: tuple) -> bool:
        r, j = self.strip(h)
        return j == len(self.base) and is_ident(r)


class PermGroup:
    """Permutation group given by generators, with a stabilizer chain.

    Instances are immutable once built; derived data (element list, orbits)
    is cached lazily.
    """

    def __init__(self, generators: Iterable[Perm | tuple], degree: int | None = None,
                 base_prefix: Sequence[int] = ()):
        raw = [g.t if isinstance(g, Perm) else tuple(g) for g in generators]
        if degree is None:
            if not raw:
                raise PermError("degree required for a group without generators")
            degree = len(raw[0])
        for g in raw:
            if len(g) != degree:
                raise PermError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.gens_raw: list[tuple] = raw
        self._chain = _Chain(degree, raw, [b - 1 for b in base_prefix])

    @property
    def generators(self) -> list[Perm]:
        return [Perm.raw(g) for g in self.gens_raw]

    def order(self) -> int:
        return self._chain.order()

    def __len__(self) -> int:
        return self.order()

    def __contains__(self, p: Perm | tuple) -> bool:
        t = p.t if isinstance(p, Perm) else p
        return len(t) == self.degree and self._chain.contains(t)

    def contains(self, p: Perm | tuple) -> bool:
        return p in self

    @property
    def base(self) -> list[int]:
        return [b + 1 for b in self._chain.base]

    def _check_point(self, point: int) -> None:
        if not 1 <= point <= self.degree:
            raise PermError(f"point {point} out of range 1..{self.degree}")

    def orbit(self, point: int) -> frozenset[int]:
        self._check_point(point)
        return frozenset(x + 1 for x in orbit_raw(self.gens_raw, point - 1))

    def orbits(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for x in range(1, self.degree + 1):
            if x not in seen:
                o = self.orbit(x)
                seen |= o
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(orbit_raw(self.gens_raw, 0)) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def point_stabilizer(self, point: int) -> PermGroup:
        self._check_point(point)
        chain = self._chain
        if not chain.base or chain.base[0] != point - 1:
            chain = _Chain(self.degree, self.gens_raw, [point - 1])
        stab = PermGroup.__new__(PermGroup)
        stab.degree = self.degree
        stab.gens_raw = _dedup(chain.gens[1]) if len(chain.base) > 1 else []
        stab._chain = _Chain(self.degree, stab.gens_raw, chain.base[1:])
        return stab

    @cached_property
    def elements_raw(self) -> list[tuple]:
        """All elements as raw tuples, identity first."""
        elems = [self._chain.idt]
        for trans in reversed(self._chain.trans):
            us = [trans[b] for b in sorted(trans)]
            elems = [mul(u, x) for u in us for x in elems]
        elems.sort()
        return elems

    @cached_property
    def element_set(self) -> frozenset[tuple]:
        return frozenset(self.elements_raw)

    def elements(self) -> list[Perm]:
        return [Perm.raw(t) for t in self.elements_raw]

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements())

    def is_trivial(self) -> bool:
        return self.order() == 1

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(g in other for g in self.gens_raw)

    def same_group(self, other: PermGroup) -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()})"


def _dedup(gens: Iterable[tuple]) -> list[tuple]:
    seen = set()
    out = []
    for g in gens:
        if g not in seen:
            seen.add(g)
            out.append(g)
    return out


def orbit_raw(gens: Sequence[tuple], point: int) -> list[int]:
    seen = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return queue


def build_chain(generators: Sequence[Perm | tuple], degree: int | None = None) -> PermGroup:
    """Build a PermGroup (with verified stabilizer chain) from generators."""
    return PermGroup(generators, degree)


def order_divides_factorial(order: int, degree: int) -> bool:
    return factorial(degree) % order == 0


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    gens = [from_cycles(n, [(1, 2)]), from_cycles(n, [tuple(range(1, n + 1))])]
    return PermGroup(gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], n)
    gens = [from_cycles(n, [(i, i + 1, i + 2)]) for i in range(1, n - 1)]
    return PermGroup(gens)


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([from_cycles(n, [tuple(range(1, n + 1))])])
