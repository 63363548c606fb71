"""Transitive permutation groups up to conjugacy.

Degrees up to 8 are enumerated from the subgroup classes of S_g; higher
degrees are read from line-oriented catalog files::

    degree 13
    group 1 order 13 name C13
    (1,2,3,4,5,6,7,8,9,10,11,12,13)
    end

Catalog files ship with the package (``hopfgal/data``) and can be overridden
with ``--catalog`` or the ``HOPFGAL_CATALOG_DIR`` environment variable.
"""

from __future__ import annotations

import hashlib
import logging
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import factorial
from pathlib import Path
from typing import Iterable, Sequence

from .algos import derived_series, subgroup_class_reps
from .perm import Perm, PermError, PermGroup, cycle_type, format_cycles, inv, parse_perm, symmetric_group

log = logging.getLogger(__name__)

ENV_CATALOG_DIR = "HOPFGAL_CATALOG_DIR"
ENV_CACHE_DIR = "HOPFGAL_CACHE_DIR"
MAX_ENUMERATED_DEGREE = 8
FULL_VALIDATION_MAX_DEGREE = 12
HISTOGRAM_ORDER_LIMIT = 1_000_000
EXACT_CONJUGACY_ORDER_LIMIT = 5000


class CatalogError(PermError):
    pass


@dataclass(eq=False)
class CatalogEntry:
    degree: int
    index: int
    generators: list[Perm]
    order: int
    name: str | None = None
    local: bool = False

    @cached_property
    def group(self) -> PermGroup:
        return PermGroup(self.generators, self.degree)

    @property
    def ident(self) -> str:
        return f"{self.degree}T{self.index}"

    def __repr__(self) -> str:
        return f"CatalogEntry({self.ident}, order={self.order}, name={self.name!r})"


# ---------------------------------------------------------------------------
# enumeration

def _sort_key(G: PermGroup):
    return G.order(), tuple(G.elements_raw)


def enumerate_transitive(g: int) -> list[CatalogEntry]:
    """Transitive subgroups of S_g up to conjugacy, for g <= 8.

    Entries are ordered by (order, sorted element list of the representative
    found) and numbered from 1 in that order; the numbering is local to this
    package.
    """
    if not 1 <= g <= MAX_ENUMERATED_DEGREE:
        raise CatalogError(f"self-enumeration supports 1 <= g <= {MAX_ENUMERATED_DEGREE}, got {g}")
    if g == 1:
        return [CatalogEntry(1, 1, [], 1, "S1", local=True)]
    Sg = symmetric_group(g)
    reps = [H for H, _ in subgroup_class_reps(Sg, bound=factorial(g)) if H.is_transitive()]
    reps.sort(key=_sort_key)
    out = []
    for k, H in enumerate(reps, 1):
        gens = [Perm.raw(x) for x in (H.gens_raw or [Sg.elements_raw[0]])]
        out.append(CatalogEntry(g, k, gens, H.order(), local=True))
    return out


# ---------------------------------------------------------------------------
# file format

def parse_catalog(text: str, source: str = "<string>") -> list[CatalogEntry]:
    degree = None
    entries: list[CatalogEntry] = []
    cur = None

    def err(lineno: int, msg: str) -> CatalogError:
        return CatalogError(f"{source}:{lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        if words[0] == "degree":
            if degree is not None or len(words) != 2 or not words[1].isdigit():
                raise err(lineno, "bad or repeated degree header")
            degree = int(words[1])
            continue
        if degree is None:
            raise err(lineno, "missing 'degree <g>' header")
        if words[0] == "group":
            if cur is not None:
                raise err(lineno, "'group' before 'end' of previous group")
            if len(words) < 4 or words[2] != "order" or not words[1].isdigit() or not words[3].isdigit():
                raise err(lineno, "expected 'group <k> order <m> [name <string>]'")
            name = None
            if len(words) > 4:
                if words[4] != "name" or len(words) < 6:
                    raise err(lineno, "expected 'name <string>' after order")
                name = " ".join(words[5:])
            cur = CatalogEntry(degree, int(words[1]), [], int(words[3]), name)
            continue
        if words[0] == "end":
            if cur is None:
                raise err(lineno, "'end' without 'group'")
            entries.append(cur)
            cur = None
            continue
        if cur is None:
            raise err(lineno, f"unexpected line {line!r}")
        try:
            cur.generators.append(parse_perm(line, degree))
        except PermError as e:
            raise err(lineno, str(e)) from None
    if cur is not None:
        raise CatalogError(f"{source}: unterminated group {cur.index}")
    if degree is None:
        raise CatalogError(f"{source}: empty catalog")
    return entries


def format_catalog(entries: Sequence[CatalogEntry], comment: str | None = None) -> str:
    if not entries:
        raise CatalogError("nothing to format")
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"degree {entries[0].degree}")
    for e in entries:
        head = f"group {e.index} order {e.order}"
        if e.name:
            head += f" name {e.name}"
        lines.append(head)
        lines.extend(format_cycles(p.t) for p in e.generators)
        lines.append("end")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    degree: int
    count: int
    conjugacy_checked: bool
    errors: list[str] = field(default_factory=list)
    undecided: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def _block_size(gens: Sequence[tuple], n: int, a: int, b: int) -> int:
    """Size of the smallest block containing points a and b."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((g[x], g[y]))
    root = find(a)
    return sum(1 for x in range(n) if find(x) == root)


def _pair_orbit_lengths(gens: Sequence[tuple], n: int) -> tuple:
    seen = set()
    lengths = []
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) in seen:
                continue
            seen.add((a, b))
            queue = [(a, b)]
            for x, y in queue:
                for h in gens:
                    u, v = h[x], h[y]
                    if u > v:
                        u, v = v, u
                    if (u, v) not in seen:
                        seen.add((u, v))
                        queue.append((u, v))
            lengths.append(len(queue))
    return tuple(sorted(lengths))


def _invariants(G: PermGroup, tier: int) -> tuple:
    if tier == 0:
        stab = G.point_stabilizer(1)
        return G.order(), tuple(sorted(len(o) for o in stab.orbits()))
    if tier == 1:
        n = G.degree
        blocks = tuple(sorted(_block_size(G.gens_raw, n, 0, x) for x in range(1, n)))
        return blocks, _pair_orbit_lengths(G.gens_raw, n), tuple(H.order() for H in derived_series(G))
    if tier == 2 and G.order() <= HISTOGRAM_ORDER_LIMIT:
        return tuple(sorted(Counter(cycle_type(x) for x in G.elements_raw).items()))
    return None


def conjugate_in_symmetric(H1: PermGroup, H2: PermGroup) -> Perm | None:
    """A permutation s with s H1 s^-1 = H2 for transitive H1, H2, or None.

    Backtracks over images of the generators of H1 in H2; with s(1) = 1
    (always attainable by transitivity of H2) those images determine s.
    """
    n = H1.degree
    if H1.order() != H2.order() or H2.degree != n:
        return None
    if not (H1.is_transitive() and H2.is_transitive()):
        raise CatalogError("exact conjugacy test needs transitive groups")
    gens = list(H1.gens_raw)
    by_type = defaultdict(list)
    for r in H2.elements_raw:
        by_type[cycle_type(r)].append(r)
    cands = [by_type[cycle_type(h)] for h in gens]
    order = sorted(range(len(gens)), key=lambda i: len(cands[i]))
    gens = [gens[i] for i in order]
    cands = [cands[i] for i in order]
    ginv = [inv(h) for h in gens]

    def propagate(sigma: dict, k: int, imgs: list, rinv: list) -> dict | None:
        sigma = dict(sigma)
        used = set(sigma.values())
        queue = list(sigma)
        for x in queue:
            sx = sigma[x]
            for j in range(k):
                for y, v in ((gens[j][x], imgs[j][sx]), (ginv[j][x], rinv[j][sx])):
                    w = sigma.get(y)
                    if w is None:
                        if v in used:
                            return None
                        sigma[y] = v
                        used.add(v)
                        queue.append(y)
                    elif w != v:
                        return None
        return sigma

    def rec(k: int, sigma: dict, imgs: list, rinv: list):
        if k == len(gens):
            return sigma if len(sigma) == n else None
        for r in cands[k]:
            s2 = propagate(sigma, k + 1, imgs + [r], rinv + [inv(r)])
            if s2 is not None:
                res = rec(k + 1, s2, imgs + [r], rinv + [inv(r)])
                if res is not None:
                    return res
        return None

    sigma = rec(0, {0: 0}, [], [])
    if sigma is None:
        return None
    return Perm.raw(tuple(sigma[i] for i in range(n)))


def validate_catalog(entries: Sequence[CatalogEntry], full: bool | None = None) -> ValidationReport:
    """Check orders and transitivity; with ``full``, also pairwise non-conjugacy.

    ``full`` defaults to True up to degree 12.  Non-conjugacy is shown by
    invariants of increasing cost; pairs that no invariant separates are
    settled by an exact search when small, and otherwise listed as
    undecided.
    """
    if not entries:
        return ValidationReport(0, 0, False, ["empty catalog"])
    g = entries[0].degree
    if full is None:
        full = g <= FULL_VALIDATION_MAX_DEGREE
    rep = ValidationReport(g, len(entries), bool(full))
    seen_idx = set()
    for e in entries:
        if e.degree != g:
            rep.errors.append(f"{e.ident}: mixed degrees in one catalog")
            continue
        if e.index in seen_idx:
            rep.errors.append(f"{e.ident}: duplicate index")
        seen_idx.add(e.index)
        G = e.group
        if G.order() != e.order:
            rep.errors.append(f"{e.ident}: declared order {e.order} but generators give {G.order()}")
        if factorial(g) % G.order():
            rep.errors.append(f"{e.ident}: order {G.order()} does not divide {g}!")
        if not G.is_transitive():
            rep.errors.append(f"{e.ident}: non-transitive entry")
    if not full or rep.errors:
        return rep
    buckets: list[list[CatalogEntry]] = [list(entries)]
    for tier in range(3):
        nxt = []
        for bucket in buckets:
            split = defaultdict(list)
            for e in bucket:
                split[_invariants(e.group, tier)].append(e)
            nxt.extend(sub for sub in split.values() if len(sub) > 1)
        buckets = nxt
    for bucket in buckets:
        for i, a in enumerate(bucket):
            for b in bucket[i + 1:]:
                if a.order <= EXACT_CONJUGACY_ORDER_LIMIT:
                    if conjugate_in_symmetric(a.group, b.group) is not None:
                        rep.errors.append(f"{a.ident} and {b.ident}: duplicate (conjugate) entries")
                else:
                    rep.undecided.append((a.index, b.index))
    return rep


# ---------------------------------------------------------------------------
# loading with a validation cache

def packaged_catalog_dir() -> Path:
    return Path(str(resources.files("hopfgal") / "data"))


def catalog_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(ENV_CATALOG_DIR)
    return Path(env) if env else packaged_catalog_dir()


def catalog_file(g: int, directory: str | os.PathLike | None = None) -> Path:
    return catalog_dir(directory) / f"degree{g}.txt"


def _cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "hopfgal"


def _cache_stamp(digest: str, full: bool) -> Path:
    return _cache_dir() / f"validated-{digest}-{'full' if full else 'basic'}.txt"


def load_catalog(path: str | os.PathLike, validate: bool = True, full: bool | None = None,
                 use_cache: bool = True) -> list[CatalogEntry]:
    """Read and (by default) validate a catalog file.

    Successful validations are remembered by content hash, so unchanged
    files are not revalidated.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise CatalogError(f"cannot read catalog {path}: {e}") from None
    entries = parse_catalog(data.decode("utf-8"), str(path))
    if not validate:
        return entries
    g = entries[0].degree if entries else 0
    full = g <= FULL_VALIDATION_MAX_DEGREE if full is None else full
    digest = hashlib.sha256(data).hexdigest()
    stamp = _cache_stamp(digest, full)
    if use_cache and stamp.exists():
        return entries
    if use_cache and not full and _cache_stamp(digest, True).exists():
        return entries
    report = validate_catalog(entries, full=full)
    if not report.ok:
        raise CatalogError(f"{path}: " + "; ".join(report.errors))
    for a, b in report.undecided:
        log.warning("%s: could not prove %dT%d and %dT%d non-conjugate", path, g, a, g, b)
    if use_cache:
        try:
            stamp.parent.mkdir(parents=True, exist_ok=True)
            stamp.write_text(f"{path.name}\nentries {len(entries)}\nsha256 {digest}\n")
        except OSError:
            log.debug("could not write catalog cache stamp %s", stamp)
    return entries


def transitive_groups(g: int, directory: str | os.PathLike | None = None,
                      validate: bool = True) -> list[CatalogEntry]:
    """The catalog for degree g: from a file if present, else self-enumerated (g <= 8)."""
    path = catalog_file(g, directory)
    if path.exists():
        return load_catalog(path, validate=validate)
    if g <= MAX_ENUMERATED_DEGREE:
        return enumerate_transitive(g)
    raise CatalogError(f"no catalog file for degree {g} at {path}")


# ---------------------------------------------------------------------------
# candidate filter

def candidates(g: int, entries: Sequence[CatalogEntry], hol_orders: Iterable[int] | None = None
               ) -> tuple[int, int, list[CatalogEntry]]:
    """(total, number of entries that fit in some holomorph, those entries).

    A group G can only occur if it embeds in Hol(N) for a type N of order g,
    so entries larger than every |Hol(N)| are dropped.
    """
    if hol_orders is None:
        from .holomorph import holomorph
        from .zoo import groups_of_order
        hol_orders = [holomorph(t.construct(), degree_cap=g).order() for t in groups_of_order(g, degree_cap=max(g, 31))]
    bound = max(hol_orders)
    kept = [e for e in entries if e.order <= bound]
    return len(entries), len(kept), kept
