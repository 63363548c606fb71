"""Machine checks of the degree 2p^n and 2p^2 results at small primes.

Each ``verify_*`` function returns a :class:`SuiteReport` listing named
checks with expected and actual values; nothing here raises on a failed
check.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Any

from .algos import GroupIso, automorphism_group, find_isomorphism, normalizer, subgroup_class_reps, table
from .engine import ExtensionContext, find_hgs
from .holomorph import Holomorph, _labelled_elements, holomorph_data
from .perm import PermError, PermGroup, mul, order_of
from .zoo import GroupType, _is_prime, automorphism_formula, groups_of_order, two_p2_label


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected: Any, actual: Any) -> Check:
        c = Check(name, expected, actual)
        self.checks.append(c)
        return c

    def extend(self, other: SuiteReport) -> None:
        self.checks.extend(other.checks)
        self.skipped.extend(other.skipped)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [dict(asdict(c), passed=c.passed) for c in self.checks],
            "skipped": list(self.skipped),
        }


def _check_prime(p: int) -> None:
    if p < 3 or not _is_prime(p):
        raise PermError(f"p must be an odd prime, got {p}")


# ---------------------------------------------------------------------------
# helpers on holomorphs

def _type(order: int, label: str) -> GroupType:
    for t in groups_of_order(order, degree_cap=order):
        if t.label == label:
            return t
    raise PermError(f"no type {label} of order {order}")


def _hol_of(t: GroupType) -> tuple[Holomorph, dict[str, tuple]]:
    """Holomorph of a zoo type, plus its named generators as raw perms."""
    hol = holomorph_data(t.construct(), degree_cap=t.order)
    names = {k: v.t for k, v in t.named_generators().items()}
    return hol, names


def aut_perm(hol: Holomorph, gens: list[tuple], images: list[tuple]) -> tuple:
    """The automorphism of N given on generators, as a permutation of N's points."""
    L = hol.regular
    iso = GroupIso(L, L, tuple(gens), tuple(images))
    if not iso.is_bijective():
        raise PermError("generator images do not define an automorphism")
    return tuple(iso.mapping[x][0] for x in _labelled_elements(L))


def _pw(x: tuple, k: int) -> tuple:
    y = tuple(range(len(x)))
    for _ in range(k % order_of(x)):
        y = mul(x, y)
    return y


def _sylow(G: PermGroup, p: int) -> PermGroup:
    n = G.order()
    q = 1
    while n % (q * p) == 0:
        q *= p
    return subgroup_class_reps(G, orders=[q])[0][0]


# ---------------------------------------------------------------------------
# arithmetic lemma

def check_lemma_orders(p: int, n: int) -> SuiteReport:
    """p + 1 has multiplicative order p^(n-1) modulo p^n."""
    _check_prime(p)
    if n < 1:
        raise PermError("n must be >= 1")
    rep = SuiteReport(f"lemma p={p} n={n}")
    m = p ** n
    order = 1
    x = (p + 1) % m
    while x != 1 % m:
        x = x * (p + 1) % m
        order += 1
    rep.add(f"order of {p + 1} mod {m}", p ** (n - 1), order)
    if n >= 2:
        rep.add(f"({p + 1})^{p ** (n - 2)} mod {m}", 1 + p ** (n - 1), pow(p + 1, p ** (n - 2), m))
        rep.add(f"({p + 1})^{p ** (n - 1)} mod {m}", 1, pow(p + 1, p ** (n - 1), m))
    else:
        rep.add(f"{p + 1} mod {p}", 1, (p + 1) % p)
    return rep


# ---------------------------------------------------------------------------
# cyclic type forces dihedral type

def verify_cyclic_implies_dihedral(p: int, n: int) -> SuiteReport:
    """A regular cyclic subgroup <sφ> of Hol(D_2p^n) whose normalizer there is the
    whole symmetric-group normalizer of a regular cyclic group."""
    _check_prime(p)
    g = 2 * p ** n
    rep = SuiteReport(f"cyclic-implies-dihedral p={p} n={n}")
    D = _type(g, f"D{g}")
    hol, nm = _hol_of(D)
    r, s = nm["r"], nm["s"]
    phi = aut_perm(hol, [r, s], [r, mul(r, s)])
    rep.add("order of φ", p ** n, order_of(phi))
    sphi = mul(s, phi)
    C = PermGroup([sphi], g)
    rep.add("order of sφ", g, order_of(sphi))
    rep.add("<sφ> orbit of 1", g, len(C.orbit(1)))
    rep.add("<sφ> regular", True, C.is_regular())
    norm = normalizer(hol.group, C).order()
    rep.add("|N_Hol(D)(<sφ>)|", 2 * p ** (2 * n - 1) * (p - 1), norm)
    hol_c = holomorph_data(_type(g, f"C{g}").construct(), degree_cap=g).group.order()
    rep.add("|N_Hol(D)(<sφ>)| = |Hol(C)|", hol_c, norm)
    return rep


# ---------------------------------------------------------------------------
# dihedral type excludes small-exponent types

def verify_dihedral_exclusion(p: int, n: int) -> SuiteReport:
    _check_prime(p)
    g = 2 * p ** n
    rep = SuiteReport(f"dihedral-exclusion p={p} n={n}")
    hol, _ = _hol_of(_type(g, f"D{g}"))
    H = hol.group
    rep.add("|Hol(D)|", 2 * p ** (3 * n - 1) * (p - 1), H.order())
    syl = _sylow(H, p)
    rep.add("|Syl_p(Hol(D))|", p ** (3 * n - 1), syl.order())
    small = [x for x in syl.elements_raw if order_of(x) < p ** n]
    rep.add("|F| (elements of order < p^n in Syl)", p ** (3 * n - 3), len(small))
    F = PermGroup(small, g)
    rep.add("F is a subgroup", len(small), F.order())
    rep.add("[F : F ∩ Stab(1)]", p ** (n - 1), len(F.orbit(1)))
    trans = [K for K, _ in subgroup_class_reps(H) if K.is_transitive()]
    rep.add("transitive subgroups of Hol(D) without elements of order p^n", 0,
            sum(1 for K in trans if p ** n not in set(table(K).orders)))
    for t in groups_of_order(g, degree_cap=g):
        N = t.construct()
        if p ** n in set(table(N).orders):
            continue
        Ht = holomorph_data(N, degree_cap=g).group
        rep.add(f"elements of order {p ** n} in Hol({t.label})", 0,
                sum(1 for o in table(Ht).orders if o == p ** n))
    return rep


# ---------------------------------------------------------------------------
# order 2p^2: the two abelian-by-dihedral implications

def verify_2p2_implication(p: int) -> SuiteReport:
    _check_prime(p)
    g = 2 * p * p
    rep = SuiteReport(f"2p2-implication p={p}")
    N5 = _type(g, two_p2_label(p, "generalized_dihedral"))
    hol, nm = _hol_of(N5)
    a, b, c = nm["a"], nm["b"], nm["s"]
    ainv, binv = _pw(a, -1), _pw(b, -1)
    phi1 = aut_perm(hol, [a, b, c], [ainv, binv, c])
    phi2 = aut_perm(hol, [a, b, c], [a, binv, c])
    specs = [
        ("F1", phi1, two_p2_label(p, "abelian"), 2 * p * p * (p * p - 1) * (p * p - p)),
        ("F2", phi2, two_p2_label(p, "dihedral_x_cyclic"), 2 * p ** 3 * (p - 1) ** 2),
    ]
    for name, phi, label, norm_order in specs:
        F = PermGroup([a, b, mul(c, phi)], g)
        target = _type(g, label)
        rep.add(f"{name} ≅ {label}", True, find_isomorphism(F, target.construct()) is not None)
        rep.add(f"{name} regular", True, F.is_regular())
        norm = normalizer(hol.group, F).order()
        rep.add(f"|N_Hol(F)| for {name}", norm_order, norm)
        hol_t = holomorph_data(target.construct(), degree_cap=g).group.order()
        rep.add(f"|N_Hol(F)| = |Hol({label})| for {name}", hol_t, norm)
    return rep


def verify_aut_orders(p: int) -> SuiteReport:
    """|Aut| of the five groups of order 2p^2 against closed forms."""
    _check_prime(p)
    g = 2 * p * p
    rep = SuiteReport(f"aut-orders p={p}")
    for t in groups_of_order(g, degree_cap=g):
        rep.add(f"|Aut({t.label})|", automorphism_formula(p, t.label), automorphism_group(t.construct()).order)
    return rep


def verify_sylow_shapes(p: int) -> SuiteReport:
    """Sylow p-subgroups of Hol(C_p x C_2p) and Hol(C_p x D_2p)."""
    _check_prime(p)
    g = 2 * p * p
    rep = SuiteReport(f"sylow-shapes p={p}")
    for kind, abelian in (("abelian", False), ("dihedral_x_cyclic", True)):
        label = two_p2_label(p, kind)
        H = holomorph_data(_type(g, label).construct(), degree_cap=g).group
        S = _sylow(H, p)
        gens = S.gens_raw
        is_ab = all(mul(x, y) == mul(y, x) for x in gens for y in gens)
        rep.add(f"|Syl_p(Hol({label}))|", p ** 3, S.order())
        rep.add(f"Syl_p(Hol({label})) abelian", abelian, is_ab)
        rep.add(f"exponent of Syl_p(Hol({label}))", p, max(table(S).orders))
    return rep


# ---------------------------------------------------------------------------
# the table of type sets for degree 2p^2

COROLLARY_COLUMNS = ("cyclic", "dihedral", "abelian", "dihedral_x_cyclic", "generalized_dihedral")

# (row name, Galois group as ("hol"|"regular", kind), expected Yes/No per column)
COROLLARY_ROWS = (
    ("Hol(D)", ("hol", "dihedral"), (False, True, False, False, False)),
    ("Hol(N5)", ("hol", "generalized_dihedral"), (False, False, False, False, True)),
    ("C", ("regular", "cyclic"), (True, True, False, False, False)),
    ("Hol(CxC)", ("hol", "abelian"), (False, False, True, False, True)),
    ("Hol(CxD)", ("hol", "dihedral_x_cyclic"), (False, False, False, True, True)),
    ("CxC", ("regular", "abelian"), (False, False, True, True, True)),
)

ALLOWED_TYPE_SETS = (
    frozenset({"dihedral"}),
    frozenset({"generalized_dihedral"}),
    frozenset({"dihedral", "cyclic"}),
    frozenset({"generalized_dihedral", "abelian"}),
    frozenset({"generalized_dihedral", "dihedral_x_cyclic"}),
    frozenset({"generalized_dihedral", "abelian", "dihedral_x_cyclic"}),
)


def row_label(p: int, name: str) -> str:
    kinds = {"D": "dihedral", "N5": "generalized_dihedral", "C": "cyclic", "CxC": "abelian", "CxD": "dihedral_x_cyclic"}
    for short, kind in sorted(kinds.items(), key=lambda kv: -len(kv[0])):
        if name == short:
            return two_p2_label(p, kind)
        if name == f"Hol({short})":
            return f"Hol({two_p2_label(p, kind)})"
    return name


def type_set_allowed(kinds: frozenset[str]) -> bool:
    return not kinds or kinds in ALLOWED_TYPE_SETS


@dataclass
class CorollaryRow:
    name: str
    label: str
    present: tuple[bool, ...] | None
    expected: tuple[bool, ...]
    counts: tuple[int, ...] | None = None
    seconds: float = 0.0

    @property
    def cells(self) -> str:
        if self.present is None:
            return "skipped"
        return " ".join("Y" if x else "N" for x in self.present)


def corollary_context(p: int, how: str, kind: str) -> ExtensionContext:
    g = 2 * p * p
    t = _type(g, two_p2_label(p, kind))
    G = t.construct() if how == "regular" else holomorph_data(t.construct(), degree_cap=g).group
    return ExtensionContext.from_group(G, row_label(p, f"Hol({kind})") if how == "hol" else t.label)


def corollary_row(p: int, name: str) -> CorollaryRow:
    row_def = {r[0]: r for r in COROLLARY_ROWS}[name]
    _, (how, kind), expected = row_def
    g = 2 * p * p
    start = time.perf_counter()
    ctx = corollary_context(p, how, kind)
    present, counts = [], []
    for col in COROLLARY_COLUMNS:
        t = _type(g, two_p2_label(p, col))
        recs = find_hgs(ctx, t)
        counts.append(len(recs))
        present.append(bool(recs))
    return CorollaryRow(name, row_label(p, name), tuple(present), expected, tuple(counts),
                        time.perf_counter() - start)


def verify_corollary_table(p: int = 3, skip: frozenset[str] = frozenset(),
                           time_budget: float | None = None) -> tuple[SuiteReport, list[CorollaryRow]]:
    """Yes/No pattern of structure types for six Galois groups of degree 2p^2.

    Rows in ``skip`` (or any row once ``time_budget`` seconds have been
    used) are reported as skipped, never silently dropped.
    """
    _check_prime(p)
    rep = SuiteReport(f"corollary p={p}")
    rows = []
    start = time.perf_counter()
    for name, _, expected in COROLLARY_ROWS:
        if name in skip or (time_budget is not None and time.perf_counter() - start > time_budget):
            rows.append(CorollaryRow(name, row_label(p, name), None, expected))
            rep.skipped.append(f"row {row_label(p, name)}")
            continue
        row = corollary_row(p, name)
        rows.append(row)
        rep.add(f"row {row.label}", expected, row.present)
        kinds = frozenset(k for k, x in zip(COROLLARY_COLUMNS, row.present) if x)
        rep.add(f"row {row.label} type set allowed", True, type_set_allowed(kinds))
    rep.seconds = time.perf_counter() - start
    return rep, rows


# ---------------------------------------------------------------------------
# suites

SUITES = ("lemma", "2pn", "2p2", "aut", "corollary")


def run_suite(name: str, p: int = 3, skip_rows: frozenset[str] = frozenset(),
              time_budget: float | None = None) -> SuiteReport:
    start = time.perf_counter()
    if name == "lemma":
        rep = SuiteReport("lemma")
        for n in range(1, 7):
            rep.extend(check_lemma_orders(p, n))
    elif name == "2pn":
        rep = SuiteReport("2pn")
        rep.extend(verify_cyclic_implies_dihedral(p, 1))
        rep.extend(verify_cyclic_implies_dihedral(p, 2))
        rep.extend(verify_dihedral_exclusion(p, 2))
    elif name == "2p2":
        rep = SuiteReport("2p2")
        rep.extend(verify_2p2_implication(p))
        rep.extend(verify_sylow_shapes(p))
    elif name == "aut":
        rep = verify_aut_orders(p)
        rep.suite = "aut"
    elif name == "corollary":
        rep, _ = verify_corollary_table(p, skip=skip_rows, time_budget=time_budget)
        rep.suite = "corollary"
    else:
        raise PermError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rep.seconds = time.perf_counter() - start
    return rep
