"""Per-degree summaries of Hopf Galois structure counts, and their output formats."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .catalog import CatalogEntry, candidates, transitive_groups
from .engine import EngineOptions, ExtensionContext, find_hgs
from .holomorph import holomorph_data
from .perm import DEFAULT_DEGREE_CAP, PermError, format_cycles
from .props import classify
from .zoo import group_type, groups_of_order

log = logging.getLogger(__name__)


class ResourceCapError(PermError):
    """A time budget or size cap was hit before the computation finished."""


@dataclass
class RunOptions:
    catalog: str | None = None
    jobs: int = 1
    time_budget: float | None = None
    seedless: bool = True
    validate: bool = True
    subgroup_bound: int = EngineOptions.subgroup_bound
    degree_cap: int = DEFAULT_DEGREE_CAP


# column order of the summary table
TABLE_COLUMNS = ("degree", "transitive_total", "max_candidates", "types_count", "hgs_total", "hgs_ac",
                 "bc_total", "bc_not_ac", "giso_total", "giso_galois")


@dataclass
class DegreeSummary:
    degree: int
    transitive_total: int
    max_candidates: int
    types_count: int
    hgs_total: int = 0
    hgs_ac: int = 0
    bc_total: int = 0
    bc_not_ac: int = 0
    giso_total: int = 0
    giso_galois: int = 0
    wall_time_seconds: float = 0.0

    def row(self) -> tuple[int, ...]:
        """The nine counts after the degree."""
        return tuple(getattr(self, c) for c in TABLE_COLUMNS[1:])

    def check_invariants(self) -> None:
        if not (self.hgs_ac <= self.hgs_total and self.bc_not_ac <= self.bc_total <= self.hgs_total
                and self.giso_galois <= self.giso_total <= self.hgs_total):
            raise AssertionError(f"inconsistent summary {self}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> DegreeSummary:
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


@dataclass
class GroupDetail:
    """Counts for one transitive group and one type."""

    group: str
    group_order: int
    type_label: str
    galois: bool
    hgs: int
    ac: int
    bc: int
    bc_not_ac: int
    giso: int

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> GroupDetail:
        return cls(**d)


@dataclass
class DegreeResult:
    summary: DegreeSummary
    details: list[GroupDetail] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"summary": self.summary.to_dict(), "details": [d.to_dict() for d in self.details]}

    @classmethod
    def from_dict(cls, d: dict) -> DegreeResult:
        return cls(DegreeSummary.from_dict(d["summary"]), [GroupDetail.from_dict(x) for x in d["details"]])


# ---------------------------------------------------------------------------
# work items

@dataclass(frozen=True)
class _Task:
    degree: int
    ident: str
    generators: tuple[tuple, ...]
    type_label: str
    degree_cap: int
    subgroup_bound: int


def _entry_group(task: _Task):
    from .perm import PermGroup
    return PermGroup(list(task.generators), task.degree)


def _run_task(task: _Task) -> GroupDetail:
    G = _entry_group(task)
    ctx = ExtensionContext.from_group(G, task.ident)
    t = group_type(task.type_label, task.degree, task.degree_cap)
    hol = holomorph_data(t.construct(), degree_cap=task.degree_cap)
    recs = find_hgs(ctx, t, EngineOptions(subgroup_bound=task.subgroup_bound), hol=hol)
    classify(recs, ctx)
    return GroupDetail(
        group=task.ident,
        group_order=G.order(),
        type_label=t.label,
        galois=ctx.is_galois,
        hgs=len(recs),
        ac=sum(1 for r in recs if r.almost_classical),
        bc=sum(1 for r in recs if r.bijective_corr),
        bc_not_ac=sum(1 for r in recs if r.bijective_corr and not r.almost_classical),
        giso=len({r.class_id for r in recs}),
    )


def _check_budget(start: float, options: RunOptions) -> None:
    if options.time_budget is not None and time.perf_counter() - start > options.time_budget:
        raise ResourceCapError(f"time budget of {options.time_budget}s exceeded")


def run_tasks(tasks: list[_Task], options: RunOptions) -> list[GroupDetail]:
    """Run tasks, in parallel if ``options.jobs > 1``; results keep task order."""
    start = time.perf_counter()
    if options.jobs <= 1 or len(tasks) <= 1:
        out = []
        for t in tasks:
            _check_budget(start, options)
            out.append(_run_task(t))
        return out
    with ProcessPoolExecutor(max_workers=options.jobs) as pool:
        futures = [pool.submit(_run_task, t) for t in tasks]
        out = []
        try:
            for fut in futures:
                remaining = None
                if options.time_budget is not None:
                    remaining = max(0.0, options.time_budget - (time.perf_counter() - start))
                try:
                    out.append(fut.result(timeout=remaining))
                except TimeoutError:
                    raise ResourceCapError(f"time budget of {options.time_budget}s exceeded") from None
        except BaseException:
            for fut in futures:
                fut.cancel()
            raise
        return out


def degree_tasks(g: int, entries: list[CatalogEntry], options: RunOptions,
                 group: int | None = None, type_label: str | None = None) -> tuple[list[_Task], int, int, int]:
    """Work items for degree g and (total, max candidates, type count)."""
    types = groups_of_order(g, degree_cap=options.degree_cap)
    if type_label is not None:
        if type_label not in {t.label for t in types}:
            raise PermError(f"no type {type_label!r} of order {g}; known: {', '.join(t.label for t in types)}")
    hols = [holomorph_data(t.construct(), degree_cap=options.degree_cap).group.order() for t in types]
    total, kept_count, kept = candidates(g, entries, hols)
    if group is not None:
        kept = [e for e in entries if e.index == group]
        if not kept:
            raise PermError(f"no group {g}T{group} in the catalog")
    tasks = [
        _Task(g, e.ident, tuple(x.t for x in e.generators), t.label, options.degree_cap, options.subgroup_bound)
        for e in kept
        for t in types
        if type_label is None or t.label == type_label
    ]
    return tasks, total, kept_count, len(types)


def summarize(g: int, total: int, kept: int, ntypes: int, details: list[GroupDetail],
              seconds: float = 0.0) -> DegreeSummary:
    s = DegreeSummary(g, total, kept, ntypes)
    for d in details:
        s.hgs_total += d.hgs
        s.hgs_ac += d.ac
        s.bc_total += d.bc
        s.bc_not_ac += d.bc_not_ac
        s.giso_total += d.giso
        if d.galois:
            s.giso_galois += d.giso
    s.wall_time_seconds = round(seconds, 3)
    s.check_invariants()
    return s


def run_degree(g: int, options: RunOptions | None = None, entries: list[CatalogEntry] | None = None,
               group: int | None = None, type_label: str | None = None) -> DegreeResult:
    """Aggregate structure counts over every candidate group of degree g and every type."""
    options = options or RunOptions()
    start = time.perf_counter()
    if g > options.degree_cap:
        raise ResourceCapError(f"degree {g} exceeds degree cap {options.degree_cap}")
    if entries is None:
        entries = transitive_groups(g, options.catalog, validate=options.validate)
    tasks, total, kept, ntypes = degree_tasks(g, entries, options, group, type_label)
    details = run_tasks(tasks, options)
    return DegreeResult(summarize(g, total, kept, ntypes, details, time.perf_counter() - start), details)


# ---------------------------------------------------------------------------
# output

def format_summaries(summaries: list[DegreeSummary], fmt: str, timing: bool = False) -> str:
    cols = list(TABLE_COLUMNS) + (["wall_time_seconds"] if timing else [])
    if fmt == "json":
        rows = [{c: getattr(s, c) for c in cols} for s in summaries]
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for s in summaries:
            w.writerow([getattr(s, c) for c in cols])
        return buf.getvalue()
    if fmt == "text":
        width = [max(len(c), 6) for c in cols]
        lines = ["  ".join(c.rjust(w) for c, w in zip(cols, width))]
        for s in summaries:
            lines.append("  ".join(str(getattr(s, c)).rjust(w) for c, w in zip(cols, width)))
        return "\n".join(lines) + "\n"
    raise PermError(f"unknown format {fmt!r}")


def format_details(details: list[GroupDetail], fmt: str) -> str:
    cols = [f.name for f in fields(GroupDetail)]
    if fmt == "json":
        return json.dumps([d.to_dict() for d in details], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for d in details:
            w.writerow([getattr(d, c) for c in cols])
        return buf.getvalue()
    lines = []
    for d in details:
        if d.hgs:
            lines.append(f"{d.group} (order {d.group_order}{', Galois' if d.galois else ''}) type {d.type_label}: "
                         f"{d.hgs} structures, {d.ac} almost classical, {d.bc} bijective, {d.giso} G-iso classes")
    return "\n".join(lines) + ("\n" if lines else "")


def describe_records(recs, ctx: ExtensionContext) -> list[dict]:
    """JSON-friendly description of classified records (1-based cycle notation)."""
    return [
        {
            "type": r.type_label,
            "generators": [format_cycles(x) for x in r.N_image.gens_raw],
            "almost_classical": r.almost_classical,
            "bijective_corr": r.bijective_corr,
            "class_id": r.class_id,
        }
        for r in recs
    ]
