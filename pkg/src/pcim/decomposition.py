"""Decomposition of the attractor into periodic orbits and Cantor pieces.

The attractor is the union of the omega-limit sets of the one-sided limits
``d`` in D.  Each ``omega(d)`` is classified on its own:

* a certified periodic orbit when the exact orbit of ``d`` is captured by one;
* Cantor evidence when ``d`` lr-visits some boundary point; the piece is then
  generated by ``d_k^+`` for a ``c_k`` in a minimal class that ``d`` visits;
* undetermined otherwise (horizon too short, or ``d`` runs into Delta).

Fragments are merged into components (periodic orbits by exact equality,
Cantor pieces by minimal class) and the counting bounds on the number of
components are audited.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .atoms import AtomTree, Interval, attractor_enclosure, expand_atoms
from .maps import Evidence, MapSpec, boundary_data
from .orbit import DEFAULT_MAX_PERIOD, ExactOrbit, PeriodicOrbitCert, detect_eventual_periodicity
from .rational import format_rational
from .recurrence import (
    ClassGraph,
    DetectionConfig,
    LrRecurrenceReport,
    build_class_graph,
    detect_lr,
    periodic_report,
)
from .svg import Canvas

PERIODIC = "periodic"
CANTOR = "cantor-evidence"
UNDETERMINED = "undetermined"

PASS = "PASS"
FAIL = "FAIL"
CONDITIONAL = "conditional"


class BoundViolation(RuntimeError):
    """A fully determined decomposition breaks a counting bound."""


@dataclass(frozen=True)
class Budget:
    horizon: int = 10**4
    depth: int = 12
    detection: DetectionConfig | None = None
    max_period: int = DEFAULT_MAX_PERIOD

    def detection_for(self, spec: MapSpec) -> DetectionConfig:
        # ignore the first tenth of the orbit so transients are not taken for recurrence
        return self.detection or DetectionConfig.default(spec, self.horizon, burn_in=self.horizon // 10)


@dataclass(frozen=True)
class Fragment:
    """Classification of ``omega(d)`` for a single one-sided limit ``d``.

    ``hit_delta_at`` indexes the orbit of ``d`` itself: 0 when ``d`` lies on
    Delta, ``k`` when ``f^k(d)`` does.
    """

    label: str
    value: Fraction
    kind: str
    cert: PeriodicOrbitCert | None = None
    preperiod: int | None = None
    lr: LrRecurrenceReport | None = None
    generator: int | None = None
    evidence: str = ""
    notes: tuple[str, ...] = ()
    hit_delta_at: int | None = None


@dataclass(frozen=True)
class ComponentRecord:
    kind: str
    members: tuple[str, ...]
    cert: PeriodicOrbitCert | None = None
    generator: int | None = None
    generator_class: tuple[int, ...] = ()
    generating_limits: tuple[str, ...] = ()
    enclosure: tuple[Interval, ...] = ()
    evidence: str = ""
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class BoundAudit:
    name: str
    lhs: int
    rhs: int
    status: str


@dataclass(frozen=True)
class DecompositionReport:
    spec: MapSpec
    components: tuple[ComponentRecord, ...]
    undetermined: tuple[str, ...]
    N1: int
    N2: int
    n_D: int
    bound_audit: tuple[BoundAudit, ...]
    flags: dict[str, Any]
    enclosure: tuple[Interval, ...]
    enclosure_depth: int
    enclosure_error: Fraction
    graph: ClassGraph | None = None
    fragments: tuple[Fragment, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def undetermined_count(self) -> int:
        return len(self.undetermined)

    @property
    def fully_determined(self) -> bool:
        return not self.undetermined

    def periodic(self) -> list[ComponentRecord]:
        return [c for c in self.components if c.kind == PERIODIC]

    def cantor(self) -> list[ComponentRecord]:
        return [c for c in self.components if c.kind == CANTOR]

    def to_dict(self) -> dict[str, Any]:
        return report_to_dict(self)


# -- classification ---------------------------------------------------------


class _Workspace:
    """Per-map cache of periodicity results and lr reports, keyed by label."""

    def __init__(self, spec: MapSpec, budget: Budget):
        self.spec = spec
        self.budget = budget
        self.cfg = budget.detection_for(spec)
        self.bd = boundary_data(spec)
        self.values = dict(self.bd.labeled())
        self.periodic: dict[str, tuple[int, PeriodicOrbitCert] | None] = {}
        self.reports: dict[str, LrRecurrenceReport | None] = {}

    def periodicity(self, label: str) -> tuple[int, PeriodicOrbitCert] | None:
        if label not in self.periodic:
            d = self.values[label]
            if self.spec.in_delta(d):
                self.periodic[label] = None
            else:
                self.periodic[label] = detect_eventual_periodicity(
                    self.spec, d, self.budget.horizon, max_period=self.budget.max_period
                )
        return self.periodic[label]

    def report(self, label: str) -> LrRecurrenceReport | None:
        """lr report, or None when ``d`` itself lies on Delta."""
        if label not in self.reports:
            d = self.values[label]
            if self.spec.in_delta(d):
                self.reports[label] = None
            elif self.periodicity(label) is not None:
                self.reports[label] = periodic_report(self.spec, label, d, self.cfg)
            else:
                self.reports[label] = detect_lr(self.spec, label, self.cfg)
        return self.reports[label]

    def closed_reports(self, seeds: Iterable[int]) -> dict[str, LrRecurrenceReport]:
        """Reports for ``d_j^+`` over the down-closure of the given boundary indices."""
        todo = sorted(set(seeds))
        out: dict[str, LrRecurrenceReport] = {}
        seen: set[int] = set()
        while todo:
            j = todo.pop()
            if j in seen:
                continue
            seen.add(j)
            label = f"d{j}+"
            rep = self.report(label)
            if rep is None:
                continue
            out[label] = rep
            todo.extend(rep.lr_set - seen)
        return out


def _pick_generator(lr_set: frozenset[int], graph: ClassGraph) -> tuple[int | None, str]:
    minimal = set(graph.minimal)
    cands = sorted(i for i in lr_set if graph.class_of(i) in minimal)
    if cands:
        return cands[0], ""
    # evidence did not show a visited minimal class; fall back to one below
    below = sorted(
        g[0]
        for g in graph.minimal
        for i in lr_set
        if graph.class_of(i) is not None and graph.leq(g, graph.class_of(i))
    )
    if below:
        return below[0], "no visited boundary point lies in a minimal class; generator inferred from the order"
    return None, "no minimal class found below the visited boundary points"


def _classify(ws: _Workspace, label: str, graph: ClassGraph | None) -> Fragment:
    spec = ws.spec
    d = ws.values[label]
    h = ws.budget.horizon
    if spec.in_delta(d):
        return Fragment(
            label, d, UNDETERMINED, evidence="d lies on Delta",
            notes=("D is not contained in the set of points whose orbits avoid Delta",), hit_delta_at=0,
        )
    found = ws.periodicity(label)
    if found is not None:
        t, cert = found
        return Fragment(label, d, PERIODIC, cert=cert, preperiod=t, evidence="certified")
    rep = ws.report(label)
    assert rep is not None
    if rep.hit_delta_at is not None:
        return Fragment(
            label, d, UNDETERMINED, lr=rep,
            evidence=f"orbit reaches Delta at step {rep.hit_delta_at}",
            notes=("D is not contained in the set of points whose orbits avoid Delta",),
            hit_delta_at=rep.hit_delta_at,
        )
    if not rep.lr_set:
        return Fragment(label, d, UNDETERMINED, lr=rep, evidence=f"no periodic capture and no lr-visit within {h} steps")
    if graph is None:
        graph = build_class_graph(spec, ws.closed_reports(rep.lr_set), strict=False)
    gen, note = _pick_generator(rep.lr_set, graph)
    finest = max(rep.visit(i).level for i in rep.lr_set)
    eps = ws.cfg.epsilon_schedule[finest - 1]
    notes = [note] if note else []
    if not spec.flags.injective_per_piece:
        notes.append("unverified hypothesis: map is not injective on every piece")
    return Fragment(
        label, d, CANTOR, lr=rep, generator=gen,
        evidence=f"lr-visits {sorted(rep.lr_set)} down to distance {format_rational(eps)} within {rep.steps} steps",
        notes=tuple(notes),
    )


def classify_limit(spec: MapSpec, label: str, budget: Budget | None = None, graph: ClassGraph | None = None) -> Fragment:
    """Classify ``omega(d)`` for the one-sided limit named ``label`` (e.g. ``"d1+"``)."""
    ws = _Workspace(spec, budget or Budget())
    if label not in ws.values:
        raise KeyError(f"unknown one-sided limit {label!r}")
    return _classify(ws, label, graph)


# -- assembly ---------------------------------------------------------------


def _locate(cover: Sequence[Interval], lo_f: Sequence[float], orbit: ExactOrbit) -> int | None:
    """Index of the cover interval containing the orbit state, exactly."""
    xf = orbit.approx()
    k = bisect.bisect_right(lo_f, xf) - 1
    for j in (k, k - 1, k + 1):
        if 0 <= j < len(cover):
            iv = cover[j]
            x = orbit
            lo_ok = x.num * iv.lo.denominator >= iv.lo.numerator * x.den
            hi_ok = x.num * iv.hi.denominator <= iv.hi.numerator * x.den
            if lo_ok and hi_ok:
                return j
    return None


def _orbit_cover(spec: MapSpec, starts: Iterable[Fraction], cover: Sequence[Interval], horizon: int) -> tuple[set[int], int]:
    """Cover intervals visited by the orbits of ``starts``; also counts misses."""
    lo_f = [float(iv.lo) for iv in cover]
    hit: set[int] = set()
    misses = 0
    for x in starts:
        orbit = ExactOrbit(spec, x)
        while True:
            j = _locate(cover, lo_f, orbit)
            if j is None:
                misses += 1
            else:
                hit.add(j)
            if orbit.step >= horizon or orbit.piece is None:
                break
            orbit.advance()
    return hit, misses


def _audit(spec: MapSpec, n1: int, n2: int, n_d: int, undetermined: int) -> tuple[BoundAudit, ...]:
    n = spec.n_pieces

    def upper(name: str, lhs: int, rhs: int) -> BoundAudit:
        if lhs > rhs:
            return BoundAudit(name, lhs, rhs, FAIL)
        return BoundAudit(name, lhs, rhs, CONDITIONAL if undetermined else PASS)

    out = []
    low = n1 + n2
    out.append(BoundAudit("1 <= N1+N2", 1, low, PASS if low >= 1 else (CONDITIONAL if undetermined else FAIL)))
    out.append(upper("N1+N2 <= #D", n1 + n2, n_d))
    out.append(upper("N1+2*N2 <= 2(N-1)", n1 + 2 * n2, 2 * (n - 1)))
    if spec.flags.increasing_per_piece:
        out.append(upper("N1+N2 <= N", n1 + n2, n))
    return tuple(out)


def _d_in_xtilde(fragments: Sequence[Fragment]) -> Evidence:
    if any(f.hit_delta_at is not None for f in fragments):
        return Evidence.REFUTED
    if all(f.kind == PERIODIC for f in fragments):
        return Evidence.VERIFIED
    return Evidence.UNKNOWN


def assemble(
    spec: MapSpec,
    fragments: Sequence[Fragment],
    *,
    graph: ClassGraph | None = None,
    tree: AtomTree | None = None,
    budget: Budget | None = None,
) -> DecompositionReport:
    budget = budget or Budget()
    bd = boundary_data(spec)
    labels = [lab for lab, _ in bd.labeled()]
    if sorted(f.label for f in fragments) != sorted(labels):
        raise ValueError("assemble needs exactly one fragment per one-sided limit")
    tree = tree or expand_atoms(spec, budget.depth)
    cover = attractor_enclosure(tree)
    values = dict(bd.labeled())
    notes: list[str] = []

    periodic: dict[frozenset[Fraction], list[Fragment]] = {}
    cantor: dict[tuple[int, ...], list[Fragment]] = {}
    undetermined: list[str] = []
    for f in fragments:
        if f.kind == PERIODIC:
            assert f.cert is not None
            periodic.setdefault(f.cert.points, []).append(f)
        elif f.kind == CANTOR and f.generator is not None:
            key = graph.class_of(f.generator) if graph is not None else (f.generator,)
            cantor.setdefault(key or (f.generator,), []).append(f)
        else:
            undetermined.append(f.label)

    components: list[ComponentRecord] = []
    for pts in sorted(periodic, key=lambda s: min(s)):
        frs = periodic[pts]
        cert = frs[0].cert
        assert cert is not None
        # rotate to the smallest point for a canonical record
        j = cert.orbit.index(min(cert.orbit))
        components.append(
            ComponentRecord(
                PERIODIC, tuple(f.label for f in frs), cert=cert.rotated(j),
                evidence="certified", enclosure=tuple(Interval(p, p) for p in sorted(pts)),
            )
        )

    for key in sorted(cantor):
        frs = cantor[key]
        k = min(f.generator for f in frs if f.generator is not None)
        gen_labels = (f"d{k}+", f"d{k}-")
        starts = [values[lab] for lab in gen_labels if not spec.in_delta(values[lab])]
        hit, misses = _orbit_cover(spec, starts, cover, budget.horizon)
        c_k = spec.endpoints[k]
        hit |= {j for j, iv in enumerate(cover) if c_k in iv}
        enc = tuple(cover[j] for j in sorted(hit))
        rec_notes = sorted({n for f in frs for n in f.notes})
        if misses:
            rec_notes.append(f"{misses} generator orbit states fall outside Lambda_{tree.depth}")
        if graph is not None and key in graph.unconfirmed:
            rec_notes.append("minimality unconfirmed")
        components.append(
            ComponentRecord(
                CANTOR, tuple(f.label for f in frs), generator=k, generator_class=key,
                generating_limits=gen_labels, enclosure=enc,
                evidence="; ".join(sorted({f.evidence for f in frs})), notes=tuple(rec_notes),
            )
        )

    pts_seen: set[Fraction] = set()
    for c in components:
        if c.kind == PERIODIC:
            assert c.cert is not None
            if pts_seen & c.cert.points:
                raise AssertionError("periodic components overlap")
            pts_seen |= c.cert.points

    if len(cantor) > 1:
        notes.append(
            "several minimal classes generate Cantor pieces; finite evidence may leave comparable classes looking incomparable"
        )
    notes.append("only the right-sided order is built; the left-sided one is symmetric")

    n1, n2 = len(periodic), len(cantor)
    n_d = len(bd)
    audit = _audit(spec, n1, n2, n_d, len(undetermined))
    flags = spec.flags.to_dict()
    flags["D_in_Xtilde"] = _d_in_xtilde(fragments).value
    if any(a.status == FAIL for a in audit) and not undetermined and spec.flags.injective_per_piece and flags["D_in_Xtilde"] != Evidence.REFUTED.value:
        failed = ", ".join(f"{a.name} ({a.lhs} vs {a.rhs})" for a in audit if a.status == FAIL)
        raise BoundViolation(f"fully determined decomposition violates {failed}")

    return DecompositionReport(
        spec=spec,
        components=tuple(components),
        undetermined=tuple(undetermined),
        N1=n1,
        N2=n2,
        n_D=n_d,
        bound_audit=audit,
        flags=flags,
        enclosure=cover,
        enclosure_depth=tree.depth,
        enclosure_error=tree.error_bound(),
        graph=graph,
        fragments=tuple(fragments),
        notes=tuple(notes),
    )


def decompose(spec: MapSpec, budget: Budget | None = None, *, tree: AtomTree | None = None) -> DecompositionReport:
    """Full pipeline: classify every ``d``, build the class graph, assemble."""
    budget = budget or Budget()
    ws = _Workspace(spec, budget)
    labels = [lab for lab, _ in ws.bd.labeled()]
    reports = {}
    for lab in labels:
        rep = ws.report(lab)
        if rep is not None:
            reports[lab] = rep
    nodes = set().union(*(r.lr_set for r in reports.values())) if reports else set()
    graph = build_class_graph(spec, ws.closed_reports(nodes) | reports, strict=False) if nodes else None
    fragments = [_classify(ws, lab, graph) for lab in labels]
    return assemble(spec, fragments, graph=graph, tree=tree, budget=budget)


# -- brute-force cross-check ------------------------------------------------


@dataclass(frozen=True)
class CrossValidation:
    grid: int
    tail: int
    burn_in: int
    n_starts: int
    skipped_on_delta: int
    hit_delta: int
    checked: int
    covered: int
    worst_distance: Fraction | None
    worst_start: Fraction | None
    uncovered: tuple[Fraction, ...] = ()

    @property
    def fraction(self) -> float:
        return self.covered / self.checked if self.checked else 1.0


def grid_points(spec: MapSpec, grid: int) -> list[Fraction]:
    lo, hi = spec.endpoints[0], spec.endpoints[-1]
    if grid == 1:
        return [lo + (hi - lo) / 2]
    return [lo + (hi - lo) * Fraction(j, grid - 1) for j in range(grid)]


def _exact_dist(orbit: ExactOrbit, y: Fraction) -> Fraction:
    return abs(orbit.value() - y)


def cross_validate(
    spec: MapSpec,
    report: DecompositionReport,
    grid: int,
    tail: int,
    *,
    burn_in: int | None = None,
    points: Sequence[Fraction] | None = None,
) -> CrossValidation:
    """Check that orbit tails of many start points sit on the reported components.

    Each start is iterated ``tail`` steps; states from step ``burn_in`` on
    (default ``tail // 2``) must lie within the separation radius of a reported
    periodic orbit or inside a Cantor component's enclosure.  Once a state is
    within that radius of a periodic point, every later state stays within a
    shrinking distance of the same orbit, so iteration stops there.
    ``worst_distance`` bounds the distance from checked tail states to the
    nearest periodic point or enclosure interval.
    """
    burn = tail // 2 if burn_in is None else burn_in
    if not 0 <= burn <= tail:
        raise ValueError("burn_in must lie in [0, tail]")
    starts = list(points) if points is not None else grid_points(spec, grid)

    per: list[tuple[Fraction, Fraction]] = []  # (point, separation)
    for c in report.periodic():
        assert c.cert is not None
        per.extend((p, c.cert.separation) for p in c.cert.orbit)
    per.sort()
    per_f = [float(p) for p, _ in per]
    cant = sorted(iv for c in report.cantor() for iv in c.enclosure)
    cant_lo = [float(iv.lo) for iv in cant]

    skipped = hit_delta = checked = covered = 0
    worst: Fraction | None = None
    worst_start: Fraction | None = None
    uncovered: list[Fraction] = []

    def bump(d: Fraction, x0: Fraction) -> None:
        nonlocal worst, worst_start
        if worst is None or d > worst:
            worst, worst_start = d, x0

    for x0 in starts:
        if spec.in_delta(x0):
            skipped += 1
            continue
        orbit = ExactOrbit(spec, x0)
        ok = True
        hit = False
        while orbit.step < burn:
            if orbit.advance() is None:
                hit = True
                break
        while not hit:
            xf = orbit.approx()
            near = None
            if per:
                k = bisect.bisect_left(per_f, xf)
                for j in (k - 1, k):
                    if 0 <= j < len(per):
                        p, rho = per[j]
                        if orbit.dist_less(p, rho):
                            near = p
                            break
            if near is not None:
                bump(_exact_dist(orbit, near), x0)
                break
            if cant and _locate(cant, cant_lo, orbit) is not None:
                bump(Fraction(0), x0)
            else:
                ok = False
                x = orbit.value()
                cands = [abs(x - p) for p, _ in per] + [iv.distance(x) for iv in cant]
                if cands:
                    bump(min(cands), x0)
                break
            if orbit.step >= tail:
                break
            if orbit.advance() is None:
                hit = True
        if hit:
            hit_delta += 1
            continue
        checked += 1
        if ok:
            covered += 1
        else:
            uncovered.append(x0)

    return CrossValidation(
        grid, tail, burn, len(starts), skipped, hit_delta, checked, covered, worst, worst_start, tuple(uncovered)
    )


# -- serialization ----------------------------------------------------------


def _iv(iv: Interval) -> list[str]:
    return [format_rational(iv.lo), format_rational(iv.hi)]


def _cert_dict(cert: PeriodicOrbitCert) -> dict[str, Any]:
    return {
        "word": list(cert.word),
        "point": format_rational(cert.point),
        "period": cert.period,
        "separation": format_rational(cert.separation),
        "slope": format_rational(cert.slope),
        "intercept": format_rational(cert.intercept),
        "orbit": [format_rational(p) for p in cert.orbit],
    }


def report_to_dict(rep: DecompositionReport) -> dict[str, Any]:
    comps = []
    for c in rep.components:
        d: dict[str, Any] = {"kind": c.kind, "members": list(c.members), "evidence": c.evidence}
        if c.cert is not None:
            d["certificate"] = _cert_dict(c.cert)
        if c.kind == CANTOR:
            d["generator"] = f"c{c.generator}"
            d["generator_class"] = [f"c{i}" for i in c.generator_class]
            d["generating_limits"] = list(c.generating_limits)
            d["enclosure"] = [_iv(iv) for iv in c.enclosure]
        if c.notes:
            d["notes"] = list(c.notes)
        comps.append(d)
    frags = []
    for f in rep.fragments:
        fd: dict[str, Any] = {"label": f.label, "value": format_rational(f.value), "kind": f.kind, "evidence": f.evidence}
        if f.preperiod is not None:
            fd["preperiod"] = f.preperiod
        if f.lr is not None and not f.lr.certified_periodic:
            fd["lr_visited"] = [f"c{i}" for i in sorted(f.lr.lr_set)]
        if f.generator is not None:
            fd["generator"] = f"c{f.generator}"
        if f.hit_delta_at is not None:
            fd["hit_delta_at"] = f.hit_delta_at
        if f.notes:
            fd["notes"] = list(f.notes)
        frags.append(fd)
    out: dict[str, Any] = {
        "map": rep.spec.to_dict(),
        "hypothesis_flags": rep.flags,
        "N1": rep.N1,
        "N2": rep.N2,
        "undetermined": list(rep.undetermined),
        "undetermined_count": rep.undetermined_count,
        "#D": rep.n_D,
        "bound_audit": [{"bound": a.name, "lhs": a.lhs, "rhs": a.rhs, "status": a.status} for a in rep.bound_audit],
        "components": comps,
        "fragments": frags,
        "enclosure": {
            "depth": rep.enclosure_depth,
            "error": format_rational(rep.enclosure_error),
            "intervals": [_iv(iv) for iv in rep.enclosure],
        },
        "notes": list(rep.notes),
    }
    if rep.graph is not None:
        g = rep.graph
        out["classes"] = {
            "nodes": [[f"c{i}" for i in cl] for cl in g.nodes],
            "minimal": [[f"c{i}" for i in cl] for cl in g.minimal],
            "unconfirmed": [[f"c{i}" for i in cl] for cl in g.unconfirmed],
            "relation": [[f"c{i}", f"c{j}"] for i, j in sorted(g.relation)],
            "inconsistencies": list(g.inconsistencies),
        }
    return out


def write_report_json(rep: DecompositionReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report_to_dict(rep), indent=2) + "\n")


def spectral_svg(rep: DecompositionReport) -> Canvas:
    """X as a horizontal axis, Delta ticks, periodic points as dots, Cantor enclosures as bars."""
    spec = rep.spec
    width, height, m = 640.0, 160.0, 40.0
    lo, hi = spec.endpoints[0], spec.endpoints[-1]
    scale = (width - 2 * m) / float(hi - lo)

    def sx(v: Fraction) -> float:
        return m + float(v - lo) * scale

    cv = Canvas(width, height)
    y = height / 2
    cv.line(m, y, width - m, y, stroke="#555")
    for c in spec.endpoints:
        cv.line(sx(c), y - 6, sx(c), y + 6, stroke="#555")
    for c in spec.delta:
        cv.line(sx(c), y - 14, sx(c), y + 14, stroke="#c00", dash="3 2")
    for k, comp in enumerate(rep.cantor()):
        for iv in comp.enclosure:
            cv.rect(sx(iv.lo), y - 22 - 6 * k, float(iv.diam) * scale, 5, fill="#1f4e79")
    for comp in rep.periodic():
        assert comp.cert is not None
        for p in comp.cert.orbit:
            cv.circle(sx(p), y, 3.5, fill="#2e7d32")
    cv.text(m, height - 12, f"N1 = {rep.N1}, N2 = {rep.N2}, undetermined = {rep.undetermined_count}", size=11)
    cv.text(sx(lo), y + 28, format_rational(lo), size=10, anchor="middle")
    cv.text(sx(hi), y + 28, format_rational(hi), size=10, anchor="middle")
    return cv
