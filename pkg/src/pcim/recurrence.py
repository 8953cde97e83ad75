"""Left-right recurrence at the boundary points and the order on its classes.

A boundary point ``c_i`` (``1 <= i <= N-1``) is lr-recurrently visited by an
orbit when the orbit accumulates on it both from ``X_i`` (the left) and from
``X_{i+1}`` (the right).  Accumulation is not decidable from a finite orbit,
so :func:`detect_lr` grades evidence against a decreasing schedule of
distances and a minimum number of visits per side.

Write ``R(i, j)`` when ``c_i`` is lr-visited by the orbit of ``d_j^+``.  Two
points are equivalent when ``R`` holds both ways, and the class of ``c_i``
lies below the class of ``c_j`` when ``R(i, j)``.  The minimal classes of this
order are the ones that generate the Cantor pieces of the attractor.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .maps import MapSpec, boundary_data
from .orbit import ExactOrbit, StartOnDelta

LR_WITNESSED = "lr-witnessed"
ONE_SIDED = "one-sided-only"
NEVER_NEAR = "never-near"

LEFT = "left"
RIGHT = "right"


class OrderViolation(RuntimeError):
    """Witnessed relation data is not consistent with a partial order.

    With exact dynamics this cannot happen; it means the detection budget was
    too small to separate transient visits from recurrent ones.
    """


@dataclass(frozen=True)
class DetectionConfig:
    horizon: int
    epsilon_schedule: tuple[Fraction, ...]
    min_witnesses: int = 3
    burn_in: int = 0

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        eps = self.epsilon_schedule
        if not eps:
            raise ValueError("epsilon schedule is empty")
        if any(not a > b for a, b in zip(eps, eps[1:])) or not eps[-1] > 0:
            raise ValueError("epsilon schedule must be strictly decreasing and positive")
        if self.min_witnesses < 2:
            raise ValueError("min_witnesses must be >= 2")
        if not 0 <= self.burn_in < self.horizon:
            raise ValueError("burn_in must lie in [0, horizon)")

    @classmethod
    def default(cls, spec: MapSpec, horizon: int = 10**4, levels: int = 6, **kw) -> DetectionConfig:
        eps = tuple(spec.diam / 10**k for k in range(1, levels + 1))
        return cls(horizon, eps, **kw)


@dataclass(frozen=True)
class BoundaryVisits:
    """Evidence about one boundary point ``c_index``.

    ``level`` is the 1-based index into the schedule of the finest distance at
    which both sides collected enough visits (0 when not lr-witnessed);
    ``left_times``/``right_times`` are the first visit steps at that level.
    ``closest`` holds the smallest observed distance per side, as floats.
    """

    index: int
    status: str
    level: int
    epsilon: Fraction | None
    left_times: tuple[int, ...]
    right_times: tuple[int, ...]
    left_counts: tuple[int, ...]
    right_counts: tuple[int, ...]
    closest: tuple[float | None, float | None]


@dataclass(frozen=True)
class LrRecurrenceReport:
    subject: str
    start: Fraction
    config: DetectionConfig
    steps: int
    hit_delta_at: int | None
    visits: tuple[BoundaryVisits, ...]
    witness_log: tuple[tuple[int, int, str, float], ...] = ()
    certified_periodic: bool = False

    @property
    def lr_set(self) -> frozenset[int]:
        return frozenset(v.index for v in self.visits if v.status == LR_WITNESSED)

    def visit(self, i: int) -> BoundaryVisits:
        return self.visits[i - 1]


def resolve_subject(spec: MapSpec, x: Fraction | str) -> tuple[str, Fraction]:
    if isinstance(x, str) and x.startswith("d"):
        return x, boundary_data(spec).value(x)
    q = Fraction(x)
    return f"{q.numerator}/{q.denominator}", q


def periodic_report(spec: MapSpec, subject: str, start: Fraction, cfg: DetectionConfig) -> LrRecurrenceReport:
    """Report for an orbit certified to converge to a periodic orbit off Delta.

    Such an orbit stays a positive distance from Delta eventually, so no
    boundary point is lr-visited.
    """
    n = spec.n_pieces
    m = len(cfg.epsilon_schedule)
    empty = tuple(
        BoundaryVisits(i, NEVER_NEAR, 0, None, (), (), (0,) * m, (0,) * m, (None, None))
        for i in range(1, n)
    )
    return LrRecurrenceReport(subject, start, cfg, 0, None, empty, (), certified_periodic=True)


def detect_lr(spec: MapSpec, x: Fraction | str, cfg: DetectionConfig) -> LrRecurrenceReport:
    """Scan the exact orbit of ``x`` for one-sided approaches to every ``c_i``.

    A state in piece ``p`` approaches ``c_p`` from the left and ``c_{p-1}`` from
    the right.  Distances are screened in floating point and settled exactly
    whenever they fall near a schedule value.
    """
    subject, x0 = resolve_subject(spec, x)
    orbit = ExactOrbit(spec, x0)
    if orbit.piece is None:
        raise StartOnDelta(f"start point {x0} lies on Delta")
    n = spec.n_pieces
    eps = cfg.epsilon_schedule
    eps_f = [float(e) for e in eps]
    m_lv = len(eps)
    need = cfg.min_witnesses
    c = spec.endpoints
    c_f = [float(v) for v in c]
    # counts[i][side][L]: visits with distance < eps[L]
    counts = {i: ([0] * m_lv, [0] * m_lv) for i in range(1, n)}
    times = {i: ([[] for _ in eps], [[] for _ in eps]) for i in range(1, n)}
    best: dict[tuple[int, int], float] = {}
    log: list[tuple[int, int, str, float]] = []

    def level_of(dist_f: float, ci: Fraction) -> int:
        lv = 0
        for k in range(m_lv):
            e = eps_f[k]
            if dist_f < e * (1 - 1e-9):
                lv = k + 1
            elif dist_f <= e * (1 + 1e-9):
                if orbit.dist_less(ci, eps[k]):
                    lv = k + 1
                else:
                    break
            else:
                break
        return lv

    def record(i: int, side: int, step: int, xf: float) -> None:
        dist = c_f[i] - xf if side == 0 else xf - c_f[i]
        if dist < 0:
            dist = 0.0
        key = (i, side)
        if key not in best or dist < best[key]:
            best[key] = dist
            log.append((step, i, LEFT if side == 0 else RIGHT, dist))
        if dist >= eps_f[0] * (1 + 1e-9):
            return
        lv = level_of(dist, c[i])
        cnt = counts[i][side]
        tms = times[i][side]
        for k in range(lv):
            cnt[k] += 1
            if len(tms[k]) < need:
                tms[k].append(step)

    hit = None
    while True:
        p = orbit.piece
        if orbit.step >= cfg.burn_in:
            xf = orbit.approx()
            if p <= n - 1:
                record(p, 0, orbit.step, xf)
            if p >= 2:
                record(p - 1, 1, orbit.step, xf)
        if orbit.step >= cfg.horizon:
            break
        if orbit.advance() is None:
            hit = orbit.step
            break

    visits = []
    for i in range(1, n):
        lc, rc = counts[i]
        level = 0
        for k in range(m_lv):
            if lc[k] >= need and rc[k] >= need:
                level = k + 1
        if level:
            status = LR_WITNESSED
            lt, rt = tuple(times[i][0][level - 1]), tuple(times[i][1][level - 1])
        else:
            status = ONE_SIDED if (lc[0] or rc[0]) else NEVER_NEAR
            lt = rt = ()
        visits.append(
            BoundaryVisits(
                i,
                status,
                level,
                eps[level - 1] if level else None,
                lt,
                rt,
                tuple(lc),
                tuple(rc),
                (best.get((i, 0)), best.get((i, 1))),
            )
        )
    return LrRecurrenceReport(subject, x0, cfg, orbit.step, hit, tuple(visits), tuple(log))


class DisjointSet:
    def __init__(self, items: Iterable[int] = ()):
        self.parent: dict[int, int] = {}
        for it in items:
            self.parent[it] = it

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as representative, for stable output
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for it in sorted(self.parent):
            out.setdefault(self.find(it), []).append(it)
        return sorted(tuple(v) for v in out.values())


Class = tuple[int, ...]


def _closure(nodes: Sequence[Class], rel: set[tuple[Class, Class]]) -> set[tuple[Class, Class]]:
    reach = set(rel)
    for k in nodes:
        for i in nodes:
            if (i, k) in reach:
                for j in nodes:
                    if (k, j) in reach:
                        reach.add((i, j))
    return reach


@dataclass(frozen=True)
class ClassGraph:
    """Equivalence classes of lr-visited boundary points and their order.

    ``order`` holds every strict relation ``A < B`` (transitively closed),
    ``hasse`` its covering pairs.  ``unconfirmed`` lists minimal classes whose
    members fail the relation-level minimality test, and ``inconsistencies``
    describes witnessed data that contradicts the order laws.
    """

    nodes: tuple[Class, ...]
    relation: frozenset[tuple[int, int]]
    order: frozenset[tuple[Class, Class]]
    hasse: tuple[tuple[Class, Class], ...]
    minimal: tuple[Class, ...]
    unconfirmed: tuple[Class, ...] = ()
    inconsistencies: tuple[str, ...] = ()
    n_boundaries: int = 0

    @classmethod
    def from_relation(
        cls,
        nodes: Iterable[int],
        relation: Iterable[tuple[int, int]],
        *,
        strict: bool = True,
        n_boundaries: int = 0,
    ) -> ClassGraph:
        node_set = set(nodes)
        rel = {(i, j) for i, j in relation}
        node_set |= {i for i, _ in rel}
        rel = {(i, j) for i, j in rel if j in node_set}
        problems: list[str] = []

        ds = DisjointSet(sorted(node_set))
        for i, j in rel:
            if i != j and (j, i) in rel:
                ds.union(i, j)

        for i, k in sorted(rel):
            for k2, j in sorted(rel):
                if k == k2 and (i, j) not in rel:
                    problems.append(f"R not transitive: R({i},{k}) and R({k},{j}) but not R({i},{j})")

        while True:
            groups = ds.groups()
            cls_of = {i: g for g in groups for i in g}
            for g in groups:
                for a in g:
                    for b in g:
                        if a != b and (a, b) not in rel:
                            problems.append(f"class {_fmt(g)} not mutually related: missing R({a},{b})")
            qrel = {(cls_of[i], cls_of[j]) for i, j in rel if cls_of[i] != cls_of[j]}
            for ga, gb in sorted(qrel):
                for a in ga:
                    for b in gb:
                        if (a, b) not in rel:
                            problems.append(
                                f"relation depends on representatives: R between {_fmt(ga)} and {_fmt(gb)} lacks ({a},{b})"
                            )
            reach = _closure(groups, qrel)
            cycle = [(a, b) for a, b in reach if a < b and (b, a) in reach]
            if not cycle:
                break
            for a, b in sorted(cycle):
                problems.append(f"antisymmetry fails between {_fmt(a)} and {_fmt(b)}")
                ds.union(a[0], b[0])
            if strict:
                break

        problems = sorted(set(problems))
        if strict and problems:
            raise OrderViolation("; ".join(problems))

        order = {(a, b) for a, b in reach if a != b}
        hasse = sorted(
            (a, b)
            for a, b in order
            if not any((a, m) in order and (m, b) in order for m in groups)
        )
        minimal = tuple(g for g in groups if not any((h, g) in order for h in groups))
        unconfirmed = tuple(
            g
            for g in minimal
            if any((j, i) in rel and (i, j) not in rel for i in g for j in node_set)
        )
        return cls(
            tuple(groups),
            frozenset(rel),
            frozenset(order),
            tuple(hasse),
            minimal,
            unconfirmed,
            tuple(problems),
            n_boundaries or (max(node_set) + 1 if node_set else 0),
        )

    def class_of(self, i: int) -> Class | None:
        for g in self.nodes:
            if i in g:
                return g
        return None

    def leq(self, a: Class, b: Class) -> bool:
        return a == b or (a, b) in self.order

    def minimal_classes(self) -> list[Class]:
        return list(self.minimal)

    def to_dot(self) -> str:
        lines = ["digraph classes {", "  rankdir=BT;", "  node [shape=box, fontname=\"sans-serif\"];"]
        for g in self.nodes:
            attrs = [f'label="[{_fmt(g)}]"']
            if g in self.minimal:
                attrs.append('style="filled,dashed"' if g in self.unconfirmed else "style=filled")
                attrs.append('fillcolor="#cfe2f3"')
            lines.append(f'  "{_fmt(g)}" [{", ".join(attrs)}];')
        for a, b in self.hasse:
            lines.append(f'  "{_fmt(a)}" -> "{_fmt(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def write_relation_csv(self, path: str | Path, n_boundaries: int | None = None) -> None:
        n = n_boundaries or self.n_boundaries
        idx = range(1, max(n, 1))
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["i\\j", *[f"c{j}" for j in idx]])
            for i in idx:
                w.writerow([f"c{i}", *[int((i, j) in self.relation) for j in idx]])


def _fmt(g: Class) -> str:
    return ",".join(f"c{i}" for i in g)


def minimal_classes(graph: ClassGraph) -> list[Class]:
    return graph.minimal_classes()


def build_class_graph(
    spec: MapSpec,
    reports: Mapping[str, LrRecurrenceReport],
    *,
    strict: bool = True,
) -> ClassGraph:
    """Classes and order from lr reports keyed by subject label.

    Every boundary point lr-witnessed by any report is a node; the report for
    ``d{j}+`` must be present for every node ``c_j``.
    """
    nodes: set[int] = set()
    for rep in reports.values():
        nodes |= rep.lr_set
    rel = set()
    for j in sorted(nodes):
        label = f"d{j}+"
        if label not in reports:
            raise ValueError(f"missing lr report for {label}, needed because c{j} is lr-witnessed")
        rel |= {(i, j) for i in reports[label].lr_set}
    return ClassGraph.from_relation(nodes, rel, strict=strict, n_boundaries=spec.n_pieces)
