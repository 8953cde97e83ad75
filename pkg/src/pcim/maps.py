"""Piecewise contracting interval maps with affine branches.

A map is described by a partition ``c_0 < c_1 < ... < c_N`` of the interval
``X = [c_0, c_N]`` and one affine branch ``f_i(x) = slope_i * x + intercept_i``
per piece.  Pieces are ``X_1 = [c_0, c_1)``, ``X_i = (c_{i-1}, c_i)`` and
``X_N = (c_{N-1}, c_N]``; an end piece declared open also drops its outer
endpoint, which then joins the boundary set ``Delta``.

The value of the map on ``Delta`` is never used.  Everything downstream works
with the continuous extensions ``f_i`` on the closed pieces and with the
one-sided limits collected in :class:`BoundaryData`.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import gmpy2

from .rational import RationalFormatError, RationalLike, format_rational, parse_rational


class MapError(ValueError):
    """Base class for invalid map descriptions."""


class MapFormatError(MapError):
    """The raw description does not have the expected shape."""


class BadPartition(MapError):
    """Partition endpoints are missing or not strictly increasing."""


class NonContracting(MapError):
    """Some branch has |slope| >= 1, or the declared rate is not a valid bound."""


class EscapesDomain(MapError):
    """A branch maps the closure of its piece outside X."""


class Evidence(str, enum.Enum):
    """Tri-state outcome for semi-decidable properties."""

    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown-at-horizon"


@dataclass(frozen=True)
class HypothesisFlags:
    injective_per_piece: bool
    increasing_per_piece: bool
    D_in_Xtilde: Evidence = Evidence.UNKNOWN

    def to_dict(self) -> dict[str, Any]:
        return {
            "injective_per_piece": self.injective_per_piece,
            "increasing_per_piece": self.increasing_per_piece,
            "D_in_Xtilde": self.D_in_Xtilde.value,
        }


@dataclass(frozen=True)
class Partition:
    endpoints: tuple[Fraction, ...]

    @property
    def n_pieces(self) -> int:
        return len(self.endpoints) - 1

    @property
    def lo(self) -> Fraction:
        return self.endpoints[0]

    @property
    def hi(self) -> Fraction:
        return self.endpoints[-1]

    @property
    def diam(self) -> Fraction:
        return self.hi - self.lo

    def closed_piece(self, i: int) -> tuple[Fraction, Fraction]:
        """Closure of piece ``i`` (1-based)."""
        return self.endpoints[i - 1], self.endpoints[i]


@dataclass(frozen=True)
class Branch:
    slope: Fraction
    intercept: Fraction
    piece_index: int

    def __call__(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class MapSpec:
    """A validated map.  Build instances with :func:`validate_map` or :func:`make_map`."""

    partition: Partition
    branches: tuple[Branch, ...]
    lam: Fraction
    open_ends: tuple[bool, bool] = (False, False)
    flags: HypothesisFlags = field(
        default_factory=lambda: HypothesisFlags(True, True), compare=False
    )

    # geometry -------------------------------------------------------------
    @property
    def n_pieces(self) -> int:
        return self.partition.n_pieces

    @property
    def endpoints(self) -> tuple[Fraction, ...]:
        return self.partition.endpoints

    @property
    def diam(self) -> Fraction:
        return self.partition.diam

    @property
    def interior_boundaries(self) -> tuple[Fraction, ...]:
        """``c_1, ..., c_{N-1}``."""
        return self.endpoints[1:-1]

    @cached_property
    def delta(self) -> tuple[Fraction, ...]:
        """The boundary set, sorted; includes c_0 / c_N for open end pieces."""
        pts = list(self.interior_boundaries)
        if self.open_ends[0]:
            pts.insert(0, self.partition.lo)
        if self.open_ends[1]:
            pts.append(self.partition.hi)
        return tuple(pts)

    def contains(self, x: Fraction) -> bool:
        return self.partition.lo <= x <= self.partition.hi

    def piece_of(self, x: Fraction) -> int | None:
        """Index of the piece containing ``x``, or None when ``x`` is in Delta."""
        c = self.endpoints
        if not c[0] <= x <= c[-1]:
            raise ValueError(f"{x} lies outside X = [{c[0]}, {c[-1]}]")
        if x == c[0]:
            return None if self.open_ends[0] else 1
        if x == c[-1]:
            return None if self.open_ends[1] else self.n_pieces
        for i in range(1, self.n_pieces):
            if x < c[i]:
                return i
            if x == c[i]:
                return None
        return self.n_pieces

    def in_delta(self, x: Fraction) -> bool:
        return self.piece_of(x) is None

    def branch(self, i: int) -> Branch:
        return self.branches[i - 1]

    def image(self, i: int, x: Fraction) -> Fraction:
        """Continuous extension ``f_i`` evaluated at ``x``."""
        return self.branches[i - 1](x)

    def __call__(self, x: Fraction) -> Fraction:
        i = self.piece_of(x)
        if i is None:
            raise ValueError(f"the map is not evaluated on the boundary point {x}")
        return self.branches[i - 1](x)

    def distance_to_delta(self, x: Fraction) -> Fraction | None:
        if not self.delta:
            return None
        return min(abs(x - c) for c in self.delta)

    @cached_property
    def kernel(self) -> IntegerForm:
        return IntegerForm(self)

    # serialization --------------------------------------------------------
    def to_dict(self) -> dict[str, Any]:
        return {
            "endpoints": [format_rational(c) for c in self.endpoints],
            "branches": [
                {"slope": format_rational(b.slope), "intercept": format_rational(b.intercept)}
                for b in self.branches
            ],
            "open_ends": list(self.open_ends),
            "lambda": format_rational(self.lam),
        }

    def with_flags(self, **changes: Any) -> MapSpec:
        return replace(self, flags=replace(self.flags, **changes))


class IntegerForm:
    """All coefficients of a map over common denominators, as GMP integers.

    A state ``x = num / den`` is advanced by branch ``i`` as
    ``num <- a_i * num + e_i * den``, ``den <- M * den`` where
    ``slope_i = a_i / M`` and ``intercept_i = e_i / M``.  No gcd is taken, so
    one step costs a handful of linear-size integer operations.
    """

    def __init__(self, spec: MapSpec):
        coeffs = [q for b in spec.branches for q in (b.slope, b.intercept)]
        m = 1
        for q in coeffs:
            m = math.lcm(m, q.denominator)
        self.mult = gmpy2.mpz(m)
        self.slope_num = [gmpy2.mpz(int(b.slope * m)) for b in spec.branches]
        self.icpt_num = [gmpy2.mpz(int(b.intercept * m)) for b in spec.branches]
        h = 1
        for c in spec.endpoints:
            h = math.lcm(h, c.denominator)
        self.bden = gmpy2.mpz(h)
        self.bnum = [gmpy2.mpz(int(c * h)) for c in spec.endpoints]
        self.n = spec.n_pieces
        self.open_left, self.open_right = spec.open_ends

    def piece(self, num: Any, den: Any) -> int | None:
        nh = num * self.bden
        bnum = self.bnum
        n = self.n
        if self.open_left and nh == bnum[0] * den:
            return None
        for i in range(1, n):
            t = bnum[i] * den
            if nh < t:
                return i
            if nh == t:
                return None
        if self.open_right and nh == bnum[n] * den:
            return None
        return n


@dataclass(frozen=True)
class BoundaryData:
    """One-sided limits of the map at the ends of its pieces."""

    d0: Fraction
    dN: Fraction
    d_minus: tuple[Fraction, ...]
    d_plus: tuple[Fraction, ...]

    @property
    def n_pieces(self) -> int:
        return len(self.d_minus) + 1

    def labeled(self) -> tuple[tuple[str, Fraction], ...]:
        """``(label, value)`` pairs in the order d0, d1-, d1+, ..., dN."""
        out = [("d0", self.d0)]
        for i, (lo, hi) in enumerate(zip(self.d_minus, self.d_plus), start=1):
            out.append((f"d{i}-", lo))
            out.append((f"d{i}+", hi))
        out.append((f"d{self.n_pieces}", self.dN))
        return tuple(out)

    def value(self, label: str) -> Fraction:
        return dict(self.labeled())[label]

    def plus_label(self, i: int) -> str:
        return f"d{i}+"

    def minus_label(self, i: int) -> str:
        return f"d{i}-"

    @property
    def points(self) -> frozenset[Fraction]:
        return frozenset(v for _, v in self.labeled())

    def __len__(self) -> int:
        return len(self.points)


def _raw_get(raw: Mapping[str, Any], key: str) -> Any:
    try:
        return raw[key]
    except KeyError:
        raise MapFormatError(f"map description lacks '{key}'") from None


def _as_rational(value: Any, what: str) -> Fraction:
    try:
        return parse_rational(value)
    except RationalFormatError as exc:
        raise MapFormatError(f"{what}: {exc}") from None


def validate_map(raw: Mapping[str, Any]) -> MapSpec:
    """Check a raw description and return the validated :class:`MapSpec`.

    ``raw`` has keys ``endpoints``, ``branches`` (list of ``{slope, intercept}``),
    optional ``open_ends`` (two booleans) and optional ``lambda``.  Rationals are
    Fractions, ints or ``"p/q"`` strings.
    """
    ends_raw = _raw_get(raw, "endpoints")
    if not isinstance(ends_raw, (list, tuple)):
        raise MapFormatError("'endpoints' must be a list")
    endpoints = tuple(_as_rational(v, f"endpoints[{k}]") for k, v in enumerate(ends_raw))
    if len(endpoints) < 3:
        raise BadPartition(f"need at least 2 pieces, got {max(len(endpoints) - 1, 0)}")
    for a, b in zip(endpoints, endpoints[1:]):
        if not a < b:
            raise BadPartition(f"endpoints not strictly increasing at {a} >= {b}")
    n = len(endpoints) - 1

    br_raw = _raw_get(raw, "branches")
    if not isinstance(br_raw, (list, tuple)) or len(br_raw) != n:
        raise MapFormatError(f"expected {n} branches")
    branches = []
    for i, b in enumerate(br_raw, start=1):
        if isinstance(b, Mapping):
            slope, icpt = _raw_get(b, "slope"), _raw_get(b, "intercept")
        elif isinstance(b, (list, tuple)) and len(b) == 2:
            slope, icpt = b
        else:
            raise MapFormatError(f"branch {i} must be {{slope, intercept}}")
        branches.append(
            Branch(_as_rational(slope, f"branch {i} slope"), _as_rational(icpt, f"branch {i} intercept"), i)
        )

    open_raw = raw.get("open_ends", (False, False))
    if (
        not isinstance(open_raw, (list, tuple))
        or len(open_raw) != 2
        or not all(isinstance(v, bool) for v in open_raw)
    ):
        raise MapFormatError("'open_ends' must be two booleans")
    open_ends = (open_raw[0], open_raw[1])

    steepest = max(abs(b.slope) for b in branches)
    for b in branches:
        if abs(b.slope) >= 1:
            raise NonContracting(f"branch {b.piece_index} has |slope| = {abs(b.slope)} >= 1")
    lam_raw = raw.get("lambda", raw.get("lam"))
    if lam_raw is None:
        lam = steepest
    else:
        lam = _as_rational(lam_raw, "lambda")
        if not steepest <= lam < 1:
            raise NonContracting(f"declared rate {lam} is not in [{steepest}, 1)")

    lo, hi = endpoints[0], endpoints[-1]
    for b in branches:
        a, c = endpoints[b.piece_index - 1], endpoints[b.piece_index]
        for y in (b(a), b(c)):
            if not lo <= y <= hi:
                raise EscapesDomain(
                    f"branch {b.piece_index} maps [{a}, {c}] outside X (value {y})"
                )

    flags = HypothesisFlags(
        injective_per_piece=all(b.slope != 0 for b in branches),
        increasing_per_piece=all(b.slope > 0 for b in branches),
    )
    return MapSpec(Partition(endpoints), tuple(branches), lam, open_ends, flags)


def make_map(
    endpoints: Sequence[RationalLike],
    branches: Iterable[tuple[RationalLike, RationalLike]],
    *,
    open_ends: tuple[bool, bool] = (False, False),
    lam: RationalLike | None = None,
) -> MapSpec:
    """Convenience front end to :func:`validate_map` for Python callers."""
    raw: dict[str, Any] = {
        "endpoints": list(endpoints),
        "branches": [{"slope": s, "intercept": b} for s, b in branches],
        "open_ends": list(open_ends),
    }
    if lam is not None:
        raw["lambda"] = lam
    return validate_map(raw)


def load_map(path: str | Path) -> MapSpec:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MapFormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(raw, Mapping):
        raise MapFormatError(f"{path}: top level must be an object")
    return validate_map(raw)


def dump_map(spec: MapSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec.to_dict(), indent=2) + "\n")


def boundary_data(spec: MapSpec) -> BoundaryData:
    c = spec.endpoints
    n = spec.n_pieces
    return BoundaryData(
        d0=spec.image(1, c[0]),
        dN=spec.image(n, c[n]),
        d_minus=tuple(spec.image(i, c[i]) for i in range(1, n)),
        d_plus=tuple(spec.image(i + 1, c[i]) for i in range(1, n)),
    )


@dataclass(frozen=True)
class DStatus:
    """Membership evidence for one one-sided limit ``d``.

    ``hit_step`` counts applications of the map starting from the boundary
    point whose one-sided limit is ``d``: ``d`` itself lying on Delta is step 1.
    """

    label: str
    value: Fraction
    status: str  # "refuted" | "verified-to-horizon" | "verified"
    hit_step: int | None = None
    certificate: Any = None


@dataclass(frozen=True)
class XtildeCheck:
    horizon: int
    statuses: tuple[DStatus, ...]

    @property
    def flag(self) -> Evidence:
        if any(s.status == "refuted" for s in self.statuses):
            return Evidence.REFUTED
        if all(s.status == "verified" for s in self.statuses):
            return Evidence.VERIFIED
        return Evidence.UNKNOWN

    def by_label(self) -> dict[str, DStatus]:
        return {s.label: s for s in self.statuses}


def check_D_in_Xtilde(spec: MapSpec, horizon: int, *, certify: bool = True) -> XtildeCheck:
    """Iterate every ``d`` in D exactly and look for hits on Delta.

    Iteration alone can only refute membership in the set of points whose
    orbit avoids Delta.  With ``certify`` the orbit is also searched for a
    periodic certificate; a captured orbit provably never reaches Delta, which
    upgrades that ``d`` to ``verified``.
    """
    from .orbit import ExactOrbit, PeriodicityScan

    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    out = []
    for label, d in boundary_data(spec).labeled():
        orbit = ExactOrbit(spec, d)
        if orbit.piece is None:
            out.append(DStatus(label, d, "refuted", hit_step=1))
            continue
        scan = PeriodicityScan(spec) if certify else None
        captured = None
        while orbit.step < horizon:
            if scan is not None and scan.observe(orbit):
                captured = scan.capture
                break
            orbit.advance()
            if orbit.piece is None:
                break
        if orbit.piece is None:
            out.append(DStatus(label, d, "refuted", hit_step=orbit.step + 1))
        elif captured is not None:
            out.append(DStatus(label, d, "verified", certificate=captured))
        else:
            out.append(DStatus(label, d, "verified-to-horizon"))
    return XtildeCheck(horizon, tuple(out))
