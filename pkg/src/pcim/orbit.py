"""Exact forward orbits, itineraries and periodic-orbit certificates.

Orbits are streamed with :class:`ExactOrbit`, which keeps the state as an
unreduced GMP fraction so a step is a few integer multiplications.  Public
results (:class:`OrbitSample`, :class:`PeriodicOrbitCert`) use ``Fraction``.

Periodicity is certified rather than guessed: a repeated itinerary block is
turned into the fixed point of the composed affine branches, the orbit of that
point is checked exactly, and the streamed orbit is declared captured once it
comes strictly closer to the certified orbit than the orbit's distance to
Delta.  From then on the two orbits follow the same branches and contract
together, so the omega-limit set is the certified orbit.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import gmpy2

from .maps import MapSpec

DEFAULT_MAX_PERIOD = 2048


class StartOnDelta(ValueError):
    """The start point lies on the boundary set, where the map is not used."""


class ExactOrbit:
    """Streaming exact orbit ``x, f(x), f^2(x), ...``.

    ``step`` is the index of the current state and ``piece`` its piece index,
    or None once the orbit sits on Delta (after which :meth:`advance` refuses).
    """

    __slots__ = ("spec", "k", "num", "den", "step", "piece")

    def __init__(self, spec: MapSpec, x: Fraction):
        x = Fraction(x)
        if not spec.contains(x):
            raise ValueError(f"{x} lies outside X = [{spec.endpoints[0]}, {spec.endpoints[-1]}]")
        self.spec = spec
        self.k = spec.kernel
        self.num = gmpy2.mpz(x.numerator)
        self.den = gmpy2.mpz(x.denominator)
        self.step = 0
        self.piece = self.k.piece(self.num, self.den)

    def advance(self) -> int | None:
        i = self.piece
        if i is None:
            raise StartOnDelta("orbit is on Delta and cannot be continued")
        k = self.k
        self.num = k.slope_num[i - 1] * self.num + k.icpt_num[i - 1] * self.den
        self.den = k.mult * self.den
        self.step += 1
        self.piece = p = k.piece(self.num, self.den)
        return p

    def value(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))

    def approx(self) -> float:
        shift = self.den.bit_length() - 60
        if shift > 0:
            return float(self.num >> shift) / float(self.den >> shift)
        return float(self.num) / float(self.den)

    def dist_less(self, y: Fraction, r: Fraction) -> bool:
        """Exact test ``|state - y| < r``."""
        gap = abs(self.num * y.denominator - y.numerator * self.den)
        return gap * r.denominator < r.numerator * y.denominator * self.den


@dataclass(frozen=True)
class OrbitSample:
    start: Fraction
    states: tuple[Fraction, ...]
    itinerary: tuple[int, ...]
    hit_delta_at: int | None = None

    def __len__(self) -> int:
        return len(self.states)


def _check_start(spec: MapSpec, x: Fraction) -> None:
    if spec.piece_of(x) is None:
        raise StartOnDelta(f"start point {x} lies on Delta")


def iterate(spec: MapSpec, x: Fraction, n: int) -> OrbitSample:
    """Exact orbit ``x, ..., f^n(x)``, cut short if a state lands on Delta.

    The itinerary has one symbol per applied branch.  When ``hit_delta_at`` is
    set, the last state is that Delta point.
    """
    x = Fraction(x)
    _check_start(spec, x)
    orbit = ExactOrbit(spec, x)
    states = [x]
    itin = []
    hit = None
    while orbit.step < n:
        itin.append(orbit.piece)
        p = orbit.advance()
        states.append(orbit.value())
        if p is None:
            hit = orbit.step
            break
    return OrbitSample(x, tuple(states), tuple(itin), hit)


def itinerary(spec: MapSpec, x: Fraction, n: int) -> tuple[bytes, int | None]:
    """Itinerary symbols of the first ``n`` states as bytes, without storing states.

    Returns the symbols and the step of a Delta hit (None if none occurred).
    """
    orbit = ExactOrbit(spec, Fraction(x))
    out = bytearray()
    while len(out) < n:
        if orbit.piece is None:
            return bytes(out), orbit.step
        out.append(orbit.piece)
        orbit.advance()
    return bytes(out), None


def write_orbit_csv(sample: OrbitSample, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "state", "piece"])
        for k, x in enumerate(sample.states):
            piece = sample.itinerary[k] if k < len(sample.itinerary) else ""
            if k == sample.hit_delta_at:
                piece = "delta"
            w.writerow([k, f"{x.numerator}/{x.denominator}", piece])


@dataclass(frozen=True)
class PeriodicOrbitCert:
    """Exact certificate for a periodic orbit avoiding Delta.

    ``slope``/``intercept`` describe the composed branch map ``g`` along
    ``word``; ``point`` is its fixed point and ``orbit`` lists
    ``point, f(point), ..., f^{p-1}(point)``.  ``separation`` is the distance
    from the orbit to Delta.  ``preperiod`` is the capture time when the
    certificate came from an orbit scan and 0 otherwise.
    """

    word: tuple[int, ...]
    point: Fraction
    period: int
    preperiod: int
    separation: Fraction
    slope: Fraction
    intercept: Fraction
    orbit: tuple[Fraction, ...]

    def rotated(self, j: int, preperiod: int = 0) -> PeriodicOrbitCert:
        """The same orbit started at ``f^j(point)``.

        Rotation leaves the product of slopes unchanged; the intercept is
        recovered from the new fixed point.
        """
        j %= self.period
        orb = self.orbit[j:] + self.orbit[:j]
        x = orb[0]
        return PeriodicOrbitCert(
            self.word[j:] + self.word[:j],
            x,
            self.period,
            preperiod,
            self.separation,
            self.slope,
            x - self.slope * x,
            orb,
        )

    @property
    def points(self) -> frozenset[Fraction]:
        return frozenset(self.orbit)


def primitive_root(word: Sequence[int]) -> tuple[int, ...]:
    """Shortest ``u`` with ``word == u * k``."""
    w = tuple(word)
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


def compose_word(spec: MapSpec, word: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Slope and intercept of ``f_{w_p} o ... o f_{w_1}``."""
    s, b = Fraction(1), Fraction(0)
    for i in word:
        br = spec.branches[i - 1]
        s, b = br.slope * s, br.slope * b + br.intercept
    return s, b


def word_fixed_point(spec: MapSpec, word: Sequence[int]) -> PeriodicOrbitCert | None:
    """Certify the periodic orbit with itinerary ``word`` repeated, if it exists.

    The word is first reduced to its primitive root, so the certificate's
    period is the least period of the orbit.
    """
    w = primitive_root(word)
    if not w or any(not 1 <= i <= spec.n_pieces for i in w):
        raise ValueError(f"word must be a nonempty sequence over 1..{spec.n_pieces}")
    s, b = compose_word(spec, w)
    x0 = b / (1 - s)
    if not spec.contains(x0):
        return None
    orbit = []
    y = x0
    for i in w:
        if not spec.contains(y) or spec.piece_of(y) != i:
            return None
        orbit.append(y)
        y = spec.image(i, y)
    if y != x0:
        return None
    rho = min(spec.distance_to_delta(z) for z in orbit)
    return PeriodicOrbitCert(w, x0, len(w), 0, rho, s, b, tuple(orbit))


def _minimal_period(buf: bytes | bytearray, max_period: int) -> int | None:
    """Least ``p`` such that ``buf`` has period ``p`` and ``len(buf) >= 2p``."""
    n = len(buf)
    for p in range(1, min(max_period, n // 2) + 1):
        if buf[p:] == buf[:-p]:
            return p
    return None


class PeriodicityScan:
    """Observer that watches a streamed orbit for capture by a periodic orbit.

    Call :meth:`observe` once per state, before advancing.  It returns True
    when the current state has been shown to lie in the basin of a certified
    periodic orbit; ``capture`` then holds that certificate, rotated so that
    its point is the one the current state is shadowing.
    """

    def __init__(self, spec: MapSpec, max_period: int = DEFAULT_MAX_PERIOD):
        self.spec = spec
        self.max_period = max_period
        self.window = 2 * max_period
        self.symbols = bytearray()
        self.capture: PeriodicOrbitCert | None = None
        self.capture_step: int | None = None
        self._tried: dict[bytes, PeriodicOrbitCert | None] = {}

    @staticmethod
    def _checkpoint(k: int) -> bool:
        return k >= 2 and (k & (k - 1) == 0 or k % 64 == 0)

    def observe(self, orbit: ExactOrbit) -> bool:
        k = orbit.step
        if len(self.symbols) != k:
            raise ValueError("observe must be called once per state, in order")
        if self._checkpoint(k):
            tail = self.symbols[-self.window :]
            p = _minimal_period(tail, self.max_period)
            if p is not None:
                block = bytes(self.symbols[k - p : k])
                if block not in self._tried:
                    self._tried[block] = word_fixed_point(self.spec, tuple(block))
                cert = self._tried[block]
                if cert is not None:
                    # the word may have been reduced to a shorter root
                    if orbit.dist_less(cert.point, cert.separation):
                        self.capture = cert
                        self.capture_step = k
                        return True
        if orbit.piece is not None:
            self.symbols.append(orbit.piece)
        return False


def detect_eventual_periodicity(
    spec: MapSpec,
    x: Fraction,
    horizon: int,
    *,
    max_period: int = DEFAULT_MAX_PERIOD,
) -> tuple[int, PeriodicOrbitCert] | None:
    """Look for a certified periodic orbit attracting ``x`` within ``horizon`` steps.

    Returns ``(t, cert)`` where ``t`` is the first step at which
    ``f^t(x)`` lies strictly within ``cert.separation`` of ``cert.point``;
    from there on ``|f^{t+k}(x) - f^k(cert.point)| <= lam^k |f^t(x) - cert.point|``.
    Returns None when the orbit hits Delta or the horizon runs out.
    """
    x = Fraction(x)
    _check_start(spec, x)
    orbit = ExactOrbit(spec, x)
    scan = PeriodicityScan(spec, max_period)
    while True:
        if scan.observe(orbit):
            break
        if orbit.step >= horizon:
            return None
        if orbit.advance() is None:
            return None
    cert, k = scan.capture, scan.capture_step
    assert cert is not None and k is not None
    # second pass: first time the orbit enters the basin in phase with the capture
    replay = ExactOrbit(spec, x)
    p = cert.period
    while True:
        t = replay.step
        j = (t - k) % p
        if replay.dist_less(cert.orbit[j], cert.separation):
            return t, cert.rotated(j, preperiod=t)
        replay.advance()
