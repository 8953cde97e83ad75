"""Word complexity of itineraries.

``p(n)`` counts distinct length-n factors.  An infinite word is eventually
periodic exactly when ``p`` is eventually constant (Morse-Hedlund), and
``p(n) = n + 1`` for every ``n`` characterizes Sturmian words.  A finite word
can only give evidence for either, so classifications come with an explicit
confirmation window.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .svg import Canvas

ItineraryWord = Union[bytes, Sequence[int]]

DEFAULT_WINDOW = 8

EVENTUALLY_CONSTANT = "eventually-constant"
AFFINE = "affine-consistent"
STURMIAN = "sturmian-consistent"
INCONCLUSIVE = "inconclusive"


class WordTooShort(ValueError):
    pass


@dataclass(frozen=True)
class ComplexityProfile:
    values: tuple[int, ...]
    classification: str
    window: int
    word_length: int

    @property
    def n_max(self) -> int:
        return len(self.values)

    def p(self, n: int) -> int:
        return self.values[n - 1]


def _as_bytes(word: ItineraryWord) -> bytes:
    if isinstance(word, (bytes, bytearray)):
        return bytes(word)
    return bytes(word)


def factor_sets(word: ItineraryWord, n_max: int) -> list[set[bytes]]:
    """``L_1, ..., L_{n_max}``: factors ending at positions ``n_max..len(word)``.

    Counting only factors that end at or after ``n_max`` makes every set the
    suffix projection of the next one, so the counts behave like those of an
    infinite word (monotone, at most N-fold growth) instead of dropping off
    near the end of a finite sample.
    """
    w = _as_bytes(word)
    size = len(w)
    return [{w[e - n : e] for e in range(n_max, size + 1)} for n in range(1, n_max + 1)]


def classify_profile(values: Sequence[int], window: int = DEFAULT_WINDOW) -> str:
    vals = list(values)
    if vals and all(v == n + 1 for n, v in enumerate(vals, start=1)):
        return STURMIAN
    if len(vals) >= window:
        tail = vals[-window:]
        if len(set(tail)) == 1:
            return EVENTUALLY_CONSTANT
        diffs = [b - a for a, b in zip(tail, tail[1:])]
        if len(set(diffs)) == 1 and diffs[0] >= 1:
            return AFFINE
    return INCONCLUSIVE


def complexity(word: ItineraryWord, n_max: int, window: int = DEFAULT_WINDOW) -> ComplexityProfile:
    if n_max < 1 or window < 2:
        raise ValueError("n_max must be >= 1 and window >= 2")
    w = _as_bytes(word)
    if len(w) < n_max + window:
        raise WordTooShort(f"word of length {len(w)} is shorter than n_max + window = {n_max + window}")
    values = tuple(len(s) for s in factor_sets(w, n_max))
    return ComplexityProfile(values, classify_profile(values, window), window, len(w))


def morse_hedlund_certify(profile: ComplexityProfile) -> int | None:
    """Bound on the eventual period when the profile has stabilized, else None.

    This is evidence, not a proof: a finite word never shows constancy for
    all ``n``.  An exact certificate comes from the orbit engine.
    """
    if profile.classification != EVENTUALLY_CONSTANT:
        return None
    return profile.values[-1]


def write_complexity_csv(profile: ComplexityProfile, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "p"])
        for n, v in enumerate(profile.values, start=1):
            w.writerow([n, v])


def complexity_svg(profile: ComplexityProfile, sturmian_line: bool = True) -> Canvas:
    width, height, m = 480.0, 320.0, 40.0
    n_max = profile.n_max
    top = max(max(profile.values), n_max + 1)
    sx = (width - 2 * m) / max(n_max - 1, 1)
    sy = (height - 2 * m) / top

    def pt(n: int, v: float) -> tuple[float, float]:
        return m + (n - 1) * sx, height - m - v * sy

    cv = Canvas(width, height)
    cv.line(m, height - m, width - m, height - m)
    cv.line(m, height - m, m, m)
    cv.text(width / 2, height - 8, "n", anchor="middle")
    cv.text(12, m - 8, "p(n)")
    if sturmian_line:
        cv.polyline([pt(1, 2), pt(n_max, n_max + 1)], stroke="#c00", dash="4 3")
        cv.text(width - m, m - 8, "p(n) = n + 1", size=10, anchor="end")
    cv.polyline([pt(n, v) for n, v in enumerate(profile.values, start=1)], stroke="#1f4e79", width=1.5)
    for n, v in enumerate(profile.values, start=1):
        cv.circle(*pt(n, v), 2, fill="#1f4e79")
    cv.text(m, height - m + 14, "1", size=10, anchor="middle")
    cv.text(width - m, height - m + 14, str(n_max), size=10, anchor="middle")
    cv.text(m - 4, m + 4, str(top), size=10, anchor="end")
    return cv
