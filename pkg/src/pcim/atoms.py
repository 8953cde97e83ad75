"""Atoms of the attractor and the interval unions Lambda_n.

For a set ``A`` and a piece index ``i`` let ``F_i(A)`` be the closure of
``f(A & X_i)``.  The atom with word ``(i_1, ..., i_n)`` is
``F_{i_n}(... F_{i_1}(X))``; every atom is a closed interval (possibly a
single point) of diameter at most ``lam**n * diam(X)``, and the union of the
generation-n atoms decreases to the attractor.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .maps import MapSpec
from .rational import format_rational
from .svg import Canvas

DEFAULT_MAX_ATOMS = 10**6


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def diam(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def distance(self, x: Fraction) -> Fraction:
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return Fraction(0)

    def inflate(self, r: Fraction) -> Interval:
        return Interval(self.lo - r, self.hi + r)


@dataclass(frozen=True)
class Atom:
    word: tuple[int, ...]
    interval: Interval
    generation: int
    degenerate: bool = False


class DepthBudgetExceeded(RuntimeError):
    """Too many atoms; ``partial`` holds the sealed generations built so far."""

    def __init__(self, message: str, partial: AtomTree):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class AtomTree:
    lam: Fraction
    diam_X: Fraction
    generations: tuple[tuple[Atom, ...], ...]
    covers: tuple[tuple[Interval, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.generations)

    def generation(self, n: int) -> tuple[Atom, ...]:
        return self.generations[n - 1]

    def by_word(self) -> dict[tuple[int, ...], Atom]:
        return {a.word: a for gen in self.generations for a in gen}

    def max_diameter(self, n: int) -> Fraction:
        return max(a.interval.diam for a in self.generation(n))

    def error_bound(self, n: int | None = None) -> Fraction:
        """``lam**n * diam(X)``: the Hausdorff error of Lambda_n as an enclosure."""
        n = self.depth if n is None else n
        return self.lam**n * self.diam_X


def merge_intervals(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    """Minimal disjoint union; touching intervals are merged."""
    out: list[Interval] = []
    for iv in sorted(intervals):
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return tuple(out)


def _children(spec: MapSpec, atom: Atom) -> list[Atom]:
    c = spec.endpoints
    a, b = atom.interval.lo, atom.interval.hi
    kids = []
    for i in range(1, spec.n_pieces + 1):
        lo, hi = max(a, c[i - 1]), min(b, c[i])
        if lo > hi:
            continue
        if lo == hi and spec.piece_of(lo) != i:
            # touching the piece only at a Delta point (or at its far side)
            continue
        u, v = spec.image(i, lo), spec.image(i, hi)
        iv = Interval(min(u, v), max(u, v))
        kids.append(Atom(atom.word + (i,), iv, atom.generation + 1, iv.lo == iv.hi))
    return kids


def expand_atoms(spec: MapSpec, depth: int, *, max_atoms: int = DEFAULT_MAX_ATOMS) -> AtomTree:
    """Build generations 1..depth of atoms breadth first, children sorted by word."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    root = Atom((), Interval(spec.endpoints[0], spec.endpoints[-1]), 0)
    gens: list[tuple[Atom, ...]] = []
    covers: list[tuple[Interval, ...]] = []
    current = [root]
    for n in range(1, depth + 1):
        nxt: list[Atom] = []
        for atom in current:
            nxt.extend(_children(spec, atom))
            if len(nxt) > max_atoms:
                partial = AtomTree(spec.lam, spec.diam, tuple(gens), tuple(covers))
                raise DepthBudgetExceeded(
                    f"generation {n} exceeds {max_atoms} atoms", partial
                )
        nxt.sort(key=lambda a: a.word)
        gens.append(tuple(nxt))
        covers.append(merge_intervals(a.interval for a in nxt))
        current = nxt
    return AtomTree(spec.lam, spec.diam, tuple(gens), tuple(covers))


def attractor_enclosure(tree: AtomTree) -> tuple[Interval, ...]:
    """Lambda_n for the deepest generation, as a minimal disjoint union."""
    if tree.depth < 1:
        raise ValueError("tree has no generations")
    return tree.covers[-1]


def locate_in_atoms(tree: AtomTree, x: Fraction, generation: int | None = None) -> list[tuple[int, ...]]:
    """Words of the atoms of one generation (deepest by default) containing ``x``."""
    gen = tree.generation(tree.depth if generation is None else generation)
    return [a.word for a in gen if x in a.interval]


def word_label(word: tuple[int, ...]) -> str:
    return ".".join(map(str, word))


def write_atoms_csv(tree: AtomTree, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["generation", "word", "left", "right"])
        for gen in tree.generations:
            for a in gen:
                w.writerow(
                    [a.generation, word_label(a.word), format_rational(a.interval.lo), format_rational(a.interval.hi)]
                )


def atoms_svg(tree: AtomTree, lo: Fraction, hi: Fraction) -> Canvas:
    """One row of bars per generation: the usual picture of a Cantor construction."""
    width, margin, row = 640.0, 40.0, 14.0
    scale = (width - 2 * margin) / float(hi - lo)
    cv = Canvas(width, margin * 2 + row * (tree.depth + 1))
    y = margin
    cv.rect(margin, y, width - 2 * margin, row * 0.6, fill="#999")
    cv.text(margin - 6, y + row * 0.6, "X", size=10, anchor="end")
    for n, cover in enumerate(tree.covers, start=1):
        y += row
        for iv in cover:
            x0 = margin + float(iv.lo - lo) * scale
            cv.rect(x0, y, float(iv.diam) * scale, row * 0.6, fill="#1f4e79")
        cv.text(margin - 6, y + row * 0.6, str(n), size=10, anchor="end")
    return cv
