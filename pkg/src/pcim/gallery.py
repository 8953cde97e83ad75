"""Bundled example maps and random map generators."""

from __future__ import annotations

import random
from fractions import Fraction

from .maps import MapSpec, make_map

F = Fraction


def e1() -> MapSpec:
    """Two halving branches; the attractor is the pair of fixed points 0 and 1."""
    return make_map([0, F(1, 2), 1], [(F(1, 2), 0), (F(1, 2), F(1, 2))])


def e2() -> MapSpec:
    """The contracted rotation x -> 9x/10 + 2/5 mod 1."""
    return wrap_map(F(9, 10), F(2, 5))


def four_piece() -> MapSpec:
    """Injective four-piece map with mixed orientations."""
    return make_map(
        [0, F(1, 4), F(1, 2), F(3, 4), 1],
        [
            (F(1, 2), F(2, 7)),
            (F(-2, 3), F(10, 21)),
            (F(3, 4), F(-13, 56)),
            (F(1, 2), F(27, 56)),
        ],
    )


def six_piece_split() -> MapSpec:
    """A continuous map with three interior maxima, cut at each maximum.

    Every bump rises with slope 3/4 and falls with slope -1/2; cutting at the
    tops leaves six monotone (hence injective) pieces.
    """
    ends = [0, F(1, 6), F(1, 3), F(1, 2), F(2, 3), F(5, 6), 1]
    bases = [F(1, 13), F(1, 13), F(9, 13)]
    branches = []
    for k, base in enumerate(bases):
        a, top, b = ends[2 * k], ends[2 * k + 1], ends[2 * k + 2]
        peak = base + F(3, 4) * (top - a)
        branches.append((F(3, 4), base - F(3, 4) * a))
        branches.append((F(-1, 2), peak + F(1, 2) * top))
    return make_map(ends, branches)


def wrap_map(lam: Fraction, mu: Fraction) -> MapSpec:
    """``x -> lam*x + mu (mod 1)`` on [0, 1], cut where the image wraps."""
    lam, mu = F(lam), F(mu)
    if not (0 < lam < 1 and 1 - lam < mu < 1):
        raise ValueError("need 0 < lam < 1 and 1 - lam < mu < 1")
    c = (1 - mu) / lam
    return make_map([0, c, 1], [(lam, mu), (lam, mu - 1)])


GALLERY = {
    "E1": e1,
    "E2": e2,
    "four_piece": four_piece,
    "six_piece_split": six_piece_split,
}


def random_map(
    rng: random.Random,
    n_pieces: int,
    *,
    max_slope: Fraction = F(3, 4),
    increasing: bool = False,
) -> MapSpec:
    """Random map on [0, 1] with small denominators.

    Slopes are multiples of 1/8 with ``0 < |s| <= max_slope``; endpoints lie
    on a 1/16 grid; each image is placed at a random 1/64 offset that keeps it
    inside [0, 1].
    """
    cuts = sorted(rng.sample(range(1, 16), n_pieces - 1))
    ends = [F(0)] + [F(c, 16) for c in cuts] + [F(1)]
    top = int(max_slope * 8)
    branches = []
    for i in range(n_pieces):
        j = rng.randint(1, top)
        if not increasing and rng.random() < 0.5:
            j = -j
        s = F(j, 8)
        a, b = ends[i], ends[i + 1]
        room = 1 - abs(s) * (b - a)
        y0 = F(rng.randint(0, int(room * 64)), 64)
        anchor = a if s > 0 else b
        branches.append((s, y0 - s * anchor))
    return make_map(ends, branches)


def random_wrap_map(rng: random.Random) -> MapSpec:
    """Contracted rotation with rational parameters of moderate height."""
    lam = F(rng.randint(5, 19), 20)
    q = rng.choice([7, 11, 13, 17, 19, 23, 29, 31, 37, 41])
    lo = int((1 - lam) * q) + 1
    p = rng.randint(lo, q - 1) if lo <= q - 1 else q - 1
    mu = F(p, q)
    if not 1 - lam < mu < 1:
        mu = (1 - lam + 1) / 2
    return wrap_map(lam, mu)
