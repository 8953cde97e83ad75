import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pcim.atoms import (
    DepthBudgetExceeded,
    Interval,
    atoms_svg,
    attractor_enclosure,
    expand_atoms,
    locate_in_atoms,
    merge_intervals,
    write_atoms_csv,
)
from pcim.gallery import random_map
from pcim.maps import boundary_data, make_map


def _gen(tree, n):
    return {a.word: (a.interval.lo, a.interval.hi) for a in tree.generation(n)}


def test_e1_first_generations(E1):
    tree = expand_atoms(E1, 2)
    assert _gen(tree, 1) == {(1,): (0, F(1, 4)), (2,): (F(3, 4), 1)}
    # each generation-1 atom lies inside one piece, so cross words are empty
    assert _gen(tree, 2) == {(1, 1): (0, F(1, 8)), (2, 2): (F(7, 8), 1)}


def test_e1_enclosure(E1):
    enc = attractor_enclosure(expand_atoms(E1, 3))
    assert enc == (Interval(F(0), F(1, 16)), Interval(F(15, 16), F(1)))


def test_e1_enclosure_shrinks_to_fixed_points(E1):
    enc = attractor_enclosure(expand_atoms(E1, 30))
    assert [iv.diam for iv in enc] == [F(1, 2**31)] * 2
    assert 0 in enc[0] and 1 in enc[1]


def test_locate(E1):
    tree = expand_atoms(E1, 2)
    assert locate_in_atoms(tree, F(1, 10)) == [(1, 1)]
    assert locate_in_atoms(tree, F(1, 2)) == []


def test_locate_shared_endpoint():
    spec = make_map([0, F(1, 2), 1], [(F(1, 2), 0), (F(1, 2), 0)])
    tree = expand_atoms(spec, 1)
    assert locate_in_atoms(tree, F(1, 4)) == [(1,), (2,)]


def test_e2_depth_20_diameter_bound(E2):
    tree = expand_atoms(E2, 20)
    for n in range(1, 21):
        assert tree.max_diameter(n) <= F(9, 10) ** n
    assert tree.error_bound() == F(9, 10) ** 20


def test_no_child_from_a_delta_point_only():
    # generation-1 atom [1/2, 1] touches piece 1 only at the cut 1/2
    spec = make_map([0, F(1, 2), 1], [(F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))])
    tree = expand_atoms(spec, 2)
    words = set(_gen(tree, 2))
    assert (1, 1) not in words and (2, 1) not in words


def test_degenerate_atoms_are_flagged():
    spec = make_map([0, F(1, 2), 1], [(0, F(1, 4)), (0, F(3, 4))])
    tree = expand_atoms(spec, 2)
    assert all(a.degenerate for a in tree.generation(1))
    assert _gen(tree, 2) == {(1, 1): (F(1, 4), F(1, 4)), (2, 2): (F(3, 4), F(3, 4))}


def test_budget_error_carries_partial_tree(E2):
    with pytest.raises(DepthBudgetExceeded) as info:
        expand_atoms(E2, 30, max_atoms=5)
    part = info.value.partial
    assert part.depth >= 1 and all(len(g) <= 5 for g in part.generations)


def test_merge_intervals_touching():
    ivs = [Interval(F(1, 2), F(1)), Interval(F(0), F(1, 4)), Interval(F(1, 4), F(1, 3))]
    assert merge_intervals(ivs) == (Interval(F(0), F(1, 3)), Interval(F(1, 2), F(1)))


def test_exports(tmp_path, E1):
    tree = expand_atoms(E1, 3)
    write_atoms_csv(tree, tmp_path / "a.csv")
    lines = (tmp_path / "a.csv").read_text().splitlines()
    assert lines[0] == "generation,word,left,right"
    assert lines[-1] == "3,2.2.2,15/16,1/1"
    assert len(lines) == 1 + 6
    svg = atoms_svg(tree, F(0), F(1)).render()
    assert svg.startswith("<svg") and svg.count("<rect") == 1 + 1 + 6  # background, X, one bar per interval


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_nesting_and_decay(seed, n_pieces):
    spec = random_map(random.Random(seed), n_pieces)
    tree = expand_atoms(spec, 8)
    words = tree.by_word()
    for n in range(1, tree.depth):
        for a in tree.generation(n + 1):
            parent = words[a.word[1:]]
            assert parent.interval.contains_interval(a.interval)
        assert tree.max_diameter(n + 1) <= spec.lam * tree.max_diameter(n)
        # Lambda_{n+1} inside Lambda_n
        for iv in tree.covers[n]:
            assert any(big.contains_interval(iv) for big in tree.covers[n - 1])


def _extended_orbits(spec, depth):
    """Points reachable from D by continuous extensions of the branches."""
    pts = set(v for _, v in boundary_data(spec).labeled())
    frontier = set(pts)
    for _ in range(depth):
        nxt = set()
        for x in frontier:
            for i in range(1, spec.n_pieces + 1):
                if spec.endpoints[i - 1] <= x <= spec.endpoints[i]:
                    nxt.add(spec.image(i, x))
        frontier = nxt - pts
        pts |= nxt
    return pts


@given(st.integers(0, 10**6))
def test_endpoints_come_from_D(seed):
    spec = random_map(random.Random(seed), 3)
    assert spec.flags.injective_per_piece
    tree = expand_atoms(spec, 6)
    reach = _extended_orbits(spec, 6)
    for gen in tree.generations:
        for a in gen:
            assert a.interval.lo in reach and a.interval.hi in reach
