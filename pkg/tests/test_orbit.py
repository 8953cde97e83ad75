import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pcim.gallery import random_map
from pcim.maps import make_map
from pcim.orbit import (
    ExactOrbit,
    StartOnDelta,
    compose_word,
    detect_eventual_periodicity,
    iterate,
    primitive_root,
    word_fixed_point,
    write_orbit_csv,
)


def test_iterate_e1_halving(E1):
    s = iterate(E1, F(1, 4), 3)
    assert s.states == (F(1, 4), F(1, 8), F(1, 16), F(1, 32))
    assert s.itinerary == (1, 1, 1)
    assert s.hit_delta_at is None


def test_iterate_rejects_delta_and_outside(E1):
    with pytest.raises(StartOnDelta):
        iterate(E1, F(1, 2), 3)
    with pytest.raises(ValueError):
        iterate(E1, F(3, 2), 3)


def test_iterate_stops_on_delta():
    spec = make_map([0, F(1, 2), 1], [(F(1, 2), F(1, 2)), (F(1, 2), 0)])
    s = iterate(spec, F(0), 10)
    assert s.states == (0, F(1, 2)) and s.hit_delta_at == 1 and s.itinerary == (1,)


def test_iterate_e2_exact_steps(E2, golden_e2):
    s = iterate(E2, F(2, 5), 2000)
    assert s.hit_delta_at is None and golden_e2["delta_hits_10k"]["d0"] is None
    for k, i in enumerate(s.itinerary):
        assert s.states[k + 1] == E2.image(i, s.states[k])
        assert E2.piece_of(s.states[k]) == i


def test_streaming_matches_fraction_arithmetic(E2):
    orbit = ExactOrbit(E2, F(3, 10))
    x = F(3, 10)
    for _ in range(300):
        assert orbit.value() == x
        assert abs(orbit.approx() - float(x)) < 1e-15
        x = E2(x)
        orbit.advance()


def test_word_fixed_point_e1(E1):
    c1 = word_fixed_point(E1, (1,))
    assert (c1.point, c1.period, c1.separation) == (0, 1, F(1, 2))
    c2 = word_fixed_point(E1, (2,))
    assert (c2.point, c2.period, c2.separation) == (1, 1, F(1, 2))
    # g(x) = x/4 + 1/2 has fixed point 2/3, which lies in piece 2, not 1
    assert compose_word(E1, (1, 2)) == (F(1, 4), F(1, 2))
    assert word_fixed_point(E1, (1, 2)) is None


def test_word_is_reduced_to_primitive_root(E1):
    assert primitive_root((1, 2, 1, 2)) == (1, 2)
    assert word_fixed_point(E1, (1, 1, 1)).period == 1


def test_detect_e1(E1):
    t, cert = detect_eventual_periodicity(E1, F(1, 4), 100)
    assert (t, cert.point, cert.period) == (0, 0, 1)
    t, cert = detect_eventual_periodicity(E1, F(3, 4), 100)
    assert (cert.point, cert.period) == (1, 1)


def test_detect_e2_matches_oracle(E2, golden_e2):
    g = golden_e2["d0_capture"]
    t, cert = detect_eventual_periodicity(E2, F(2, 5), 10**5)
    assert t == g["preperiod"]
    assert cert.period == g["period"]
    assert cert.point == F(g["point"])
    assert cert.separation == F(g["separation"])
    assert list(cert.word) == g["word"]


def test_detect_gives_up_on_delta_hit():
    spec = make_map([0, F(1, 2), 1], [(F(1, 2), F(1, 2)), (F(1, 2), 0)])
    assert detect_eventual_periodicity(spec, F(0), 100) is None


def test_csv_export(tmp_path, E1):
    path = tmp_path / "o.csv"
    write_orbit_csv(iterate(E1, F(1, 4), 2), path)
    assert path.read_text().splitlines() == ["step,state,piece", "0,1/4,1", "1,1/8,1", "2,1/16,"]


def _cert_is_sound(spec, cert):
    y = cert.point
    for k, i in enumerate(cert.word):
        assert spec.piece_of(y) == i
        assert y == cert.orbit[k]
        assert min(abs(y - c) for c in spec.delta) >= cert.separation
        y = spec.image(i, y)
    assert y == cert.point
    assert cert.separation > 0
    assert abs(cert.slope) <= spec.lam ** cert.period < 1
    assert cert.point == cert.intercept / (1 - cert.slope)


@given(st.integers(0, 10**6), st.fractions(0, 1))
def test_shadowing_after_capture(seed, x):
    spec = random_map(random.Random(seed), 3)
    if spec.piece_of(x) is None:
        return
    found = detect_eventual_periodicity(spec, x, 2000)
    if found is None:
        return
    t, cert = found
    _cert_is_sound(spec, cert)
    s = iterate(spec, x, t + 40)
    if s.hit_delta_at is not None:
        pytest.fail("captured orbit reached Delta")
    d0 = abs(s.states[t] - cert.point)
    assert d0 < cert.separation
    for k in range(40):
        assert abs(s.states[t + k] - cert.orbit[k % cert.period]) <= spec.lam**k * d0


@given(st.integers(0, 10**6), st.lists(st.integers(1, 3), min_size=1, max_size=8), st.integers(0, 7))
def test_rotation_invariance(seed, word, j):
    spec = random_map(random.Random(seed), 3)
    base = word_fixed_point(spec, word)
    j %= len(word)
    rot = word_fixed_point(spec, word[j:] + word[:j])
    assert (base is None) == (rot is None)
    if base is not None:
        _cert_is_sound(spec, base)
        assert rot.point == base.orbit[j % base.period]
        assert rot.rotated(0) == rot
        assert base.rotated(j).point == rot.point
