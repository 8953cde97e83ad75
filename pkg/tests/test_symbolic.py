from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pcim.orbit import itinerary
from pcim.symbolic import (
    AFFINE,
    EVENTUALLY_CONSTANT,
    INCONCLUSIVE,
    STURMIAN,
    WordTooShort,
    classify_profile,
    complexity,
    complexity_svg,
    factor_sets,
    morse_hedlund_certify,
    write_complexity_csv,
)


def test_constant_word():
    prof = complexity([1] * 40, 10)
    assert prof.values == (1,) * 10
    assert prof.classification == EVENTUALLY_CONSTANT
    assert morse_hedlund_certify(prof) == 1


def test_period_two_word():
    prof = complexity([1, 2] * 20, 10)
    assert prof.values == (2,) * 10
    assert prof.classification == EVENTUALLY_CONSTANT
    assert morse_hedlund_certify(prof) == 2


def test_too_short():
    with pytest.raises(WordTooShort):
        complexity([1] * 17, 10)
    complexity([1] * 18, 10)


def test_e2_d0_profile_matches_oracle(E2, golden_e2):
    word, hit = itinerary(E2, F(2, 5), 10**5)
    assert hit is None
    prof = complexity(word, 30)
    assert list(prof.values) == golden_e2["d0_profile_1e5"]
    assert prof.classification == STURMIAN
    assert morse_hedlund_certify(prof) is None


def test_classification_rules():
    assert classify_profile([2, 3, 4, 5, 6, 7, 8, 9, 10]) == STURMIAN
    assert classify_profile([1, 2, 4, 6, 8, 10, 12, 14, 16, 18]) == AFFINE
    assert classify_profile([1, 2, 3, 3, 4, 5, 5, 5, 6, 7]) == INCONCLUSIVE
    assert classify_profile([2, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4]) == EVENTUALLY_CONSTANT
    # the window is what separates a plateau from constancy
    assert classify_profile([2, 3, 4, 4, 4, 5, 6], window=3) == AFFINE


words = st.lists(st.integers(1, 3), min_size=40, max_size=200)


@given(words, st.integers(1, 12))
def test_monotone_and_submultiplicative(word, n_max):
    prof = complexity(word, n_max)
    v = prof.values
    assert v[0] >= 1
    for a, b in zip(v, v[1:]):
        assert a <= b <= 3 * a


@given(words, st.integers(2, 12))
def test_factor_sets_project_by_suffix(word, n_max):
    sets = factor_sets(word, n_max)
    for n in range(1, n_max):
        assert {f[1:] for f in sets[n]} == sets[n - 1]


@given(st.lists(st.integers(1, 2), min_size=1, max_size=6), st.integers(0, 5))
def test_periodic_words_stabilize_below_period(block, phase):
    word = (block * 61)[phase:]
    prof = complexity(word, 20)
    assert prof.classification == EVENTUALLY_CONSTANT
    assert morse_hedlund_certify(prof) <= len(block)


def test_exports(tmp_path):
    prof = complexity([1, 2] * 20, 10)
    write_complexity_csv(prof, tmp_path / "c.csv")
    assert (tmp_path / "c.csv").read_text().splitlines()[:3] == ["n,p", "1,2", "2,2"]
    svg = complexity_svg(prof).render()
    assert "p(n) = n + 1" in svg
