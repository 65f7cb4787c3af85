from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altcsit import (AccessDenied, CsitPattern, CsitView, InvalidDimension, SCHEME1, SCHEME2,
                     SCHEME3, census, dominates, enumerate_patterns, is_synergistic, lambda_of,
                     match_scheme, sample_channel)
from altcsit.csit import MINIMAL_PATTERNS, D, N, P, synergy_requirements

import oracles

# synergistic count over all 3-slot two-receiver patterns, frozen after
# agreement with the string oracle below
SYNERGISTIC_3 = 120

states = st.sampled_from("PDN")


def patterns(n_rx=2, min_slots=1, max_slots=5):
    return st.integers(min_slots, max_slots).flatmap(
        lambda n: st.lists(st.text(states, min_size=n_rx, max_size=n_rx), min_size=n, max_size=n))


@pytest.mark.parametrize("text, expected", [
    ("DD,PN,NP", (1, 1, 1)),
    ("NN,NN,NN", (0, 0, 3)),
    ("NDD,DND,DDN,PPN,PNP,NPP", (1, 1, 1)),
])
def test_lambda(text, expected):
    lam = lambda_of(text)
    assert tuple(lam) == tuple(Fraction(e, sum(expected)) for e in expected)


def test_lambda_empty():
    with pytest.raises(InvalidDimension):
        lambda_of(CsitPattern(()))


@given(patterns(n_rx=3))
def test_lambda_sums_to_one_exactly(rows):
    lam = lambda_of(",".join(rows))
    assert lam.p + lam.d + lam.n == 1
    assert all(0 <= x <= 1 for x in lam)


@given(patterns(n_rx=2))
def test_text_round_trip(rows):
    text = ",".join(rows)
    assert str(CsitPattern.parse(text)) == text
    assert CsitPattern.parse(text.lower()) == CsitPattern.parse(text)


def test_ragged_pattern_rejected():
    with pytest.raises(InvalidDimension):
        CsitPattern.parse("DD,P")
    with pytest.raises(ValueError):
        CsitPattern.parse("DX")


@pytest.mark.parametrize("a, b, expected", [
    (P, D, True), (N, D, False), (D, D, True), ("P", "N", True),
    ("DD,PP,PP", "DN,ND,PP", True),
    ("DN,ND,PP", "DD,PP,PP", False),
    ("DD,PP", "DD,PP,PP", False),
])
def test_dominates(a, b, expected):
    assert dominates(a, b) is expected


@pytest.mark.parametrize("text, expected", [
    ("DD,PN,NP", True), ("PP,DD,NN", False), ("DD,PP,NN", False),
    ("DD,NN,PP", False), ("NN,DD,PP", False), ("ND,DN,PP", True),
])
def test_synergy_examples(text, expected):
    assert is_synergistic(text) is expected


@pytest.mark.parametrize("text", ["DD,PN", "DDD,PNN,NPP", "DD,PN,NP,PP"])
def test_synergy_needs_three_by_two(text):
    with pytest.raises(InvalidDimension):
        is_synergistic(text)


def test_minimal_patterns_are_synergistic_and_balanced():
    assert len(MINIMAL_PATTERNS) == 6
    for pattern, scheme in MINIMAL_PATTERNS:
        assert is_synergistic(pattern)
        assert tuple(lambda_of(pattern)) == (Fraction(1, 3),) * 3
        assert match_scheme(pattern) == scheme


@pytest.mark.parametrize("text, expected", [
    ("DD,PN,NP", SCHEME1), ("ND,DP,PN", SCHEME3), ("DD,DD,PP", SCHEME2),
    ("NN,NN,NN", None), ("PP,DD,NN", None),
])
def test_match_scheme(text, expected):
    assert match_scheme(text) == expected


def test_enumeration_counts():
    pats = list(enumerate_patterns(3))
    assert len(pats) == 729 == len(set(pats))
    one = census(1)
    assert (one.total, one.synergistic_count) == (9, 0)


def test_census_against_oracle():
    report = census(3)
    expected = sum(oracles.synergistic(p) for p in oracles.all_patterns(3))
    assert report.synergistic_count == expected == SYNERGISTIC_3
    assert report.total == 729
    # dispatch histogram from an independent dominance check
    minimal = [("DD", "PN", "NP"), ("ND", "DN", "PP"), ("ND", "DP", "PN"),
               ("DD", "NP", "PN"), ("DN", "ND", "PP"), ("DN", "PD", "NP")]
    names = ["scheme1", "scheme2", "scheme3", "scheme1m", "scheme2m", "scheme3m"]
    hist = {}
    for p in oracles.all_patterns(3):
        for m, name in zip(minimal, names):
            if oracles.dominates(p, m):
                hist[name] = hist.get(name, 0) + 1
                break
    assert dict(report.histogram) == hist
    assert report.dispatchable_count == sum(hist.values())


def test_census_longer_patterns_follow_oracle():
    report = census(4)
    assert report.total == 9**4
    assert report.synergistic_count == sum(oracles.synergistic(p) for p in oracles.all_patterns(4))


@st.composite
def dominated_pairs(draw):
    rows = draw(st.lists(st.text(states, min_size=2, max_size=2), min_size=3, max_size=3))
    lift = draw(st.lists(st.lists(st.booleans(), min_size=2, max_size=2), min_size=3, max_size=3))
    up = {"N": "D", "D": "P", "P": "P"}
    lifted = ["".join(up[s] if flag else s for s, flag in zip(r, f)) for r, f in zip(rows, lift)]
    return ",".join(lifted), ",".join(rows)


@settings(max_examples=300)
@given(dominated_pairs())
def test_synergy_is_monotone_under_dominance(pair):
    a, b = pair
    assert dominates(a, b)
    if is_synergistic(b):
        assert is_synergistic(a)


def test_requirements_reported_separately():
    assert synergy_requirements("PP,DD,NN") == (False, False, False)
    assert synergy_requirements("DD,PP,NN") == (True, False, False)


def test_query_examples():
    ch = sample_channel(2, 2, 3, seed=2)
    view = CsitView("DD,PN,NP", ch, tx=0, now=1)
    assert view.query(0, 1) == ch.h[0, 0, 1]
    with pytest.raises(AccessDenied) as err:
        view.query(0, 2)
    assert err.value.reason == "FutureSlot"
    with pytest.raises(AccessDenied) as err:
        view.query(1, 1)
    assert err.value.reason == "NoCsitAtSlot"
    with pytest.raises(AccessDenied) as err:
        view.query(0, 0, tx=1)
    assert err.value.reason == "ForeignColumn"
    with pytest.raises(AccessDenied) as err:
        CsitView("DD,PN,NP", ch, tx=0, now=0).query(0, 0)
    assert err.value.reason == "DelayedNotYetAvailable"
    assert len(view.log) == 1


def test_query_fuzz_against_oracle():
    rng = np.random.default_rng(0)
    ch = sample_channel(3, 3, 5, seed=1)
    for _ in range(3000):
        rows = ["".join(rng.choice(list("PDN"), 3)) for _ in range(5)]
        j, t, i, s, tx = rng.integers(0, 3), rng.integers(0, 5), rng.integers(0, 3), \
            rng.integers(0, 5), rng.integers(0, 3)
        view = CsitView(",".join(rows), ch, tx=j, now=t)
        granted = oracles.access_granted(rows, j, t, i, s, tx)
        if granted:
            assert view.query(i, s, tx) == ch.h[i, tx, s]
            assert len(view.log) == 1
        else:
            with pytest.raises(AccessDenied):
                view.query(i, s, tx)
            assert view.log == []
