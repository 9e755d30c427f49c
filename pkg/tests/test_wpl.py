import math

import pytest
from hypothesis import given, strategies as st

from ellbundles import wpl
from ellbundles.oracles import lattice_points_brute

W46 = wpl.WeightedLine(4, 6)
weights = st.integers(1, 10)


def test_h0_examples():
    assert set(wpl.h0_basis(W46, 12).points) == {(3, 0), (0, 2)}
    assert len(wpl.h0_basis(wpl.WeightedLine(3, 5), -1)) == 0
    assert len(wpl.h0_basis(wpl.WeightedLine(1, 1), 5)) == 6


def test_h1_examples():
    assert wpl.h1_basis(W46, -10).points == ((-1, -1),)
    assert set(wpl.h1_basis(W46, -22).points) == {(-4, -1), (-1, -3)}
    assert len(wpl.h1_basis(W46, 0)) == 0


def test_serre_examples():
    assert wpl.serre_pairing(W46, 0) == [((0, 0), (-1, -1))]
    assert len(wpl.serre_pairing(W46, 12)) == 2
    assert wpl.serre_pairing(wpl.WeightedLine(1, 1), 0) == [((0, 0), (-1, -1))]


def test_chart_rows():
    assert wpl.chart(W46, 0, 12).h0_ranks == [1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2]
    assert wpl.chart(W46, -22, -10).h1_ranks == [2, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1]
    c = wpl.chart(wpl.WeightedLine(1, 1), 0, 3)
    assert c.h0_ranks == [1, 2, 3, 4] and c.h1_ranks == [0, 0, 0, 0]


def test_chart_rejects_empty_range():
    with pytest.raises(ValueError):
        wpl.chart(W46, 3, 2)


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        wpl.WeightedLine(0, 3)


def test_ascii_has_one_glyph_per_basis_element():
    c = wpl.chart(W46, -22, 12)
    text = c.to_ascii()
    assert text.count("#") == sum(c.h0_ranks) + sum(c.h1_ranks)
    assert text.endswith("\n")


@given(weights, weights, st.integers(-40, 40))
def test_bases_match_brute_force(k, l, m):
    w = wpl.WeightedLine(k, l)
    h0, h1 = wpl.h0_basis(w, m), wpl.h1_basis(w, m)
    h0.validate(w)
    h1.validate(w)
    assert sorted(h0.points) == lattice_points_brute(k, l, m, 0, box=45)
    assert sorted(h1.points) == lattice_points_brute(k, l, m, 1, box=45)


@given(weights, weights, st.integers(-50, 50))
def test_serre_duality_ranks(k, l, m):
    w = wpl.WeightedLine(k, l)
    assert len(wpl.h0_basis(w, m)) == len(wpl.h1_basis(w, -m - k - l))
    wpl.serre_pairing(w, m)


@given(weights, weights, st.integers(-50, 50))
def test_non_divisible_twists_are_empty(k, l, m):
    g = math.gcd(k, l)
    if m % g:
        w = wpl.WeightedLine(k, l)
        assert not wpl.h0_basis(w, m).points and not wpl.h1_basis(w, m).points


@given(weights, weights, st.integers(-30, 60))
def test_h1_vanishes_above_minus_k_minus_l(k, l, m):
    if m > -k - l:
        assert not wpl.h1_basis(wpl.WeightedLine(k, l), m).points


@given(st.integers(1, 6), st.integers(1, 6), st.integers(-100, 100))
def test_euler_characteristic_against_brute_force(k, l, m):
    w = wpl.WeightedLine(k, l)
    chi = len(wpl.h0_basis(w, m)) - len(wpl.h1_basis(w, m))
    brute = len(lattice_points_brute(k, l, m, 0, box=110)) - \
        len(lattice_points_brute(k, l, m, 1, box=110))
    assert chi == brute


@pytest.mark.parametrize("k,l,m", [(4, 6, 12), (4, 6, -22), (2, 3, -9), (1, 1, 4), (3, 5, -13)])
def test_cech_complex_agrees(k, l, m):
    w = wpl.WeightedLine(k, l)
    assert wpl.cech_ranks(w, m, box=60) == (len(wpl.h0_basis(w, m)), len(wpl.h1_basis(w, m)))


def test_json_is_newline_terminated_and_deterministic():
    c = wpl.chart(W46, -2, 2)
    assert c.to_json().endswith("\n") and c.to_json() == wpl.chart(W46, -2, 2).to_json()
