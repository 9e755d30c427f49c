import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ellbundles.exactalg import FGAbGroup
from ellbundles.hopfext import (CAP_ENV, CobarComplex, OutOfRange, ResourceLimitError,
                                compare_models, delta_stabilize, ext_chart, unit_class,
                                weierstrass, weierstrass_short, yoneda_product)
from ellbundles.oracles import dense_homology, modular_form_count

Z3 = FGAbGroup(0, (3,))


@pytest.fixture(scope="module")
def full():
    return weierstrass()


@pytest.fixture(scope="module")
def short():
    return weierstrass_short()


@pytest.fixture(scope="module")
def chart3():
    return ext_chart(3, 14, 3)


@pytest.mark.parametrize("builder", [weierstrass, weierstrass_short])
def test_axioms(builder):
    report = builder().check_axioms(3)
    assert all(report.values()), report


def test_right_unit_matches_substitution_table(full):
    """Standard transformation formulas for x = x' + r, y = y' + s x' + t."""
    g = full.gamma_ring(1)
    a1, a2, a3, a4, a6, r, s, t = g.gens()
    expected = [
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1,
    ]
    for k, e in enumerate(expected):
        assert full.eta_right(full.base.gen(k)) == e


def test_short_right_unit_matches_sympy(short):
    b2, b4, b6, r, x = sympy.symbols("b2 b4 b6 r x")
    curve = sympy.expand((4 * x ** 3 + b2 * x ** 2 + 2 * b4 * x + b6).subs(x, x + r))
    poly = sympy.Poly(curve, x)
    ref = [poly.coeff_monomial(x ** 2), poly.coeff_monomial(x) / 2, poly.coeff_monomial(1)]
    g = short.gamma_ring(1)
    syms = dict(zip(g.names, (b2, b4, b6, r)))
    for k, e in enumerate(ref):
        el = short.eta_right(short.base.gen(k))
        as_sympy = sum(c * sympy.prod([syms[n] ** p for n, p in zip(g.names, m)])
                       for m, c in el.terms.items())
        assert sympy.expand(as_sympy - e) == 0


def test_discriminant_is_invariant(full, short):
    for H in (full, short):
        assert H.eta_right(H.discriminant) == H.eta_left(H.discriminant)
        assert H.discriminant.degree == 12


@pytest.mark.parametrize("s,n", [(s, n) for s in range(3) for n in range(9)])
def test_dd_zero_full_small(full, s, n):
    assert CobarComplex(full, 4, 8).check_dd(s, n)


def test_dd_zero_sampled_elements(full):
    C = CobarComplex(full, 5, 20)
    rng = random.Random(1)
    for s, n in [(3, 16), (3, 20), (2, 20)]:
        for _ in range(2):
            mono = C.random_basis_element(s, n, rng)
            assert sum(mono[full.base.ngens:]) >= 0
            assert not C.apply_d(s + 1, C.apply_d(s, {mono: 1}))


@pytest.mark.parametrize("which,s_max,n_max", [("full", 2, 5), ("short", 2, 10)])
def test_homology_against_dense_oracle(full, short, which, s_max, n_max):
    H = full if which == "full" else short
    C = CobarComplex(H, s_max, n_max)
    chart = ext_chart(s_max, n_max, 3 if which == "short" else 2, algebroid=H)
    for s in range(s_max + 1):
        for n in range(n_max + 1):
            dim = C.basis_size(s, n)
            if dim == 0:
                continue
            d_out = C.differential(s, n).to_dense()
            d_in = C.incoming(s, n).to_dense()
            free, tors = dense_homology(d_in, d_out, dim)
            g = chart.integral_group(s, n)
            assert (g.free, list(g.torsion)) == (free, tors), (s, n)


def test_basis_size_counts_listing(full):
    C = CobarComplex(full, 3, 7)
    for s in range(4):
        for n in range(8):
            assert C.basis_size(s, n) == len(C.basis(s, n))


def test_ext0_matches_modular_forms(short):
    chart = ext_chart(0, 24, 3)
    assert [chart.group(0, n).free for n in range(25)] == \
        [modular_form_count(n) for n in range(25)]


def test_p3_named_classes(chart3):
    assert chart3.group(1, 2) == Z3 and chart3.group(2, 6) == Z3
    assert set(chart3.classes) == {"Δ", "α", "β"}
    assert chart3.integral_group(1, 2) == FGAbGroup(0, (12,))


def test_p3_products(chart3):
    a, b = chart3.classes["α"], chart3.classes["β"]
    assert chart3.is_zero(yoneda_product(chart3, a, a))
    assert not chart3.is_zero(yoneda_product(chart3, b, a))
    assert not chart3.is_zero(yoneda_product(chart3, a, b))
    one = unit_class(chart3)
    assert chart3.coordinates(yoneda_product(chart3, one, a)) == chart3.coordinates(a)


def test_products_are_cocycles(chart3):
    a, b = chart3.classes["α"], chart3.classes["β"]
    for x, y in [(a, b), (b, a), (a, a)]:
        assert chart3.is_cycle(yoneda_product(chart3, x, y))


def test_models_agree_at_3():
    assert compare_models(1, 8, 3) == []


def test_delta_stabilization_alpha():
    chart = ext_chart(1, 26, 3, eager=False)
    st_ = delta_stabilize(chart, 1, 2)
    assert st_.stabilized and st_.require() == Z3
    low = delta_stabilize(ext_chart(1, 14, 3), 1, 2)
    assert not low.stabilized
    with pytest.raises(AssertionError):
        low.require()


def test_p2_chart_flags_names():
    chart = ext_chart(1, 3, 2)
    assert chart.algebroid.name == "weierstrass"
    assert any("p=3" in f for f in chart.flags)
    assert chart.group(1, 1) == FGAbGroup(0, (2,))


def test_short_model_refuses_p2():
    with pytest.raises(ValueError):
        ext_chart(1, 4, 2, algebroid=weierstrass_short())
    with pytest.raises(ValueError):
        ext_chart(1, 4, 4)


def test_resource_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        ext_chart(2, 20, 2, cap=50)
    monkeypatch.setenv(CAP_ENV, "10")
    with pytest.raises(ResourceLimitError):
        ext_chart(2, 10, 2)


def test_out_of_range(chart3):
    with pytest.raises(OutOfRange):
        chart3.group(4, 2)


def test_chart_output(chart3):
    d = chart3.to_dict()
    assert {"s": 1, "n": 2, "free": 0, "torsion": [3], "classes": ["α"]} in d["bidegrees"]
    assert chart3.to_json().endswith("\n")
    text = chart3.to_ascii()
    assert text.splitlines()[0].startswith("s=3")
    assert "α at (1,2)" in text


@settings(max_examples=15)
@given(st.integers(0, 3), st.integers(0, 14))
def test_localized_group_is_p_local(s, n):
    chart = ext_chart(3, 14, 3, eager=False)
    g = chart.group(s, n)
    assert all(t in (3, 9, 27, 81) for t in g.torsion)
