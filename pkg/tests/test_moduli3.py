import json
import random

import pytest
from hypothesis import given, strategies as st

from ellbundles.moduli3 import (DICTIONARY, EXPECTED_SEQUENCES, KINDS, O, EnumerateAll,
                                ExtClassVector, Ealpha, FPush, Fixed, IteratedExtension, Line,
                                MalformedExtension, NotInDictionary, ResolverExhausted,
                                StandardBundle, StandardSummand, Unsupported, Zero, bundle,
                                cohomology_dim, dual, ext_dim, ext_summands, ext_via_adjunction,
                                i_functor, mapped_rep_sequences, normalize, random_bundle,
                                random_extensions, rank_h1_corollary_check, sign_lattice,
                                split_extension, tensor)
from ellbundles.moduli3.bundles import DERIVED_ENTRIES, tensor_summands
from ellbundles.reps import direct_sum, lambda2_identification, s3_lattices

twists = st.integers(-30, 30)
summands = st.builds(StandardSummand, st.sampled_from(KINDS), twists)
bundles = st.lists(summands, max_size=5).map(StandardBundle)
non_fpush = st.builds(StandardSummand, st.sampled_from(["Line", "Ealpha"]), twists)


def one_stage(q, pairs):
    return IteratedExtension((ExtClassVector.from_pairs(q, pairs),))


# -- cohomology and Ext tables -------------------------------------------------------------


def test_cohomology_examples():
    assert cohomology_dim(bundle(Line(2)), 1, 0) == 1
    assert all(cohomology_dim(bundle(FPush(0)), i, j) == 0 for i in (1, 2) for j in range(12))
    assert cohomology_dim(bundle(Ealpha(0)), 1, 4) == 1
    assert cohomology_dim(bundle(Line(0)), 2, 6) == 1
    with pytest.raises(ValueError):
        cohomology_dim(O, 0, 0)


def test_ext_examples():
    assert ext_dim(bundle(Line(-2)), O, 1) == 1
    assert all(ext_dim(bundle(FPush(j)), bundle(s), i) == 0
               for j in range(12) for s in (Line(0), Ealpha(0), FPush(0)) for i in (1, 2))
    assert ext_dim(bundle(Ealpha(-2)), bundle(Ealpha(0)), 1) == 1
    with pytest.raises(ValueError):
        ext_dim(O, O, 3)


@pytest.mark.parametrize("ka", ["Line", "Ealpha"])
@pytest.mark.parametrize("kb", ["Line", "Ealpha"])
@pytest.mark.parametrize("i", [1, 2])
def test_ext_table_equals_adjunction_route(ka, kb, i):
    for a in range(12):
        for b in range(12):
            x, y = StandardSummand(ka, a), StandardSummand(kb, b)
            assert ext_summands(x, y, i) == ext_via_adjunction(x, y, i)


def test_derived_entry_is_marked():
    assert DERIVED_ENTRIES == {("Ealpha", "Ealpha", 2)}
    assert ext_summands(Ealpha(6), Ealpha(0), 2) == 1
    assert ext_summands(Ealpha(0), Ealpha(0), 2) == 0


def test_ealpha_line_reduction_all_twists():
    # Ext^1(E_α ⊗ ω^a, ω^b) = Ext^1(ω^(a-b-2), E_α)
    for a in range(12):
        for b in range(12):
            assert ext_summands(Ealpha(a), Line(b), 1) == ext_summands(Line(a - b - 2), Ealpha(0), 1)


@given(non_fpush, non_fpush)
def test_ext1_duality(x, y):
    assert ext_dim(bundle(x), bundle(y), 1) == ext_dim(dual(bundle(y)), dual(bundle(x)), 1)


@given(bundles, bundles, st.integers(-12, 12), st.sampled_from([1, 2]))
def test_cohomology_additive(a, b, j, i):
    assert cohomology_dim(a + b, i, j) == cohomology_dim(a, i, j) + cohomology_dim(b, i, j)


@given(summands, st.integers(-5, 5))
def test_twist_mod_12(s, k):
    assert s.iso(s.shifted(12 * k))
    assert bundle(s) == bundle(s.shifted(12 * k))


# -- tensor and dual -----------------------------------------------------------------------------


def test_tensor_identities():
    E, F = bundle(Ealpha(0)), bundle(FPush(0))
    assert tensor(E, E) == bundle(FPush(0), Line(-2))
    assert tensor(E, F) == bundle(FPush(0), FPush(-2))
    with pytest.raises(Unsupported):
        tensor(F, F)


def test_dual_identities():
    assert dual(O) == O
    assert dual(bundle(Ealpha(0))) == bundle(Ealpha(2))
    assert dual(bundle(FPush(0))) == bundle(FPush(0))


@given(bundles)
def test_dual_involution(b):
    assert dual(dual(b)) == b


@given(bundles)
def test_unit_tensor(b):
    assert tensor(O, b) == b


@given(non_fpush, summands)
def test_tensor_preserves_rank(a, b):
    assert sum(s.rank for s in tensor_summands(a, b)) == a.rank * b.rank


@given(bundles)
def test_corollary_predicate_on_bundles(b):
    assert rank_h1_corollary_check(b)


def test_corollary_examples():
    assert rank_h1_corollary_check(bundle(FPush(0)))
    assert rank_h1_corollary_check(bundle(Ealpha(0)))
    assert rank_h1_corollary_check(O)
    assert rank_h1_corollary_check(bundle(FPush(0), FPush(5)))


# -- normalization ------------------------------------------------------------------------------


def test_normalize_ealpha():
    assert normalize(one_stage(0, [(Line(-2), 1)])).forms == {bundle(Ealpha(0))}


def test_normalize_fpush_from_ealpha():
    assert normalize(one_stage(0, [(Ealpha(-2), 1)])).forms == {bundle(FPush(0))}


def test_normalize_two_lines_residual_on_line():
    e = one_stage(0, [(Line(-2), 1), (Line(-4), 0)])
    assert normalize(e, Fixed([(1,)])).forms == {bundle(FPush(0))}
    assert normalize(e, Zero()).forms == {bundle(Ealpha(0), Line(-4))}
    assert normalize(e).forms == {bundle(FPush(0)), bundle(Ealpha(0), Line(-4))}


def test_normalize_residual_on_ealpha_requeues():
    # merge ω^-2 into E_α; residual y on E_α ⊗ ω^-2 gives f_*f^*O, then O(-2) on top
    e = one_stage(0, [(Line(-2), 1), (Ealpha(-2), 0)])
    forms = normalize(e, Fixed([(1,), (0,)])).forms
    assert forms == {bundle(FPush(0), Line(-2))}
    assert normalize(e).forms == {bundle(FPush(0), Line(-2)), bundle(Ealpha(0), Ealpha(-2))}
    with pytest.raises(MalformedExtension):
        normalize(e, Fixed([(1,), (1,)]))


def test_zero_class_is_split():
    top = bundle(Ealpha(3), Line(5), FPush(1))
    e = IteratedExtension((ExtClassVector.zero(7, top),))
    assert normalize(e).forms == {top + Line(7)}


def test_malformed_class_rejected():
    with pytest.raises(MalformedExtension):
        one_stage(0, [(Line(0), 1)])
    with pytest.raises(MalformedExtension):
        one_stage(0, [(FPush(-2), 1)])
    with pytest.raises(MalformedExtension):
        IteratedExtension(())


def test_stage_chain_must_follow_normal_forms():
    s1 = ExtClassVector.from_pairs(0, [(Line(-2), 1)])
    good = ExtClassVector.from_pairs(2, [(Ealpha(0), 1)])
    bad = ExtClassVector.from_pairs(2, [(Line(0), 1)])
    assert normalize(IteratedExtension((s1, good))).forms == {bundle(FPush(2))}
    with pytest.raises(MalformedExtension):
        normalize(IteratedExtension((s1, bad)))


def test_fixed_resolver_exhaustion():
    e = one_stage(0, [(Line(-2), 1), (Line(-4), 0)])
    with pytest.raises(ResolverExhausted):
        normalize(e, Fixed([]))


def test_single_component_order_invariance():
    # two copies of ω^-2 with the class on either one give the same result
    a = one_stage(0, [(Line(-2), 1), (Line(10), 0)])
    b = one_stage(0, [(Line(-2), 0), (Line(10), 1)])
    assert normalize(a).forms == normalize(b).forms


def test_json_round_trip():
    e = random_extensions(5, seed=11)[4]
    again = IteratedExtension.from_dict(json.loads(e.to_json()))
    assert normalize(again).forms == normalize(e).forms
    with pytest.raises(MalformedExtension):
        IteratedExtension.from_dict({"stages": [{"twist": 0}]})


@given(st.integers(0, 10 ** 6))
def test_random_extensions_properties(seed):
    for e in random_extensions(3, seed=seed):
        for b in normalize(e, EnumerateAll()).forms:
            assert isinstance(b, StandardBundle)
            assert b.rank == e.rank
            assert rank_h1_corollary_check(b)
            again = split_extension(b)
            if again is not None:
                assert normalize(again).forms == {b}


@given(st.integers(0, 10 ** 6))
def test_random_bundle_rank_bound(seed):
    assert random_bundle(random.Random(seed), 8).rank <= 8


# -- I functor -----------------------------------------------------------------------------------


def test_i_functor_dictionary():
    L = s3_lattices()
    assert i_functor(L.P) == bundle(FPush(0))
    assert i_functor(L.Z) == O
    assert i_functor(L.IdealZeta) == bundle(Ealpha(4))
    assert i_functor(L.Zzeta) == bundle(Ealpha(-2))
    assert i_functor(lambda2_identification().source) == bundle(Ealpha(4))
    assert set(DICTIONARY) == {"trivial", "P", "Zzeta", "IdealZeta"}


def test_i_functor_additive():
    L = s3_lattices()
    rep = direct_sum(L.P, L.Zzeta, L.Z, L.Z)
    assert i_functor(rep) == bundle(FPush(0), Ealpha(-2), Line(0), Line(0))


def test_i_functor_rejects_sign():
    with pytest.raises(NotInDictionary):
        i_functor(sign_lattice())


def test_i_functor_sequences():
    for seq in mapped_rep_sequences():
        assert (seq.left, seq.middle, seq.right) == EXPECTED_SEQUENCES[seq.name]
        assert seq.left.rank + seq.right.rank == seq.middle.rank
