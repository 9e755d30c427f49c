import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ellbundles.exactalg.rings import FiniteField, Integers
from ellbundles.reps import (GroupError, MatrixRep, RankBoundError, RepError, RepMap,
                             build_group, check_exact, decompose, direct_sum, dual, end_algebra,
                             fingerprint, has_summand, hom_space, induce, is_isomorphic,
                             jacobson_radical, lambda2_identification, m_n, mbar, pullback_q8,
                             q8_to_c2xc2, reduce_mod, rep_sequences, restrict, s3_lattices,
                             subgroup_embedding, trivial)
from ellbundles.reps import fp
from ellbundles.reps.groups import ORDERS, SUPPORTED
from ellbundles.reps.lattices import ideal_to_zeta_coords

primes = st.sampled_from([2, 3, 5])


@st.composite
def fp_matrices(draw, max_dim=5):
    p = draw(primes)
    r, c = draw(st.integers(1, max_dim)), draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return np.array(rows, dtype=np.int64), p


# -- linear algebra over F_p ----------------------------------------------------------


@given(fp_matrices())
def test_rank_matches_sympy(data):
    m, p = data
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    ref = DomainMatrix([[GF(p)(int(x)) for x in row] for row in m.tolist()], m.shape, GF(p)).rank()
    assert fp.rank(m, p) == ref


@given(fp_matrices())
def test_nullspace_is_kernel(data):
    m, p = data
    ns = fp.nullspace(m, p)
    assert ns.shape[1] == m.shape[1] - fp.rank(m, p)
    assert not np.any(fp.matmul(m, ns, p))


@given(fp_matrices(max_dim=4))
def test_inverse(data):
    m, p = data
    if m.shape[0] == m.shape[1] and fp.is_invertible(m, p):
        assert np.array_equal(fp.matmul(m, fp.inverse(m, p), p), np.eye(m.shape[0], dtype=np.int64))


# -- groups ------------------------------------------------------------------------------


@pytest.mark.parametrize("name", SUPPORTED)
def test_group_orders(name):
    assert build_group(name).order == ORDERS[name]


def test_q8_inside_gl2f3_and_quotient():
    Q, G = build_group("Q8"), build_group("GL2F3")
    assert len(set(subgroup_embedding(Q, G))) == 8
    assert len(set(subgroup_embedding(Q, build_group("SL2F3")))) == 8
    rho = q8_to_c2xc2(Q, build_group("C2xC2"))
    assert len(set(rho)) == 4
    assert sum(1 for x in rho if x == 0) == 2      # kernel {±1}


def test_unsupported_group():
    with pytest.raises(GroupError):
        build_group("A5")


def test_relations_are_enforced():
    G = build_group("C2xC2")
    with pytest.raises(RepError):
        MatrixRep(G, Integers(), (np.array([[0, 1], [1, 1]]), np.eye(2, dtype=np.int64)))


# -- M_n --------------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(6))
def test_m_n_is_a_representation(n):
    rep = m_n(n)
    assert rep.rank == 2 * n + 1 and rep.group.order == 4


@pytest.mark.parametrize("n", range(5))
def test_mbar_certificate(n):
    E = end_algebra(mbar(n))
    assert E.quotient_dim == 1 and E.certifies_indecomposable


def test_sum_of_two_copies_is_not_local():
    E = end_algebra(direct_sum(mbar(1), mbar(1)))
    assert E.quotient_dim == 4


# -- radicals -------------------------------------------------------------------------------


def _upper_triangular_basis(n):
    out = []
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n), dtype=np.int64)
            e[i, j] = 1
            out.append(e)
    return out


@pytest.mark.parametrize("p", [2, 3, 5])
def test_radical_of_upper_triangular_algebra(p):
    rad = jacobson_radical(_upper_triangular_basis(3), p, 3)
    assert len(rad) == 3
    for r in rad:
        assert not np.any(np.tril(r % p))


@pytest.mark.parametrize("p", [2, 3])
def test_matrix_algebra_is_semisimple(p):
    basis = []
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2), dtype=np.int64)
            e[i, j] = 1
            basis.append(e)
    assert jacobson_radical(basis, p, 2) == []


# -- isomorphism, duality, induction ---------------------------------------------------------


def _random_invertible(rng, n, p):
    while True:
        T = rng.integers(0, p, size=(n, n))
        if fp.is_invertible(T, p):
            return T


def _conjugate(rep, T):
    p = rep.p
    Ti = fp.inverse(T, p)
    return MatrixRep(rep.group, rep.domain, tuple(fp.matmul(fp.matmul(T, M, p), Ti, p)
                                                  for M in rep.gens), "conj")


@settings(max_examples=20)
@given(st.integers(0, 3), st.integers(0, 2 ** 31))
def test_conjugate_is_isomorphic(n, seed):
    rep = mbar(n)
    other = _conjugate(rep, _random_invertible(np.random.default_rng(seed), rep.rank, 2))
    assert fingerprint(rep) == fingerprint(other)
    assert is_isomorphic(rep, other)


def test_non_isomorphic_mbar():
    assert not is_isomorphic(mbar(1), mbar(2))
    assert not is_isomorphic(direct_sum(mbar(0), mbar(0), mbar(0)), mbar(1))


def test_double_dual():
    rep = pullback_q8(mbar(2))
    assert is_isomorphic(dual(dual(rep)), rep)


@settings(max_examples=10)
@given(st.integers(0, 2), st.integers(0, 2))
def test_frobenius_reciprocity(a, b):
    G, Q = build_group("GL2F3"), build_group("Q8")
    x = pullback_q8(mbar(a))
    y = induce(pullback_q8(mbar(b)), G)
    assert len(hom_space(induce(x, G), y)) == len(hom_space(x, restrict(y, Q)))


def test_induced_rank():
    G = build_group("GL2F3")
    assert induce(pullback_q8(mbar(2)), G).rank == 30


# -- decomposition --------------------------------------------------------------------------


def _check_report(rep, report):
    assert sum(report.ranks()) == rep.rank
    for e in report.idempotents:
        assert np.array_equal(fp.matmul(e, e, rep.p), e)


def test_decompose_known_sum():
    rep = direct_sum(mbar(2), mbar(1), mbar(1), mbar(0))
    report = decompose(rep, seed=3)
    _check_report(rep, report)
    assert report.ranks() == [1, 3, 3, 5]
    assert sorted((s.rank, s.multiplicity) for s in report.summands) == [(1, 1), (3, 2), (5, 1)]
    assert all(s.certified for s in report.summands)
    assert has_summand(report, mbar(1)) and not has_summand(report, mbar(3))


@pytest.mark.parametrize("n", [1, 2])
def test_res_ind_contains_mbar(n):
    G, Q = build_group("GL2F3"), build_group("Q8")
    x = pullback_q8(mbar(n))
    z = restrict(induce(x, G), Q)
    report = decompose(z)
    _check_report(z, report)
    assert z.rank == 6 * (2 * n + 1)
    assert has_summand(report, x)


def test_ind_mbar1_seed_stability():
    G = build_group("GL2F3")
    rep = induce(pullback_q8(mbar(1)), G)
    multisets = {tuple(decompose(rep, seed=s).krs_multiset()) for s in range(5)}
    assert len(multisets) == 1
    assert max(decompose(rep).ranks()) >= 3


def test_rank_bound():
    with pytest.raises(RankBoundError):
        decompose(mbar(3), rank_bound=4)


# -- lattices ------------------------------------------------------------------------------


def test_rep_sequences_exact():
    for seq in rep_sequences():
        assert all(check_exact(seq).values()), seq.name


def test_lambda2_identification():
    phi = lambda2_identification()
    assert abs(round(np.linalg.det(phi.matrix))) == 1
    # λ1 -> ζ - 1 and λ2 -> ζ^2 - 1 in the basis (1, ζ)
    assert ideal_to_zeta_coords(phi.matrix[:, 0]) == (-1, 1)
    assert ideal_to_zeta_coords(phi.matrix[:, 1]) == (-2, -1)


def test_lattice_reductions_and_maps():
    L = s3_lattices()
    assert L.P.rank == 3 and L.Zzeta.rank == 2 and L.IdealZeta.rank == 2
    red = reduce_mod(L.P, 3)
    assert isinstance(red.domain, FiniteField) and red.p == 3
    with pytest.raises(RepError):
        RepMap(L.Z, L.P, np.array([[1], [0], [0]]))
    assert trivial(L.P.group, L.P.domain).rank == 1
