"""Concrete lattices: the S3-lattices at 3 and the C2 x C2 family M_n."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exactalg import SparseIntMatrix, p_part, smith_normal_form
from ..exactalg.rings import FiniteField, Integers, LocalizedAt
from .groups import build_group, q8_to_c2xc2
from .modules import MatrixRep, RepMap, pullback, trivial

Z3 = LocalizedAt(3)


def _zeta_coords(k: int) -> tuple:
    """ζ^k in the basis (1, ζ), using ζ^2 = -1 - ζ."""
    return [(1, 0), (0, 1), (-1, -1)][k % 3]


def _sum_zero_coords(c) -> tuple:
    """c0 t0 + c1 t1 + c2 t2 with c0+c1+c2 = 0, in the basis (t0-t1, t1-t2)."""
    assert sum(c) == 0
    return (c[0], c[0] + c[1])


@dataclass
class S3Lattices:
    P: MatrixRep
    Zzeta: MatrixRep
    IdealZeta: MatrixRep
    Z: MatrixRep


def s3_lattices() -> S3Lattices:
    """P = permutation lattice on t0, t1, t2; Z_(3)[ζ] with S3 permuting
    (1, ζ, ζ^2); the ideal (1 - ζ) with basis u = 1 - ζ, v = ζ - ζ^2."""
    G = build_group("S3")
    P_gens, Zz_gens, I_gens = [], [], []
    for g in G.generators:
        perm = G.elements[g]
        Pm = np.zeros((3, 3), dtype=np.int64)
        for k in range(3):
            Pm[perm[k], k] = 1
        P_gens.append(Pm)
        Zz_gens.append(np.array([_zeta_coords(perm[0]), _zeta_coords(perm[1])]).T)
        cols = []
        for a, b in ((0, 1), (1, 2)):
            c = [0, 0, 0]
            c[perm[a]] += 1
            c[perm[b]] -= 1
            cols.append(_sum_zero_coords(c))
        I_gens.append(np.array(cols).T)
    return S3Lattices(
        MatrixRep(G, Z3, tuple(P_gens), "P"),
        MatrixRep(G, Z3, tuple(Zz_gens), "Z(3)[ζ]"),
        MatrixRep(G, Z3, tuple(I_gens), "(1-ζ)Z(3)[ζ]"),
        trivial(G, Z3),
    )


@dataclass
class ShortExactSequence:
    left: RepMap
    right: RepMap
    name: str


def rep_sequences() -> tuple:
    """0 -> Z -> P -> Z[ζ] -> 0 (t0 -> 1) and 0 -> (1-ζ) -> P -> Z -> 0
    (1 - ζ -> t0 - t1)."""
    L = s3_lattices()
    seq1 = ShortExactSequence(
        RepMap(L.Z, L.P, np.array([[1], [1], [1]])),
        RepMap(L.P, L.Zzeta, np.array([[1, 0, -1], [0, 1, -1]])),
        "RepSeq1")
    seq2 = ShortExactSequence(
        RepMap(L.IdealZeta, L.P, np.array([[1, 0], [-1, 1], [0, -1]])),
        RepMap(L.P, L.Z, np.array([[1, 1, 1]])),
        "RepSeq2")
    return seq1, seq2


def _invariant_factors(m: np.ndarray) -> tuple:
    return smith_normal_form(SparseIntMatrix.from_dense(m.tolist()), transforms=False).diagonal


def check_exact(seq: ShortExactSequence, p: int = 3) -> dict:
    """Exactness over Z_(p): g f = 0, f injective with p-torsion-free
    cokernel, g surjective."""
    f, g = seq.left.matrix, seq.right.matrix
    df, dg = _invariant_factors(f), _invariant_factors(g)
    mid = seq.left.target.rank
    return {
        "composite_zero": not np.any(g @ f),
        "left_injective": len(df) == f.shape[1],
        "left_saturated": all(p_part(d, p) == 1 for d in df),
        "right_surjective": len(dg) == g.shape[0] and all(p_part(d, p) == 1 for d in dg),
        "ranks_add_up": len(df) + len(dg) == mid,
    }


def lambda2_identification() -> RepMap:
    """Λ = Z_(3)<λ1, λ2> with the S3-action transported along λ1 -> ζ - 1,
    λ2 -> ζ^2 - 1; returns that map into the ideal (1 - ζ)."""
    L = s3_lattices()
    # ζ - 1 = -u, ζ^2 - 1 = -u - v
    phi = np.array([[-1, -1], [0, -1]], dtype=np.int64)
    phi_inv = np.array([[-1, 1], [0, -1]], dtype=np.int64)
    assert np.array_equal(phi @ phi_inv, np.eye(2, dtype=np.int64))
    G = L.IdealZeta.group
    Lam = MatrixRep(G, Z3, tuple(phi_inv @ M @ phi for M in L.IdealZeta.gens), "Λ2")
    return RepMap(Lam, L.IdealZeta, phi)


def ideal_to_zeta_coords(v) -> tuple:
    """Coordinates in (1, ζ) of a u/v-combination (u = 1 - ζ, v = ζ - ζ^2 = 1 + 2ζ)."""
    a, b = int(v[0]), int(v[1])
    return (a + b, -a + 2 * b)


def m_n(n: int, domain=Integers()) -> MatrixRep:
    """Rank 2n+1 lattice with basis x_1..x_n, y_0..y_n:
    g1 x_i = y_{i-1} + (-1)^i x_i, g2 x_i = y_i + (-1)^i x_i,
    g1 y_j = (-1)^j y_j, g2 y_j = -(-1)^j y_j."""
    if n < 0:
        raise ValueError("n must be non-negative")
    G = build_group("C2xC2")
    N = 2 * n + 1
    x = lambda i: i - 1          # noqa: E731
    y = lambda j: n + j          # noqa: E731
    g1 = np.zeros((N, N), dtype=np.int64)
    g2 = np.zeros((N, N), dtype=np.int64)
    for i in range(1, n + 1):
        s = (-1) ** i
        g1[y(i - 1), x(i)] += 1
        g1[x(i), x(i)] += s
        g2[y(i), x(i)] += 1
        g2[x(i), x(i)] += s
    for j in range(n + 1):
        s = (-1) ** j
        g1[y(j), y(j)] = s
        g2[y(j), y(j)] = -s
    return MatrixRep(G, domain, (g1, g2), f"M_{n}" if isinstance(domain, Integers)
                     else f"M_{n}/{getattr(domain, 'q', '')}")


def mbar(n: int) -> MatrixRep:
    rep = m_n(n, FiniteField(2))
    rep.name = f"Mbar_{n}"
    return rep


def pullback_q8(rep: MatrixRep) -> MatrixRep:
    """Pull a C2 x C2 representation back along ρ: Q8 -> C2 x C2."""
    if rep.group.name != "C2xC2":
        raise ValueError("expected a representation of C2xC2")
    Q = build_group("Q8")
    out = pullback(rep, Q, q8_to_c2xc2(Q, rep.group))
    out.name = f"{rep.name}|Q8"
    return out
