"""Endomorphism algebras, Jacobson radicals and Krull–Schmidt decomposition
over prime fields."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import fp
from .modules import MatrixRep, RepError, submodule

DEFAULT_RANK_BOUND = 128


class RankBoundError(RepError):
    pass


def hom_space(a: MatrixRep, b: MatrixRep) -> list:
    """Basis of Hom_G(a, b) as (rank b) x (rank a) matrices."""
    p = a.p
    m, n = b.rank, a.rank
    blocks = []
    for A, B in zip(a.gens, b.gens):
        # vec(B X - X A) = (I ⊗ B - A^T ⊗ I) vec(X), column-major vec
        blocks.append((np.kron(np.eye(n, dtype=np.int64), B)
                       - np.kron(A.T, np.eye(m, dtype=np.int64))) % p)
    ns = fp.nullspace(np.vstack(blocks), p)
    return [ns[:, k].reshape((m, n), order="F") for k in range(ns.shape[1])]


def _batched_matpow(z: np.ndarray, e: int, mod: int) -> np.ndarray:
    n = z.shape[-1]
    out = np.broadcast_to(np.eye(n, dtype=np.int64), z.shape).copy()
    base = z % mod
    while e:
        if e & 1:
            out = np.matmul(out, base) % mod
        base = np.matmul(base, base) % mod
        e >>= 1
    return out


def _trace_functional(xs: np.ndarray, ys: np.ndarray, p: int, i: int) -> np.ndarray:
    """G[a, b] = Tr((x_a y_b)^(p^i) mod p^(i+1)) / p^i mod p, on integer lifts."""
    mod = p ** (i + 1)
    out = np.zeros((len(xs), len(ys)), dtype=np.int64)
    chunk = max(1, 200000 // max(1, len(ys) * xs.shape[-1] ** 2))
    for lo in range(0, len(xs), chunk):
        prod = np.matmul(xs[lo:lo + chunk, None], ys[None]) % p
        t = np.trace(_batched_matpow(prod, p ** i, mod), axis1=-2, axis2=-1) % mod
        if np.any(t % (p ** i)):
            raise ArithmeticError("trace functional not divisible by p^i")
        out[lo:lo + chunk] = (t // p ** i) % p
    return out


def jacobson_radical(basis: list, p: int, n: int) -> list:
    """Radical of the matrix algebra spanned by ``basis`` (n x n over F_p).

    Iterated trace-form kernels: I_{-1} = A and
    I_i = {x in I_{i-1} : g_i(x y) = 0 for all y in A} where
    g_i(z) = Tr(Z^(p^i) mod p^(i+1)) / p^i for an integer lift Z; the radical
    is I_l with l = floor(log_p n).
    """
    if not basis:
        return []
    ell = 0
    while p ** (ell + 1) <= n:
        ell += 1
    ys = np.array(basis, dtype=np.int64) % p
    current = ys.copy()
    for i in range(ell + 1):
        if not len(current):
            break
        G = _trace_functional(current, ys, p, i)
        ns = fp.nullspace(G.T, p)
        current = np.einsum("ak,aij->kij", ns, current) % p
    return [m for m in current]


def _check_nilpotent_ideal(rad: list, basis: list, p: int) -> None:
    if not rad:
        return
    n = rad[0].shape[0]
    R = np.array(rad, dtype=np.int64)
    B = np.array(basis, dtype=np.int64)
    # membership test via the annihilator of span(R)
    ann = fp.nullspace(R.reshape(len(rad), -1), p).T
    prods = np.concatenate([np.matmul(R[:, None], B[None]).reshape(-1, n * n),
                            np.matmul(B[:, None], R[None]).reshape(-1, n * n)]) % p
    if np.any((prods @ ann.T) % p):
        raise ArithmeticError("radical is not an ideal")
    # R acts faithfully on F_p^n, so R is nilpotent iff R^k F_p^n reaches 0
    space = np.eye(n, dtype=np.int64)
    for _ in range(n + 1):
        imgs = np.concatenate([fp.matmul(r, space, p) for r in rad], axis=1)
        if not imgs.any():
            return
        space = fp.column_space(imgs, p)
    raise ArithmeticError("radical is not nilpotent")


@dataclass
class EndAlgebra:
    basis: list
    radical: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def radical_dim(self) -> int:
        return len(self.radical)

    @property
    def quotient_dim(self) -> int:
        return self.dim - self.radical_dim

    @property
    def certifies_indecomposable(self) -> bool:
        return self.quotient_dim == 1


def end_algebra(rep: MatrixRep, check: bool = True) -> EndAlgebra:
    basis = hom_space(rep, rep)
    rad = jacobson_radical(basis, rep.p, rep.rank)
    if check:
        _check_nilpotent_ideal(rad, basis, rep.p)
    return EndAlgebra(basis, rad)


# -- fingerprints and isomorphism ------------------------------------------------


def fingerprint(rep: MatrixRep) -> str:
    """Ranks of (g - 1)^k over all group elements g and k up to stabilization."""
    p, n = rep.p, rep.rank
    I = np.eye(n, dtype=np.int64)
    data = [n]
    for M in rep.mats:
        X = (M - I) % p
        Y = I
        ranks = []
        last = n
        for _ in range(n):
            Y = fp.matmul(Y, X, p)
            r = fp.rank(Y, p)
            ranks.append(r)
            if r == last or r == 0:
                break
            last = r
        data.append(tuple(ranks))
    return hashlib.sha256(repr(data).encode()).hexdigest()[:12]


def is_isomorphic(a: MatrixRep, b: MatrixRep, end_a: EndAlgebra | None = None,
                  seed: int = 0, tries: int = 64) -> bool:
    """Exact when End(a) is local with residue field F_p: a ≅ b iff some
    g f (f: a -> b, g: b -> a basis elements) is invertible.  Otherwise a
    seeded random search for an invertible element of Hom(a, b)."""
    if a.rank != b.rank or a.domain != b.domain:
        return False
    p = a.p
    if a.rank == 0:
        return True
    if fingerprint(a) != fingerprint(b):
        return False
    hab = hom_space(a, b)
    if not hab:
        return False
    end_a = end_a or end_algebra(a, check=False)
    if end_a.certifies_indecomposable:
        hba = hom_space(b, a)
        return any(fp.is_invertible(fp.matmul(g, f, p), p) for f in hab for g in hba)
    rng = np.random.default_rng(seed)
    for f in hab:
        if fp.is_invertible(f, p):
            return True
    for _ in range(tries):
        c = rng.integers(0, p, size=len(hab))
        f = sum(int(ci) * h for ci, h in zip(c, hab)) % p
        if fp.is_invertible(f, p):
            return True
    return False


# -- decomposition -----------------------------------------------------------------


@dataclass
class Summand:
    rep: MatrixRep
    multiplicity: int
    end_dim: int
    radical_dim: int
    certified: bool
    fingerprint: str

    @property
    def rank(self):
        return self.rep.rank


@dataclass
class DecompositionReport:
    input_rank: int
    summands: list
    idempotents: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    seed: int = 0

    def ranks(self) -> list:
        return sorted(s.rank for s in self.summands for _ in range(s.multiplicity))

    def krs_multiset(self) -> list:
        return sorted((s.rank, s.fingerprint, s.multiplicity) for s in self.summands)

    def check(self) -> None:
        if sum(self.ranks()) != self.input_rank:
            raise AssertionError("summand ranks do not add up")

    def to_dict(self) -> dict:
        return {
            "rank": self.input_rank,
            "seed": self.seed,
            "summands": [
                {"rank": s.rank, "multiplicity": s.multiplicity, "end_dim": s.end_dim,
                 "radical_dim": s.radical_dim, "end_mod_rad_dim": s.end_dim - s.radical_dim,
                 "certified": s.certified, "fingerprint": s.fingerprint}
                for s in sorted(self.summands, key=lambda s: (s.rank, s.fingerprint))
            ],
            "idempotents": len(self.idempotents),
            "flags": list(self.flags),
        }


def _fitting_split(rep: MatrixRep, x: np.ndarray):
    """Split along x - λ for the first λ where it is neither nilpotent nor
    invertible; returns (kernel basis, image basis, idempotent) or None."""
    p, n = rep.p, rep.rank
    I = np.eye(n, dtype=np.int64)
    for lam in range(p):
        y = fp.matpow((x - lam * I) % p, n, p)
        r = fp.rank(y, p)
        if 0 < r < n:
            K = fp.nullspace(y, p)          # generalized λ-eigenspace
            Im = fp.column_space(y, p)
            T = np.hstack([K, Im])
            D = np.zeros((n, n), dtype=np.int64)
            D[: K.shape[1], : K.shape[1]] = np.eye(K.shape[1], dtype=np.int64)
            e = fp.matmul(fp.matmul(T, D, p), fp.inverse(T, p), p)
            if not np.array_equal(fp.matmul(e, e, p), e):
                raise ArithmeticError("Fitting projection is not idempotent")
            for M in rep.gens:
                if not np.array_equal(fp.matmul(M, e, p), fp.matmul(e, M, p)):
                    raise ArithmeticError("Fitting projection is not equivariant")
            return K, Im, e
    return None


def _split(rep: MatrixRep, rng, tries: int, idempotents: list, flags: list, out: list):
    p, n = rep.p, rep.rank
    basis = hom_space(rep, rep)
    if len(basis) == 1:
        out.append((rep, EndAlgebra(basis, []), True))
        return
    E = None
    for k in range(tries):
        if k == 8:
            # most pieces are indecomposable by now; certify before trying harder
            E = end_algebra(rep)
            if E.certifies_indecomposable:
                out.append((rep, E, True))
                return
        c = rng.integers(0, p, size=len(basis))
        x = sum(int(ci) * b for ci, b in zip(c, basis)) % p
        found = _fitting_split(rep, x)
        if found is not None:
            K, Im, e = found
            idempotents.append(e)
            _split(submodule(rep, K), rng, tries, idempotents, flags, out)
            _split(submodule(rep, Im), rng, tries, idempotents, flags, out)
            return
    E = E or end_algebra(rep)
    if E.certifies_indecomposable:
        out.append((rep, E, True))
        return
    flags.append(f"rank {n} summand: End/rad has dimension {E.quotient_dim}, "
                 "no splitting element found (not certified absolutely indecomposable)")
    out.append((rep, E, False))


def decompose(rep: MatrixRep, seed: int = 0, rank_bound: int = DEFAULT_RANK_BOUND,
              tries: int = 64) -> DecompositionReport:
    if rep.rank > rank_bound:
        raise RankBoundError(f"rank {rep.rank} exceeds the bound {rank_bound}")
    rng = np.random.default_rng(seed)
    idempotents, flags, pieces = [], [], []
    _split(rep, rng, tries, idempotents, flags, pieces)
    classes: list = []           # [rep, E, certified, fingerprint, multiplicity]
    for piece, E, cert in pieces:
        fpr = fingerprint(piece)
        for cl in classes:
            if cl[0].rank == piece.rank and cl[3] == fpr and \
                    is_isomorphic(cl[0], piece, end_a=cl[1], seed=seed):
                cl[4] += 1
                break
        else:
            classes.append([piece, E, cert, fpr, 1])
    summands = [Summand(r, m, E.dim, E.radical_dim, cert, fpr)
                for r, E, cert, fpr, m in classes]
    report = DecompositionReport(rep.rank, summands, idempotents, flags, seed)
    report.check()
    return report


def has_summand(report: DecompositionReport, target: MatrixRep, seed: int = 0) -> bool:
    """Whether ``target`` (indecomposable) is isomorphic to a listed summand."""
    E = end_algebra(target, check=False)
    return any(is_isomorphic(target, s.rep, end_a=E, seed=seed) for s in report.summands)
