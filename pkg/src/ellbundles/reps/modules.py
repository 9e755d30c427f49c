"""Matrix representations of finite groups over Z, Z_(p) and F_p."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
import sympy

from ..exactalg.rings import FiniteField, Integers, LocalizedAt
from . import fp
from .groups import FiniteGroup, GroupError, subgroup_embedding


class RepError(ValueError):
    pass


def _reduce(m: np.ndarray, domain) -> np.ndarray:
    return m % domain.q if isinstance(domain, FiniteField) else m


def _det_ok(m: np.ndarray, domain) -> bool:
    if isinstance(domain, FiniteField):
        return fp.is_invertible(m, domain.q)
    d = int(sympy.Matrix(m.tolist()).det()) if m.size else 1
    if isinstance(domain, LocalizedAt):
        return domain.is_unit(d)
    return d in (1, -1)


@dataclass
class MatrixRep:
    group: FiniteGroup
    domain: object
    gens: tuple                    # one square matrix per group generator
    name: str = ""
    mats: list = field(default=None, repr=False)

    def __post_init__(self):
        gens = tuple(_reduce(np.asarray(g, dtype=np.int64), self.domain) for g in self.gens)
        if len(gens) != len(self.group.generators):
            raise RepError("one matrix per group generator is required")
        n = gens[0].shape[0] if gens else 0
        for g in gens:
            if g.shape != (n, n):
                raise RepError("generator matrices must be square of equal size")
            if not _det_ok(g, self.domain):
                raise RepError(f"generator matrix not invertible over {self.domain}")
        self.gens = gens
        # walk the Cayley graph; consistency on every edge means the
        # assignment respects all relations of the group
        G = self.group
        mats = {G.identity: np.eye(n, dtype=np.int64)}
        queue = deque([G.identity])
        while queue:
            a = queue.popleft()
            for g, M in zip(G.generators, gens):
                b = G.mul(a, g)
                val = _reduce(mats[a] @ M, self.domain)
                if b in mats:
                    if not np.array_equal(mats[b], val):
                        raise RepError(f"{self.name or 'matrices'} violate a relation of {G.name}")
                else:
                    mats[b] = val
                    queue.append(b)
        self.mats = [mats[i] for i in range(G.order)]

    @property
    def rank(self) -> int:
        return self.gens[0].shape[0] if self.gens else self.mats[0].shape[0]

    @property
    def p(self) -> int:
        if not isinstance(self.domain, FiniteField):
            raise RepError("not over a finite field")
        return self.domain.q

    def matrix(self, g: int) -> np.ndarray:
        return self.mats[g]

    def __repr__(self):
        return f"MatrixRep({self.name or '?'}, {self.group.name}, {self.domain}, rank={self.rank})"


@dataclass
class RepMap:
    source: MatrixRep
    target: MatrixRep
    matrix: np.ndarray

    def __post_init__(self):
        if self.source.group is not self.target.group and \
                self.source.group.elements != self.target.group.elements:
            raise RepError("maps must be between representations of the same group")
        if self.source.domain != self.target.domain:
            raise RepError("maps must be over one coefficient domain")
        self.matrix = _reduce(np.asarray(self.matrix, dtype=np.int64), self.source.domain)
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise RepError("map has the wrong shape")
        for A, B in zip(self.source.gens, self.target.gens):
            lhs = _reduce(B @ self.matrix, self.source.domain)
            rhs = _reduce(self.matrix @ A, self.source.domain)
            if not np.array_equal(lhs, rhs):
                raise RepError("map is not equivariant")

    def compose(self, inner: "RepMap") -> "RepMap":
        return RepMap(inner.source, self.target, self.matrix @ inner.matrix)


# -- constructions ---------------------------------------------------------------


def trivial(G: FiniteGroup, domain, rank: int = 1) -> MatrixRep:
    return MatrixRep(G, domain, tuple(np.eye(rank, dtype=np.int64) for _ in G.generators),
                     "trivial" if rank == 1 else f"trivial^{rank}")


def direct_sum(*reps: MatrixRep) -> MatrixRep:
    G, dom = reps[0].group, reps[0].domain
    gens = []
    for k in range(len(G.generators)):
        n = sum(r.rank for r in reps)
        M = np.zeros((n, n), dtype=np.int64)
        o = 0
        for r in reps:
            M[o:o + r.rank, o:o + r.rank] = r.gens[k]
            o += r.rank
        gens.append(M)
    return MatrixRep(G, dom, tuple(gens), " + ".join(r.name or "?" for r in reps))


def tensor(a: MatrixRep, b: MatrixRep) -> MatrixRep:
    if a.domain != b.domain:
        raise RepError("tensor factors over different domains")
    return MatrixRep(a.group, a.domain, tuple(np.kron(x, y) for x, y in zip(a.gens, b.gens)),
                     f"({a.name})⊗({b.name})")


def dual(a: MatrixRep) -> MatrixRep:
    """(g f)(v) = f(g^{-1} v): the matrix of g is ρ(g^{-1})^T."""
    G = a.group
    gens = tuple(a.mats[G.inverses[g]].T.copy() for g in G.generators)
    return MatrixRep(G, a.domain, gens, f"dual({a.name})")


def reduce_mod(a: MatrixRep, p: int) -> MatrixRep:
    return MatrixRep(a.group, FiniteField(p), a.gens, f"{a.name} mod {p}")


def restrict(a: MatrixRep, H: FiniteGroup) -> MatrixRep:
    emb = subgroup_embedding(H, a.group)
    return MatrixRep(H, a.domain, tuple(a.mats[emb[h]] for h in H.generators),
                     f"res({a.name})")


def left_transversal(H: FiniteGroup, G: FiniteGroup) -> tuple:
    emb = subgroup_embedding(H, G)
    hset = set(emb)
    reps, covered = [], set()
    for g in range(G.order):
        if g in covered:
            continue
        reps.append(g)
        covered |= {G.mul(g, h) for h in hset}
    return tuple(reps), emb


def induce(a: MatrixRep, G: FiniteGroup) -> MatrixRep:
    """Coset induction: g (t_i ⊗ v) = t_j ⊗ h v where g t_i = t_j h."""
    H = a.group
    T, emb = left_transversal(H, G)
    back = {g: h for h, g in enumerate(emb)}
    n, m = a.rank, len(T)
    gens = []
    for g in G.generators:
        M = np.zeros((m * n, m * n), dtype=np.int64)
        for i, t in enumerate(T):
            gt = G.mul(g, t)
            for j, tj in enumerate(T):
                h = G.mul(G.inverses[tj], gt)
                if h in back:
                    M[j * n:(j + 1) * n, i * n:(i + 1) * n] = a.mats[back[h]]
                    break
            else:
                raise GroupError("coset bookkeeping failed")
        gens.append(M)
    return MatrixRep(G, a.domain, tuple(gens), f"ind({a.name})")


def pullback(a: MatrixRep, src: FiniteGroup, hom: tuple) -> MatrixRep:
    """Compose with a group homomorphism src -> a.group (given elementwise)."""
    return MatrixRep(src, a.domain, tuple(a.mats[hom[g]] for g in src.generators),
                     f"pullback({a.name})")


def submodule(a: MatrixRep, basis: np.ndarray, name: str = "") -> MatrixRep:
    """Representation on the span of the columns of ``basis`` (F_p only)."""
    p = a.p
    gens = tuple(fp.solve(basis, fp.matmul(M, basis, p), p) for M in a.gens)
    return MatrixRep(a.group, a.domain, gens, name or f"sub({a.name})")


def is_equal(a: MatrixRep, b: MatrixRep) -> bool:
    return a.domain == b.domain and all(np.array_equal(x, y) for x, y in zip(a.gens, b.gens))


__all__ = [
    "MatrixRep", "RepMap", "RepError", "trivial", "direct_sum", "tensor", "dual",
    "reduce_mod", "restrict", "induce", "pullback", "submodule", "left_transversal",
    "Integers", "LocalizedAt", "FiniteField",
]
