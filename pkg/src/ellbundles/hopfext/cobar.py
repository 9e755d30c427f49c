"""Normalized cobar complex of a Hopf algebroid.

N^s_n is spanned by monomials of C^s = A[slot_1..slot_s] of degree n that
involve every slot (the augmentation-coideal tensor power), and
d = sum_i (-1)^i δ^i.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

from ..exactalg.matrix import SparseIntMatrix
from ..exactalg.rings import GradedElement, _monomials, poly_add_into, poly_mul
from .algebroid import HopfAlgebroid

DEFAULT_BASIS_CAP = 20000
CAP_ENV = "ELLBUNDLES_BASIS_CAP"


class ResourceLimitError(RuntimeError):
    pass


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_BASIS_CAP


@lru_cache(maxsize=None)
def _slot_monomials(cover_degrees: tuple, d: int) -> tuple:
    return tuple(m for m in _monomials(cover_degrees, d) if any(m))


@lru_cache(maxsize=None)
def _slot_count(cover_degrees: tuple, k: int, m: int) -> int:
    """Number of k-slot products of degree m with every slot nontrivial."""
    if k == 0:
        return 1 if m == 0 else 0
    return sum(len(_slot_monomials(cover_degrees, d)) * _slot_count(cover_degrees, k - 1, m - d)
               for d in range(1, m + 1))


@dataclass
class CobarComplex:
    algebroid: HopfAlgebroid
    s_max: int
    n_max: int
    cap: int = field(default_factory=default_cap)
    _bases: dict = field(default_factory=dict, repr=False)
    _index: dict = field(default_factory=dict, repr=False)
    _diffs: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.s_max < 0 or self.n_max < 0:
            raise ValueError("s_max and n_max must be non-negative")

    # -- bases -------------------------------------------------------------------
    def basis_size(self, s: int, n: int) -> int:
        H = self.algebroid
        if n < 0:
            return 0
        return sum(len(_monomials(H.base.degrees, n0)) * _slot_count(H.cover_degrees, s, n - n0)
                   for n0 in range(n + 1))

    def random_basis_element(self, s: int, n: int, rng):
        """A uniformly random basis monomial of N^s_n without listing the basis;
        None if the basis is empty."""
        H = self.algebroid
        cd = H.cover_degrees
        weights = [len(_monomials(H.base.degrees, n0)) * _slot_count(cd, s, n - n0)
                   for n0 in range(n + 1)]
        if not any(weights):
            return None
        n0 = rng.choices(range(n + 1), weights)[0]
        mono = rng.choice(_monomials(H.base.degrees, n0))
        remaining = n - n0
        for k in range(s, 0, -1):
            ds = list(range(1, remaining + 1))
            w = [len(_slot_monomials(cd, d)) * _slot_count(cd, k - 1, remaining - d) for d in ds]
            d = rng.choices(ds, w)[0]
            mono = mono + rng.choice(_slot_monomials(cd, d))
            remaining -= d
        return mono

    def basis(self, s: int, n: int) -> list:
        key = (s, n)
        if key in self._bases:
            return self._bases[key]
        size = self.basis_size(s, n)
        if size > self.cap:
            raise ResourceLimitError(
                f"basis of bidegree ({s},{n}) has {size} elements, cap is {self.cap}")
        H = self.algebroid
        out = []

        def fill(prefix, k, remaining):
            if k == s:
                if remaining == 0:
                    out.append(prefix)
                return
            for d in range(1, remaining + 1):
                for mono in _slot_monomials(H.cover_degrees, d):
                    fill(prefix + mono, k + 1, remaining - d)

        for n0 in range(n + 1):
            for b in _monomials(H.base.degrees, n0):
                fill(b, 0, n - n0)
        self._bases[key] = out
        self._index[key] = {m: i for i, m in enumerate(out)}
        return out

    def index(self, s: int, n: int) -> dict:
        self.basis(s, n)
        return self._index[(s, n)]

    # -- differentials ---------------------------------------------------------------
    def apply_d(self, s: int, terms: dict) -> dict:
        """d on a cochain of C^s given as {exponent tuple: coefficient}."""
        out: dict = {}
        for i in range(s + 2):
            delta = self.algebroid.coface(s, i)
            sign = -1 if i % 2 else 1
            for k, c in terms.items():
                poly_add_into(out, delta.apply_monomial(k), sign * c)
        return out

    def differential(self, s: int, n: int) -> SparseIntMatrix:
        """d : N^s_n -> N^{s+1}_n."""
        key = (s, n)
        if key in self._diffs:
            return self._diffs[key]
        src = self.basis(s, n)
        tgt = self.index(s + 1, n)
        cols = {}
        for j, m in enumerate(src):
            img = self.apply_d(s, {m: 1})
            col = {}
            for k, v in img.items():
                row = tgt.get(k)
                if row is None:
                    raise AssertionError(f"d left the normalized complex at {(s, n)}: {k}")
                col[row] = v
            if col:
                cols[j] = col
        D = SparseIntMatrix.from_cols(len(tgt), len(src), cols)
        self._diffs[key] = D
        return D

    def incoming(self, s: int, n: int) -> SparseIntMatrix:
        if s == 0:
            return SparseIntMatrix.zero(len(self.basis(0, n)), 0)
        return self.differential(s - 1, n)

    def check_dd(self, s: int, n: int) -> bool:
        return (self.differential(s + 1, n) @ self.differential(s, n)).is_zero()

    # -- vectors <-> cochains ------------------------------------------------------------
    def to_vector(self, s: int, n: int, terms: dict) -> dict:
        idx = self.index(s, n)
        vec = {}
        for k, v in terms.items():
            if k not in idx:
                raise ValueError(f"{k} is not a normalized basis monomial of ({s},{n})")
            vec[idx[k]] = v
        return vec

    def to_terms(self, s: int, n: int, vec: dict) -> dict:
        basis = self.basis(s, n)
        return {basis[i]: v for i, v in vec.items() if v}

    def cup(self, s: int, x: dict, t: int, y: dict) -> dict:
        """Cup product C^s x C^t -> C^{s+t}: x on the first s arrows, y on the
        last t arrows (its coefficients transported along the first s)."""
        H = self.algebroid
        fx = H.front(s, t).apply_terms(x)
        by = H.back(s, t).apply_terms(y)
        return poly_mul(fx, by)

    def render(self, s: int, terms: dict) -> str:
        ring = self.algebroid.gamma_ring(s)
        return repr(GradedElement(ring, terms)) if terms else "0"
