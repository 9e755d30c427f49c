"""Finitely generated abelian groups and homology of integer chain complexes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import SparseIntMatrix
from .smith import smith_normal_form


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def p_part(n: int, p: int) -> int:
    out = 1
    n = abs(n)
    while n and n % p == 0:
        n //= p
        out *= p
    return out


@dataclass(frozen=True)
class FGAbGroup:
    free: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free < 0:
            raise ValueError("negative free rank")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_orders(cls, free: int, orders) -> "FGAbGroup":
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        primes: dict = {}
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free += 1
                continue
            d = 2
            while d * d <= n:
                if n % d == 0:
                    q = 1
                    while n % d == 0:
                        n //= d
                        q *= d
                    primes.setdefault(d, []).append(q)
                d += 1
            if n > 1:
                primes.setdefault(n, []).append(n)
        length = max((len(v) for v in primes.values()), default=0)
        factors = [1] * length
        for powers in primes.values():
            powers.sort(reverse=True)
            for k, q in enumerate(powers):
                factors[length - 1 - k] *= q
        return cls(free, tuple(f for f in factors if f > 1))

    def is_trivial(self) -> bool:
        return self.free == 0 and not self.torsion

    def order(self):
        if self.free:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self):
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {"free": self.free, "torsion": list(self.torsion)}


def localize_at_p(g: FGAbGroup, p: int) -> FGAbGroup:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FGAbGroup(g.free, tuple(q for q in (p_part(t, p) for t in g.torsion) if q > 1))


def _check_complex(d_out: SparseIntMatrix, d_in: SparseIntMatrix):
    if d_out.ncols != d_in.nrows:
        raise ValueError(f"differentials not composable: {d_out.shape} after {d_in.shape}")
    if not (d_out @ d_in).is_zero():
        raise ValueError("d_out ∘ d_in is not zero")


def homology_at(d_out: SparseIntMatrix, d_in: SparseIntMatrix) -> FGAbGroup:
    """ker(d_out) / im(d_in).

    ker(d_out) is saturated, so the torsion of coker(d_in) already lies in it
    and the invariant factors of d_in give the torsion directly.
    """
    _check_complex(d_out, d_in)
    r_out = smith_normal_form(d_out, transforms=False).rank
    snf_in = smith_normal_form(d_in, transforms=False)
    return FGAbGroup(d_out.ncols - r_out - snf_in.rank, tuple(snf_in.torsion))


@dataclass
class HomologyData:
    """Homology with explicit cycle representatives.

    ``generators[k]`` is a cycle (sparse vector); the first ``group.free`` are
    free generators, the rest have orders ``group.torsion`` in order.
    """

    group: FGAbGroup
    generators: list
    _left_inv: SparseIntMatrix = field(repr=False)
    _rank_in: int = field(repr=False)
    _torsion_slots: list = field(repr=False)
    _free_coord: SparseIntMatrix = field(repr=False)
    _d_out: SparseIntMatrix = field(repr=False)

    def coordinates(self, cycle: dict) -> tuple:
        """Integer coordinates of a cycle: free part exactly, torsion part
        reduced modulo the orders."""
        if self._d_out.apply(cycle):
            raise ValueError("vector is not a cycle")
        c = self._left_inv.apply(cycle)
        tail = {k - self._rank_in: v for k, v in c.items() if k >= self._rank_in}
        free = self._free_coord.apply(tail)
        coords = [free.get(k, 0) for k in range(self.group.free)]
        for slot, d in zip(self._torsion_slots, self.group.torsion):
            coords.append(c.get(slot, 0) % d)
        return tuple(coords)

    def is_zero_class(self, cycle: dict, p: int | None = None) -> bool:
        coords = self.coordinates(cycle)
        f = self.group.free
        if any(coords[:f]):
            return False
        for x, d in zip(coords[f:], self.group.torsion):
            mod = d if p is None else p_part(d, p)
            if x % mod:
                return False
        return True


def homology_with_generators(d_out: SparseIntMatrix, d_in: SparseIntMatrix) -> HomologyData:
    _check_complex(d_out, d_in)
    n = d_in.nrows
    snf = smith_normal_form(d_in)
    r = snf.rank
    L = snf.left
    Lcols = L.cols()
    # d_out restricted to the complement span(L_r, ..., L_{n-1})
    W_cols = {}
    for k in range(r, n):
        img = d_out.apply(Lcols.get(k, {}))
        if img:
            W_cols[k - r] = img
    W = SparseIntMatrix.from_cols(d_out.nrows, n - r, W_cols)
    snf_w = smith_normal_form(W)
    rw = snf_w.rank
    Qw = snf_w.right_inv.cols()
    free_gens = []
    for k in range(rw, n - r):
        u = Qw.get(k, {})
        vec: dict = {}
        for t, coef in u.items():
            for i, v in Lcols.get(t + r, {}).items():
                vec[i] = vec.get(i, 0) + coef * v
        free_gens.append({i: v for i, v in vec.items() if v})
    # rows rw.. of R_w give kernel coordinates
    Rw_rows = snf_w.right.rows()
    free_coord = SparseIntMatrix.from_rows(
        n - r - rw, n - r,
        {k - rw: Rw_rows.get(k, {}) for k in range(rw, n - r)})
    torsion_slots = [k for k, d in enumerate(snf.diagonal) if d > 1]
    tors_gens = [dict(Lcols.get(k, {})) for k in torsion_slots]
    group = FGAbGroup(len(free_gens), tuple(snf.diagonal[k] for k in torsion_slots))
    return HomologyData(group, free_gens + tors_gens, snf.left_inv, r, torsion_slots,
                        free_coord, d_out)
