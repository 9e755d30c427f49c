"""Cohomology of O(m) on a weighted projective line P(k, l).

H^0(O(m)) is free on A(m) = {(a, b) >= 0 : ak + bl = m} and H^1(O(m)) is
free on B(m) = {(c, d) < 0 : ck + dl = m}.  Ranks do not depend on the
coefficient ring, so everything here is ring-agnostic.

Chart x-axis convention: the column index is the twist m itself.
"""
from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class WeightedLine:
    k: int
    l: int

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class LatticePointSet:
    degree: int
    twist: int
    points: tuple

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError("cohomological degree is 0 or 1")

    def __len__(self):
        return len(self.points)

    def validate(self, w: WeightedLine) -> None:
        for a, b in self.points:
            if a * w.k + b * w.l != self.twist:
                raise AssertionError(f"{(a, b)} has weighted sum != {self.twist}")
            if self.degree == 0 and (a < 0 or b < 0):
                raise AssertionError(f"{(a, b)} not in A({self.twist})")
            if self.degree == 1 and (a >= 0 or b >= 0):
                raise AssertionError(f"{(a, b)} not in B({self.twist})")


def h0_basis(w: WeightedLine, m: int) -> LatticePointSet:
    pts = []
    if m >= 0:
        for a in range(m // w.k + 1):
            rest = m - a * w.k
            if rest % w.l == 0:
                pts.append((a, rest // w.l))
    return LatticePointSet(0, m, tuple(pts))


def h1_basis(w: WeightedLine, m: int) -> LatticePointSet:
    # c, d <= -1 forces ck <= m + l, i.e. c >= ... ; iterate c from -1 down
    pts = []
    c = -1
    while c * w.k + (-1) * w.l >= m:
        rest = m - c * w.k
        if rest % w.l == 0 and rest // w.l < 0:
            pts.append((c, rest // w.l))
        c -= 1
    return LatticePointSet(1, m, tuple(sorted(pts)))


def serre_pairing(w: WeightedLine, m: int) -> list:
    """Pairs ((a, b), (-a-1, -b-1)) matching A(m) with B(-m-k-l)."""
    A = h0_basis(w, m)
    B = h1_basis(w, -m - w.k - w.l)
    pairs = [((a, b), (-a - 1, -b - 1)) for a, b in A.points]
    image = {q for _, q in pairs}
    if image != set(B.points) or len(image) != len(pairs):
        raise AssertionError(f"Serre pairing is not a bijection at m={m}")
    back = {(-c - 1, -d - 1) for c, d in B.points}
    if back != set(A.points):
        raise AssertionError(f"inverse pairing fails at m={m}")
    return pairs


@dataclass(frozen=True)
class CohChart:
    weights: tuple
    m_lo: int
    m_hi: int
    h0: tuple   # LatticePointSet per twist
    h1: tuple

    @property
    def h0_ranks(self):
        return [len(s) for s in self.h0]

    @property
    def h1_ranks(self):
        return [len(s) for s in self.h1]

    def to_dict(self):
        def row(sets):
            return [{"m": s.twist, "rank": len(s), "points": [list(p) for p in s.points]}
                    for s in sets]
        return {"weights": list(self.weights), "rows": {"h0": row(self.h0), "h1": row(self.h1)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    def to_ascii(self, glyph: str = "#") -> str:
        """Rows H^1 (top) and H^0; a column of width 3 per twist, one glyph per
        basis element."""
        width = 3
        ms = range(self.m_lo, self.m_hi + 1)

        def cells(ranks):
            return "".join((glyph * r if r else ".").center(width) for r in ranks)

        axis = "".join(str(m).rjust(width) for m in ms)
        lines = [
            "H1 |" + cells(self.h1_ranks),
            "H0 |" + cells(self.h0_ranks),
            "m  |" + axis,
        ]
        return "\n".join(lines) + "\n"


def chart(w: WeightedLine, m_lo: int, m_hi: int) -> CohChart:
    if m_lo > m_hi:
        raise ValueError("empty twist range")
    ms = range(m_lo, m_hi + 1)
    return CohChart((w.k, w.l), m_lo, m_hi,
                    tuple(h0_basis(w, m) for m in ms), tuple(h1_basis(w, m) for m in ms))


def cech_ranks(w: WeightedLine, m: int, box: int = 400) -> tuple:
    """Ranks of H^0, H^1 from the Čech complex itself.

    The three Laurent pieces R[x^±, y]_m, R[x, y^±]_m, R[x^±, y^±]_m are free on
    exponent pairs; the difference map is a 0/±1 matrix whose kernel and
    cokernel ranks are read off by SNF.  Exponents are truncated to
    |e| <= box, which is exact as long as the box contains B(m) and A(m)
    (always true for |m| well below box).
    """
    from .exactalg import SparseIntMatrix, smith_normal_form

    def pts(lo_a, lo_b):
        out = []
        for a in range(-box, box + 1):
            rest = m - a * w.k
            if rest % w.l:
                continue
            b = rest // w.l
            if abs(b) > box:
                continue
            if (lo_a is None or a >= lo_a) and (lo_b is None or b >= lo_b):
                out.append((a, b))
        return out

    u1 = pts(None, 0)
    u2 = pts(0, None)
    u12 = pts(None, None)
    idx = {p: i for i, p in enumerate(u12)}
    ent = {}
    for j, p in enumerate(u1):
        ent[(idx[p], j)] = 1
    for j, p in enumerate(u2):
        ent[(idx[p], len(u1) + j)] = -1
    M = SparseIntMatrix(len(u12), len(u1) + len(u2), ent)
    snf = smith_normal_form(M, transforms=False)
    if snf.torsion:
        raise AssertionError("Čech cokernel has torsion")
    return M.ncols - snf.rank, M.nrows - snf.rank
