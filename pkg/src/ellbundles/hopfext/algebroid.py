"""Weierstraß Hopf algebroids.

Two presentations are built from the same recipe: the structure maps are
*derived* by substituting a coordinate change into the curve equation and
reading off coefficients, then checked against the Hopf algebroid axioms.

``weierstrass()``
    A = Z[a1, a2, a3, a4, a6], Γ = A[r, s, t]; x -> x + r, y -> y + s x + t.
``weierstrass_short()``
    A = Z[b2, b4, b6], Γ = A[r]; curve 4y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6,
    x -> x + r.  With 2 inverted this is equivalent to the full algebroid
    (complete the square in y), so its cohomology localized at any odd prime
    agrees with the full one and the cobar complex is far smaller.

Rings of the cosimplicial cobar object are polynomial rings
C^s = A[slot_1, ..., slot_s]: the A-variables describe the source curve, the
slot-i variables the i-th coordinate change of a composable chain.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..exactalg.rings import GradedElement, GradedRing, RingMap


class AxiomError(AssertionError):
    pass


def _coefficient(el: GradedElement, var_positions: tuple, exps: tuple, target: GradedRing):
    """Coefficient of x^i y^j (variables at ``var_positions``) as an element of
    ``target`` (the ring without those variables)."""
    keep = [i for i in range(el.ring.ngens) if i not in var_positions]
    out: dict = {}
    for k, c in el.terms.items():
        if tuple(k[i] for i in var_positions) == exps:
            kk = tuple(k[i] for i in keep)
            out[kk] = out.get(kk, 0) + c
    return GradedElement(target, {k: v for k, v in out.items() if v})


@dataclass
class HopfAlgebroid:
    name: str
    base: GradedRing
    cover_names: tuple
    cover_degrees: tuple
    eta_right_polys: tuple          # images of base gens, in gamma_ring(1)
    composition_polys: tuple        # images of cover gens, in gamma_ring(2)
    discriminant: GradedElement     # invariant element of the base
    notes: dict = field(default_factory=dict)
    _maps: dict = field(default_factory=dict, repr=False, compare=False)

    # -- rings ---------------------------------------------------------------
    def gamma_ring(self, s: int) -> GradedRing:
        return _gamma_ring(self.base, self.cover_names, self.cover_degrees, s)

    @property
    def ncover(self):
        return len(self.cover_names)

    def _slot_index(self, slot: int, j: int) -> int:
        """Generator index of cover variable j in slot (1-based slot)."""
        return self.base.ngens + (slot - 1) * self.ncover + j

    def _slot_gen(self, ring: GradedRing, slot: int, j: int) -> GradedElement:
        return ring.gen(self._slot_index(slot, j))

    # -- structure maps --------------------------------------------------------
    @cached_property
    def eta_right(self) -> RingMap:
        return RingMap(self.base, self.gamma_ring(1), list(self.eta_right_polys))

    @cached_property
    def eta_left(self) -> RingMap:
        g = self.gamma_ring(1)
        return RingMap(self.base, g, g.gens()[: self.base.ngens])

    @cached_property
    def coproduct(self) -> RingMap:
        g1, g2 = self.gamma_ring(1), self.gamma_ring(2)
        return RingMap(g1, g2, g2.gens()[: self.base.ngens] + list(self.composition_polys))

    @cached_property
    def counit(self) -> RingMap:
        g1 = self.gamma_ring(1)
        imgs = self.base.gens() + [self.base.zero(d) for d in self.cover_degrees]
        return RingMap(g1, self.base, imgs)

    # -- cosimplicial structure -------------------------------------------------
    def coface(self, s: int, i: int) -> RingMap:
        """δ^i : C^s -> C^{s+1}, 0 <= i <= s+1."""
        return _coface(self, s, i)

    def codegeneracy(self, s: int, j: int) -> RingMap:
        """σ^j : C^s -> C^{s-1}, 0 <= j < s (insert an identity at slot j+1)."""
        if not 0 <= j < s:
            raise ValueError("bad codegeneracy index")
        src, dst = self.gamma_ring(s), self.gamma_ring(s - 1)
        imgs = dst.gens()[: self.base.ngens]
        for slot in range(1, s + 1):
            for k in range(self.ncover):
                if slot == j + 1:
                    imgs.append(dst.zero(self.cover_degrees[k]))
                else:
                    tgt = slot if slot <= j else slot - 1
                    imgs.append(self._slot_gen(dst, tgt, k))
        return RingMap(src, dst, imgs)

    def front(self, s: int, t: int) -> RingMap:
        """C^s -> C^{s+t}: a cochain on the first s arrows of a chain of s+t."""
        src, dst = self.gamma_ring(s), self.gamma_ring(s + t)
        return RingMap(src, dst, dst.gens()[: src.ngens])

    def back(self, s: int, t: int) -> RingMap:
        """C^t -> C^{s+t}: a cochain on the last t arrows (= (δ^0)^s)."""
        return _back(self, s, t)

    # -- axioms ------------------------------------------------------------------
    def check_axioms(self, s_max: int = 3) -> dict:
        """Verify the Hopf algebroid axioms and the cosimplicial identities up
        to C^{s_max} -> C^{s_max+2}.  Ring maps agree iff they agree on
        generators, so every check is exact and covers all bidegrees."""
        report = {}
        # counit
        g1, g2 = self.gamma_ring(1), self.gamma_ring(2)
        kill1 = RingMap(g2, g1, g1.gens()[: self.base.ngens]
                        + [g1.zero(d) for d in self.cover_degrees]
                        + g1.gens()[self.base.ngens:])
        kill2 = RingMap(g2, g1, g1.gens() + [g1.zero(d) for d in self.cover_degrees])
        ident = RingMap(g1, g1, g1.gens())
        report["counit_left"] = kill1.compose(self.coproduct).agrees_with(ident)
        report["counit_right"] = kill2.compose(self.coproduct).agrees_with(ident)
        # coassociativity (Ψ⊗id)Ψ = (id⊗Ψ)Ψ, i.e. δ^1δ^1 = δ^2δ^1 on C^1
        report["coassociative"] = self.coface(2, 1).compose(self.coface(1, 1)).agrees_with(
            self.coface(2, 2).compose(self.coface(1, 1)))
        # ε η_R = id, ε η_L = id
        idA = RingMap(self.base, self.base, self.base.gens())
        report["counit_eta_right"] = self.counit.compose(self.eta_right).agrees_with(idA)
        report["counit_eta_left"] = self.counit.compose(self.eta_left).agrees_with(idA)
        # Ψ η_R = 1 ⊗ η_R  (δ^1δ^0 = δ^0δ^0)
        report["coproduct_eta_right"] = self.coface(1, 1).compose(self.coface(0, 0)).agrees_with(
            self.coface(1, 0).compose(self.coface(0, 0)))
        report["discriminant_invariant"] = (
            self.eta_right(self.discriminant) == self.eta_left(self.discriminant))
        report["degrees_preserved"] = True  # RingMap construction enforces homogeneity
        ok = True
        for s in range(0, s_max + 1):
            for j in range(s + 2):
                for i in range(j):
                    lhs = self.coface(s + 1, j).compose(self.coface(s, i))
                    rhs = self.coface(s + 1, i).compose(self.coface(s, j - 1))
                    ok &= lhs.agrees_with(rhs)
        report["cosimplicial_identities"] = ok
        ok = True
        for s in range(1, s_max + 1):
            for j in range(s):
                for i in range(s + 1):
                    lhs = self.codegeneracy(s + 1, j).compose(self.coface(s, i))
                    if i < j:
                        rhs = self.coface(s - 1, i).compose(self.codegeneracy(s, j - 1))
                    elif i in (j, j + 1):
                        src = self.gamma_ring(s)
                        rhs = RingMap(src, src, src.gens())
                    else:
                        rhs = self.coface(s - 1, i - 1).compose(self.codegeneracy(s, j))
                    ok &= lhs.agrees_with(rhs)
        report["codegeneracy_identities"] = ok
        return report

    def assert_axioms(self, s_max: int = 3) -> None:
        bad = [k for k, v in self.check_axioms(s_max).items() if not v]
        if bad:
            raise AxiomError(f"{self.name}: failed {bad}")


_RING_CACHE: dict = {}


def _gamma_ring(base: GradedRing, names, degrees, s: int) -> GradedRing:
    key = (base.names, base.degrees, tuple(names), tuple(degrees), s)
    ring = _RING_CACHE.get(key)
    if ring is None:
        n = list(base.names)
        d = list(base.degrees)
        for slot in range(1, s + 1):
            n += [f"{c}{slot}" for c in names]
            d += list(degrees)
        ring = GradedRing(tuple(n), tuple(d), base.domain)
        _RING_CACHE[key] = ring
    return ring


def _coface(H: HopfAlgebroid, s: int, i: int) -> RingMap:
    key = ("coface", s, i)
    m = H._maps.get(key)
    if m is not None:
        return m
    if not 0 <= i <= s + 1:
        raise ValueError("bad coface index")
    src, dst = H.gamma_ring(s), H.gamma_ring(s + 1)
    nb = H.base.ngens
    if i == 0:
        g1 = H.gamma_ring(1)
        to_dst = RingMap(g1, dst, dst.gens()[: nb + H.ncover])
        imgs = [to_dst(p) for p in H.eta_right_polys]
        for slot in range(1, s + 1):
            imgs += [H._slot_gen(dst, slot + 1, k) for k in range(H.ncover)]
    else:
        imgs = dst.gens()[:nb]
        for slot in range(1, s + 1):
            if slot < i:
                imgs += [H._slot_gen(dst, slot, k) for k in range(H.ncover)]
            elif slot == i:
                g2 = H.gamma_ring(2)
                place = RingMap(g2, dst, dst.gens()[:nb]
                                + [H._slot_gen(dst, i, k) for k in range(H.ncover)]
                                + [H._slot_gen(dst, i + 1, k) for k in range(H.ncover)])
                imgs += [place(p) for p in H.composition_polys]
            else:
                imgs += [H._slot_gen(dst, slot + 1, k) for k in range(H.ncover)]
    m = RingMap(src, dst, imgs)
    H._maps[key] = m
    return m


def _back(H: HopfAlgebroid, s: int, t: int) -> RingMap:
    key = ("back", s, t)
    m = H._maps.get(key)
    if m is None:
        src = H.gamma_ring(t)
        m = RingMap(src, src, src.gens())
        for k in range(s):
            m = H.coface(t + k, 0).compose(m)
        H._maps[key] = m
    return m


# ---------------------------------------------------------------------------
# builders


def weierstrass() -> HopfAlgebroid:
    base = GradedRing(("a1", "a2", "a3", "a4", "a6"), (1, 2, 3, 4, 6))
    cover, cdeg = ("r", "s", "t"), (2, 1, 3)
    # ring A[r,s,t,x,y] for the substitution
    W = GradedRing(base.names + cover + ("x", "y"), base.degrees + cdeg + (2, 3))
    a1, a2, a3, a4, a6, r, s, t, x, y = W.gens()
    curve = y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6
    sub = RingMap(W, W, [a1, a2, a3, a4, a6, r, s, t, x + r, y + s * x + t])
    moved = sub(curve)
    gamma1 = _gamma_ring(base, cover, cdeg, 1)
    xy = (8, 9)
    lead = (_coefficient(moved, xy, (0, 2), gamma1), _coefficient(moved, xy, (3, 0), gamma1))
    if lead != (gamma1.one(), -gamma1.one()):
        raise AxiomError("substitution changed the leading coefficients")
    eta = (
        _coefficient(moved, xy, (1, 1), gamma1),        # a1'
        -_coefficient(moved, xy, (2, 0), gamma1),       # a2'
        _coefficient(moved, xy, (0, 1), gamma1),        # a3'
        -_coefficient(moved, xy, (1, 0), gamma1),       # a4'
        -_coefficient(moved, xy, (0, 0), gamma1),       # a6'
    )
    comp = _compose_substitutions_rst()
    e1, e2, e3, e4, e6 = base.gens()
    b2 = e1 * e1 + 4 * e2
    b4 = 2 * e4 + e1 * e3
    b6 = e3 * e3 + 4 * e6
    b8 = e1 * e1 * e6 + 4 * e2 * e6 - e1 * e3 * e4 + e2 * e3 * e3 - e4 * e4
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    H = HopfAlgebroid("weierstrass", base, cover, cdeg, eta, comp, disc,
                      notes={"discriminant": "Δ", "valid_for": "all primes"})
    H.assert_axioms(s_max=1)
    return H


def _compose_substitutions_rst() -> tuple:
    """Composite of (r1,s1,t1) followed by (r2,s2,t2), read off by substituting
    twice into the coordinates."""
    base = GradedRing(("a1", "a2", "a3", "a4", "a6"), (1, 2, 3, 4, 6))
    g2 = _gamma_ring(base, ("r", "s", "t"), (2, 1, 3), 2)
    V = GradedRing(g2.names + ("X", "Y"), g2.degrees + (2, 3))
    gens = V.gens()
    r1, s1, t1, r2, s2, t2, X, Y = gens[5:]
    # x = X + r1, y = Y + s1 X + t1 with X = X' + r2, Y = Y' + s2 X' + t2
    inner = RingMap(V, V, gens[:11] + [X + r2, Y + s2 * X + t2])
    x_total = inner(X + r1)
    y_total = inner(Y + s1 * X + t1)
    xy = (11, 12)
    r = _coefficient(x_total, xy, (0, 0), g2)
    s = _coefficient(y_total, xy, (1, 0), g2)
    t = _coefficient(y_total, xy, (0, 0), g2)
    if _coefficient(x_total, xy, (1, 0), g2) != g2.one() or \
            _coefficient(y_total, xy, (0, 1), g2) != g2.one():
        raise AxiomError("composite is not unipotent")
    return (r, s, t)


def weierstrass_short() -> HopfAlgebroid:
    base = GradedRing(("b2", "b4", "b6"), (2, 4, 6))
    cover, cdeg = ("r",), (2,)
    W = GradedRing(base.names + cover + ("x", "y"), base.degrees + cdeg + (2, 3))
    b2, b4, b6, r, x, y = W.gens()
    curve = 4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6 - 4 * y * y
    moved = RingMap(W, W, [b2, b4, b6, r, x + r, y])(curve)
    gamma1 = _gamma_ring(base, cover, cdeg, 1)
    xy = (4, 5)
    c1 = _coefficient(moved, xy, (1, 0), gamma1)
    if any(v % 2 for v in c1.terms.values()):
        raise AxiomError("x-coefficient not divisible by 2")
    eta = (
        _coefficient(moved, xy, (2, 0), gamma1),
        GradedElement(gamma1, {k: v // 2 for k, v in c1.terms.items()}),
        _coefficient(moved, xy, (0, 0), gamma1),
    )
    g2 = _gamma_ring(base, cover, cdeg, 2)
    V = GradedRing(g2.names + ("X",), g2.degrees + (2,))
    gens = V.gens()
    r1, r2, X = gens[3:]
    x_total = RingMap(V, V, gens[:5] + [X + r2])(X + r1)
    comp = (_coefficient(x_total, (5,), (0,), g2),)
    B2, B4, B6 = base.gens()
    # 4Δ; the factor 4 is a unit wherever this model is used
    disc = (-(B2 ** 3) * B6 + B2 * B2 * B4 * B4 - 32 * B4 ** 3 - 108 * B6 * B6
            + 36 * B2 * B4 * B6)
    H = HopfAlgebroid("weierstrass-short", base, cover, cdeg, eta, comp, disc,
                      notes={"discriminant": "4Δ", "valid_for": "odd primes"})
    H.assert_axioms(s_max=1)
    return H
