"""Graded polynomial rings with integer coefficients.

Elements are stored as ``{exponent_tuple: coefficient}`` dictionaries.  All
arithmetic is exact (Python ints).  Homogeneity is checked when an element is
built, so every :class:`GradedElement` carries a single well-defined degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class Integers:
    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class LocalizedAt:
    p: int

    def __str__(self):
        return f"Z_({self.p})"

    def is_unit(self, n: int) -> bool:
        return n % self.p != 0


@dataclass(frozen=True)
class FiniteField:
    q: int

    def __post_init__(self):
        if self.q < 2 or any(self.q % d == 0 for d in range(2, int(self.q ** 0.5) + 1)):
            raise ValueError(f"only prime fields are supported, got q={self.q}")

    def __str__(self):
        return f"F_{self.q}"


ZZ = Integers()


class HomogeneityError(ValueError):
    pass


@lru_cache(maxsize=None)
def _monomials(degrees: tuple, n: int) -> tuple:
    if n < 0:
        return ()
    if not degrees:
        return ((),) if n == 0 else ()
    d0, rest = degrees[0], degrees[1:]
    out = []
    # descending in the first exponent gives lexicographically decreasing order
    for e in range(n // d0, -1, -1):
        for tail in _monomials(rest, n - e * d0):
            out.append((e,) + tail)
    return tuple(out)


@dataclass(frozen=True)
class GradedRing:
    names: tuple
    degrees: tuple
    domain: object = ZZ
    inverted: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree per generator")
        if any(d < 1 for d in self.degrees):
            raise ValueError("generator degrees must be >= 1")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def degree_of(self, exps: Sequence[int]) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def gen(self, name_or_index) -> "GradedElement":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        exps = [0] * self.ngens
        exps[i] = 1
        return GradedElement(self, {tuple(exps): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.ngens)]

    def one(self) -> "GradedElement":
        return GradedElement(self, {(0,) * self.ngens: 1})

    def zero(self, degree: int = 0) -> "GradedElement":
        return GradedElement(self, {}, degree=degree)

    def const(self, c: int) -> "GradedElement":
        return GradedElement(self, {(0,) * self.ngens: c} if c else {}, degree=0)

    def invert(self, *elements: "GradedElement") -> "GradedRing":
        """Record localization data (e.g. the discriminant)."""
        for el in elements:
            if el.ring.names != self.names:
                raise ValueError("inverted element from a different ring")
        return GradedRing(self.names, self.degrees, self.domain, self.inverted + tuple(elements))

    def monomial(self, exps) -> "GradedElement":
        return GradedElement(self, {tuple(exps): 1})

    def __repr__(self):
        gens = ",".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"GradedRing({self.domain}[{gens}])"


def monomials_of_degree(ring: GradedRing, n: int) -> list:
    """Exponent vectors of weighted degree ``n``, lexicographically decreasing."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return list(_monomials(ring.degrees, n))


class GradedElement:
    """A homogeneous polynomial."""

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: GradedRing, terms: Mapping, degree: int | None = None):
        clean = {tuple(k): int(v) for k, v in terms.items() if v}
        degs = {ring.degree_of(k) for k in clean}
        if len(degs) > 1:
            raise HomogeneityError(f"inhomogeneous element with degrees {sorted(degs)}")
        if degs:
            (d,) = degs
            if degree is not None and degree != d:
                raise HomogeneityError(f"declared degree {degree}, actual {d}")
            degree = d
        self.ring = ring
        self.terms = clean
        self.degree = 0 if degree is None else degree

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if not isinstance(other, GradedElement) or other.ring.names != self.ring.names:
            raise TypeError("elements of different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        if self.terms and other.terms and self.degree != other.degree:
            raise HomogeneityError(f"adding degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        poly_add_into(out, other.terms)
        deg = self.degree if self.terms else other.degree
        return GradedElement(self.ring, out, None if out else deg)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, {k: -v for k, v in self.terms.items()}, self.degree)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedElement(self.ring, {k: v * other for k, v in self.terms.items()}, self.degree)
        self._check(other)
        return GradedElement(self.ring, poly_mul(self.terms, other.terms),
                             self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.ring.names == other.ring.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def coefficient(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(n if e == 1 else f"{n}^{e}"
                            for n, e in zip(self.ring.names, exps) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def poly_add_into(acc: dict, b: Mapping, scale: int = 1) -> None:
    for k, v in b.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class RingMap:
    """Ring homomorphism ``source -> target`` given by images of generators.

    Powers of generator images are cached, which matters when the same map is
    applied to thousands of monomials (cobar differentials).
    """

    def __init__(self, source: GradedRing, target: GradedRing, images: Sequence,
                 check_degrees: bool = True):
        if len(images) != source.ngens:
            raise ValueError("one image per generator")
        self.source = source
        self.target = target
        self.images = []
        for deg, im in zip(source.degrees, images):
            if not isinstance(im, GradedElement):
                raise TypeError("images must be GradedElements")
            if im.ring.names != target.names:
                raise ValueError("image in wrong ring")
            if check_degrees and not im.is_zero() and im.degree != deg:
                raise HomogeneityError(f"image of degree {im.degree} for generator of degree {deg}")
            self.images.append(im.terms)
        self._powers = [[{(0,) * target.ngens: 1}] for _ in images]
        self._mono_cache: dict = {}

    def _power(self, i: int, e: int) -> dict:
        pw = self._powers[i]
        while len(pw) <= e:
            pw.append(poly_mul(pw[-1], self.images[i]))
        return pw[e]

    def apply_monomial(self, exps) -> dict:
        hit = self._mono_cache.get(exps)
        if hit is not None:
            return hit
        acc = {(0,) * self.target.ngens: 1}
        for i, e in enumerate(exps):
            if e:
                acc = poly_mul(acc, self._power(i, e))
                if not acc:
                    break
        self._mono_cache[exps] = acc
        return acc

    def apply_terms(self, terms: Mapping) -> dict:
        out: dict = {}
        for k, c in terms.items():
            poly_add_into(out, self.apply_monomial(k), c)
        return out

    def __call__(self, el: GradedElement) -> GradedElement:
        if el.ring.names != self.source.names:
            raise TypeError("element not in the source ring")
        return GradedElement(self.target, self.apply_terms(el.terms))

    def compose(self, inner: "RingMap") -> "RingMap":
        """``self ∘ inner``."""
        if inner.target.names != self.source.names:
            raise ValueError("maps not composable")
        imgs = [GradedElement(self.target, self.apply_terms(t)) for t in inner.images]
        return RingMap(inner.source, self.target, imgs, check_degrees=False)

    def agrees_with(self, other: "RingMap") -> bool:
        return self.images == other.images


def elements_from_terms(ring: GradedRing, polys: Iterable[Mapping]) -> list:
    return [GradedElement(ring, t) for t in polys]
