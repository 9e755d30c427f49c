"""Ext charts, named classes, Yoneda products and Δ-stabilization."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from ..exactalg.homology import FGAbGroup, HomologyData, homology_with_generators, p_part
from .algebroid import HopfAlgebroid, weierstrass, weierstrass_short
from .cobar import CobarComplex, default_cap


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class ExtClass:
    s: int
    n: int
    cocycle: tuple          # sorted ((exponents, coefficient), ...)
    name: str = ""

    @classmethod
    def from_terms(cls, s, n, terms: dict, name: str = "") -> "ExtClass":
        return cls(s, n, tuple(sorted((k, v) for k, v in terms.items() if v)), name)

    @property
    def terms(self) -> dict:
        return dict(self.cocycle)

    def scaled(self, c: int, name: str = "") -> "ExtClass":
        return ExtClass.from_terms(self.s, self.n, {k: c * v for k, v in self.cocycle}, name)


def model_for_prime(p: int) -> HopfAlgebroid:
    """The full algebroid at 2, the 2-inverted short model at odd primes."""
    return weierstrass() if p == 2 else weierstrass_short()


@dataclass
class ExtChart:
    complex: CobarComplex
    p: int
    classes: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    _data: dict = field(default_factory=dict, repr=False)

    @property
    def s_max(self):
        return self.complex.s_max

    @property
    def n_max(self):
        return self.complex.n_max

    @property
    def algebroid(self):
        return self.complex.algebroid

    def in_range(self, s: int, n: int) -> bool:
        return 0 <= s <= self.s_max and 0 <= n <= self.n_max

    def _require(self, s, n):
        if not self.in_range(s, n):
            raise OutOfRange(f"bidegree ({s},{n}) outside chart range "
                             f"s<={self.s_max}, n<={self.n_max}")

    def data(self, s: int, n: int) -> HomologyData:
        self._require(s, n)
        key = (s, n)
        if key not in self._data:
            C = self.complex
            self._data[key] = homology_with_generators(C.differential(s, n), C.incoming(s, n))
        return self._data[key]

    def integral_group(self, s: int, n: int) -> FGAbGroup:
        return self.data(s, n).group

    def group(self, s: int, n: int) -> FGAbGroup:
        """The group localized at p."""
        g = self.integral_group(s, n)
        return FGAbGroup(g.free, tuple(q for q in (p_part(t, self.p) for t in g.torsion) if q > 1))

    def compute_all(self) -> None:
        for s in range(self.s_max + 1):
            for n in range(self.n_max + 1):
                self.data(s, n)

    # -- p-local coordinates --------------------------------------------------------
    def local_generators(self, s: int, n: int) -> list:
        """Cocycles generating the p-localized group, in the order of group()."""
        d = self.data(s, n)
        g = d.group
        out = [ExtClass.from_terms(s, n, self.complex.to_terms(s, n, v))
               for v in d.generators[: g.free]]
        for v, t in zip(d.generators[g.free:], g.torsion):
            q = p_part(t, self.p)
            if q > 1:
                out.append(ExtClass.from_terms(s, n, self.complex.to_terms(s, n, v)).scaled(t // q))
        return out

    def coordinates(self, cls: ExtClass) -> tuple:
        """Coordinates in group(): exact free part, torsion mod its p-power."""
        d = self.data(cls.s, cls.n)
        vec = self.complex.to_vector(cls.s, cls.n, cls.terms)
        raw = d.coordinates(vec)
        g = d.group
        out = list(raw[: g.free])
        for x, t in zip(raw[g.free:], g.torsion):
            q = p_part(t, self.p)
            if q > 1:
                out.append(x % q)
        return tuple(out)

    def is_zero(self, cls: ExtClass) -> bool:
        return not any(self.coordinates(cls))

    def is_cycle(self, cls: ExtClass) -> bool:
        return not self.complex.apply_d(cls.s, cls.terms)

    def names_at(self, s: int, n: int) -> list:
        return sorted(name for name, c in self.classes.items() if (c.s, c.n) == (s, n))

    # -- output ------------------------------------------------------------------------
    def to_dict(self) -> dict:
        rows = []
        for (s, n) in sorted(self._data):
            g = self.group(s, n)
            rows.append({"s": s, "n": n, "free": g.free, "torsion": list(g.torsion),
                         "classes": self.names_at(s, n)})
        return {
            "prime": self.p,
            "model": self.algebroid.name,
            "smax": self.s_max,
            "nmax": self.n_max,
            "bidegrees": rows,
            "generators": {name: {"s": c.s, "n": c.n,
                                  "cocycle": self.complex.render(c.s, c.terms)}
                           for name, c in sorted(self.classes.items())},
            "flags": list(self.flags),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"

    def to_ascii(self) -> str:
        """One column per internal degree n, one row per s (highest on top)."""
        def cell(g: FGAbGroup) -> str:
            if g.is_trivial():
                return "."
            parts = []
            if g.free:
                parts.append("Z" if g.free == 1 else f"Z{g.free}")
            parts += [str(t) for t in g.torsion]
            return ",".join(parts)

        cells = {(s, n): cell(self.group(s, n)) for (s, n) in self._data}
        width = max([len(c) for c in cells.values()] + [len(str(self.n_max))]) + 1
        lines = []
        for s in range(self.s_max, -1, -1):
            row = "".join(cells.get((s, n), " ").rjust(width) for n in range(self.n_max + 1))
            lines.append(f"s={s} |{row}")
        lines.append("     +" + "-" * (width * (self.n_max + 1)))
        lines.append("   n  " + "".join(str(n).rjust(width) for n in range(self.n_max + 1)))
        if self.classes:
            lines.append("")
            for name, c in sorted(self.classes.items(), key=lambda kv: (kv[1].s, kv[1].n, kv[0])):
                lines.append(f"{name} at ({c.s},{c.n}): {self.complex.render(c.s, c.terms)}")
        for f in self.flags:
            lines.append(f"flag: {f}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def yoneda_product(chart: ExtChart, x: ExtClass, y: ExtClass, name: str = "") -> ExtClass:
    """Cup product of cocycles; the result is a cocycle of bidegree
    (x.s + y.s, x.n + y.n)."""
    s, n = x.s + y.s, x.n + y.n
    if not (chart.in_range(x.s, x.n) and chart.in_range(y.s, y.n)):
        raise OutOfRange("factor outside chart range")
    if not chart.in_range(s, n):
        raise OutOfRange(f"product bidegree ({s},{n}) outside chart range")
    terms = chart.complex.cup(x.s, x.terms, y.s, y.terms)
    out = ExtClass.from_terms(s, n, terms, name)
    if not chart.is_cycle(out):
        raise AssertionError("product of cocycles is not a cocycle")
    return out


def unit_class(chart: ExtChart) -> ExtClass:
    nb = chart.algebroid.base.ngens
    return ExtClass.from_terms(0, 0, {(0,) * nb: 1}, "1")


def _single_generator(chart: ExtChart, s: int, n: int, name: str):
    g = chart.group(s, n)
    if g.free == 0 and g.torsion == (chart.p,):
        (cls,) = chart.local_generators(s, n)
        return ExtClass(cls.s, cls.n, cls.cocycle, name)
    chart.flags.append(f"cannot name {name}: group at ({s},{n}) is {g}")
    return None


def name_classes(chart: ExtChart) -> None:
    """Locate α, β and Δ (p = 3 only) and record the chosen cocycles."""
    if chart.p != 3:
        chart.flags.append("named classes are only assigned at p=3")
        return
    if chart.in_range(0, 12):
        disc = chart.algebroid.discriminant
        D = ExtClass.from_terms(0, 12, disc.terms, "Δ")
        if not chart.is_cycle(D) or chart.is_zero(D):
            raise AssertionError("discriminant is not a nonzero invariant")
        chart.classes["Δ"] = D
    for name, (s, n) in (("α", (1, 2)), ("β", (2, 6))):
        if chart.in_range(s, n):
            c = _single_generator(chart, s, n, name)
            if c is not None:
                chart.classes[name] = c


def ext_chart(s_max: int, n_max: int, p: int, algebroid: HopfAlgebroid | None = None,
              cap: int | None = None, eager: bool = True) -> ExtChart:
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    H = algebroid if algebroid is not None else model_for_prime(p)
    if p == 2 and H.notes.get("valid_for") == "odd primes":
        raise ValueError(f"{H.name} only computes odd-primary information")
    C = CobarComplex(H, s_max, n_max, cap if cap is not None else default_cap())
    chart = ExtChart(C, p)
    if eager:
        chart.compute_all()
    name_classes(chart)
    return chart


# -- Δ-multiplication ------------------------------------------------------------


def _delta_matrix(chart: ExtChart, s: int, n: int) -> list:
    """Columns: p-local coordinates of Δ·g for each p-local generator g of (s, n)."""
    D = chart.classes.get("Δ")
    if D is None:
        D = ExtClass.from_terms(0, 12, chart.algebroid.discriminant.terms, "Δ")
    return [chart.coordinates(yoneda_product(chart, D, g)) for g in chart.local_generators(s, n)]


def _torsion_map_images(src: FGAbGroup, tgt: FGAbGroup, cols: list):
    """Images of all elements of the torsion subgroup of src."""
    ranges = [range(t) for t in src.torsion]
    tcols = cols[src.free:]
    for xs in itertools.product(*ranges):
        img = [0] * (tgt.free + len(tgt.torsion))
        for x, col in zip(xs, tcols):
            for k, v in enumerate(col):
                img[k] += x * v
        for k, t in enumerate(tgt.torsion):
            img[tgt.free + k] %= t
        yield xs, tuple(img)


def _free_block_rank(src: FGAbGroup, tgt: FGAbGroup, cols: list):
    import sympy
    if src.free == 0:
        return 0, 1
    M = sympy.Matrix([[cols[j][i] for j in range(src.free)] for i in range(tgt.free)]) \
        if tgt.free else sympy.zeros(0, src.free)
    det = M.det() if M.shape[0] == M.shape[1] else 0
    return M.rank(), det


def map_is_injective(src: FGAbGroup, tgt: FGAbGroup, cols: list) -> bool:
    rank, _ = _free_block_rank(src, tgt, cols)
    if rank < src.free:
        return False
    seen = set()
    for _, img in _torsion_map_images(src, tgt, cols):
        if img in seen:
            return False
        seen.add(img)
    return True


def map_is_isomorphism(src: FGAbGroup, tgt: FGAbGroup, cols: list, p: int) -> bool:
    """Homomorphism of p-local groups (torsion maps into torsion); an
    isomorphism iff it is bijective on torsion and the free block is
    invertible over Z_(p)."""
    if src != tgt:
        return False
    _, det = _free_block_rank(src, tgt, cols)
    if src.free and (det == 0 or det % p == 0):
        return False
    return map_is_injective(src, tgt, cols)


@dataclass
class DeltaStabilization:
    s: int
    n: int
    group: FGAbGroup
    stabilized: bool
    steps: list          # (n_from, n_to, group_from, group_to, iso)
    reason: str = ""

    def require(self) -> FGAbGroup:
        if not self.stabilized:
            raise AssertionError(f"not stabilized in range at ({self.s},{self.n}): {self.reason}")
        return self.group


def delta_stabilize(chart: ExtChart, s: int, n: int) -> DeltaStabilization:
    """Check that Δ: Ext^{s,n} -> Ext^{s,n+12} -> Ext^{s,n+24} are isomorphisms
    (p-locally) and return the stable group."""
    steps = []
    for k in range(2):
        a, b = n + 12 * k, n + 12 * (k + 1)
        if not chart.in_range(s, b):
            return DeltaStabilization(s, n, chart.group(s, n), False, steps,
                                      f"({s},{b}) outside chart range")
        ga, gb = chart.group(s, a), chart.group(s, b)
        iso = map_is_isomorphism(ga, gb, _delta_matrix(chart, s, a), chart.p)
        steps.append((a, b, str(ga), str(gb), iso))
        if not iso:
            return DeltaStabilization(s, n, gb, False, steps,
                                      f"Δ: ({s},{a}) -> ({s},{b}) is not an isomorphism")
    return DeltaStabilization(s, n, chart.group(s, n), True, steps)


def delta_torsion_flags(chart: ExtChart, s_min: int = 1) -> list:
    """Bidegrees with s >= s_min where Δ-multiplication has a kernel (p-locally)."""
    found = []
    for (s, n) in sorted(chart._data):
        if s < s_min or not chart.in_range(s, n + 12) or (s, n + 12) not in chart._data:
            continue
        src, tgt = chart.group(s, n), chart.group(s, n + 12)
        if src.is_trivial():
            continue
        if not map_is_injective(src, tgt, _delta_matrix(chart, s, n)):
            found.append((s, n))
    for s, n in found:
        msg = f"Δ-torsion before localization at ({s},{n})"
        if msg not in chart.flags:
            chart.flags.append(msg)
    return found


def compare_models(s_max: int, n_max: int, p: int = 3) -> list:
    """Bidegrees where the full and short models disagree after localization."""
    if p == 2:
        raise ValueError("the short model does not see 2-primary information")
    full = ext_chart(s_max, n_max, p, algebroid=weierstrass())
    short = ext_chart(s_max, n_max, p, algebroid=weierstrass_short())
    return [(s, n, str(full.group(s, n)), str(short.group(s, n)))
            for s in range(s_max + 1) for n in range(n_max + 1)
            if full.group(s, n) != short.group(s, n)]
