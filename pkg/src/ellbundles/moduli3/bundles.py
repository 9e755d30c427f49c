"""Standard vector bundles on the moduli stack of elliptic curves at 3.

Summands are ω^k (Line), E_α ⊗ ω^k (Ealpha) and f_*f^*O ⊗ ω^k (FPush).
Twists are kept as integers and compared modulo 12.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

KINDS = ("Line", "Ealpha", "FPush")
RANK = {"Line": 1, "Ealpha": 2, "FPush": 3}
PERIOD = 12


class Unsupported(ValueError):
    pass


@dataclass(frozen=True)
class StandardSummand:
    kind: str
    twist: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown summand kind {self.kind!r}")
        object.__setattr__(self, "twist", int(self.twist))

    @property
    def rank(self) -> int:
        return RANK[self.kind]

    @property
    def key(self) -> tuple:
        return (KINDS.index(self.kind), self.twist % PERIOD)

    def iso(self, other: "StandardSummand") -> bool:
        return self.key == other.key

    def shifted(self, k: int) -> "StandardSummand":
        return StandardSummand(self.kind, self.twist + k)

    def label(self) -> str:
        w = f"ω^{self.twist}"
        return {"Line": w if self.twist else "O",
                "Ealpha": "E_α" + (f"⊗{w}" if self.twist else ""),
                "FPush": "f_*f^*O" + (f"⊗{w}" if self.twist else "")}[self.kind]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "twist": self.twist}


def Line(k: int) -> StandardSummand:         # noqa: N802
    return StandardSummand("Line", k)


def Ealpha(k: int) -> StandardSummand:       # noqa: N802
    return StandardSummand("Ealpha", k)


def FPush(k: int) -> StandardSummand:        # noqa: N802
    return StandardSummand("FPush", k)


class StandardBundle:
    """A finite direct sum of standard summands, stored in canonical order."""

    __slots__ = ("summands",)

    def __init__(self, summands=()):
        items = [s if isinstance(s, StandardSummand) else StandardSummand(*s) for s in summands]
        self.summands = tuple(sorted(items, key=lambda s: (s.key, s.twist)))

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)

    def canonical(self) -> tuple:
        return tuple(sorted(Counter(s.key for s in self.summands).items()))

    def __eq__(self, other):
        return isinstance(other, StandardBundle) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __add__(self, other) -> "StandardBundle":
        if isinstance(other, StandardSummand):
            other = StandardBundle([other])
        return StandardBundle(self.summands + other.summands)

    def without(self, s: StandardSummand) -> "StandardBundle":
        """Remove one summand isomorphic to s."""
        items = list(self.summands)
        for k, t in enumerate(items):
            if t.iso(s):
                del items[k]
                return StandardBundle(items)
        raise KeyError(f"{s.label()} is not a summand")

    def twisted(self, k: int) -> "StandardBundle":
        return StandardBundle(s.shifted(k) for s in self.summands)

    def label(self) -> str:
        return " ⊕ ".join(s.label() for s in self.summands) if self.summands else "0"

    def __repr__(self):
        return f"StandardBundle({self.label()})"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "summands": [s.to_dict() for s in self.summands],
                "label": self.label()}


def bundle(*summands) -> StandardBundle:
    return StandardBundle(summands)


O = bundle(Line(0))


def _mod(k: int) -> int:
    return k % PERIOD


# -- cohomology ------------------------------------------------------------------


def summand_cohomology(s: StandardSummand, i: int, j: int) -> int:
    """F_3-dimension of H^i(s ⊗ ω^j), i in {1, 2}."""
    if i not in (1, 2):
        raise ValueError("only H^1 and H^2 are tabulated")
    t = _mod(s.twist + j)
    if s.kind == "Line":
        return int(t == (2 if i == 1 else 6))
    if s.kind == "Ealpha":
        return int(t == (4 if i == 1 else 6))
    return 0


def cohomology_dim(b: StandardBundle, i: int, j: int) -> int:
    if isinstance(b, StandardSummand):
        b = StandardBundle([b])
    return sum(summand_cohomology(s, i, j) for s in b)


def cohomology_table(b: StandardBundle) -> dict:
    return {f"H{i}": [cohomology_dim(b, i, j) for j in range(PERIOD)] for i in (1, 2)}


# -- duality and tensor products ---------------------------------------------------


def dual_summand(s: StandardSummand) -> StandardSummand:
    if s.kind == "Ealpha":
        return Ealpha(2 - s.twist)
    return StandardSummand(s.kind, -s.twist)


def dual(b: StandardBundle) -> StandardBundle:
    if isinstance(b, StandardSummand):
        return StandardBundle([dual_summand(b)])
    return StandardBundle(dual_summand(s) for s in b)


def tensor_summands(a: StandardSummand, b: StandardSummand) -> list:
    if a.kind == "Line":
        return [b.shifted(a.twist)]
    if b.kind == "Line":
        return [a.shifted(b.twist)]
    t = a.twist + b.twist
    kinds = {a.kind, b.kind}
    if kinds == {"Ealpha"}:
        return [FPush(t), Line(t - 2)]
    if kinds == {"Ealpha", "FPush"}:
        return [FPush(t), FPush(t - 2)]
    raise Unsupported("f_*f^*O ⊗ f_*f^*O is not determined")


def tensor(x: StandardBundle, y: StandardBundle) -> StandardBundle:
    if isinstance(x, StandardSummand):
        x = StandardBundle([x])
    if isinstance(y, StandardSummand):
        y = StandardBundle([y])
    out = []
    for a in x:
        for b in y:
            out.extend(tensor_summands(a, b))
    return StandardBundle(out)


# -- Ext groups ---------------------------------------------------------------------

# (source kind, target kind, i) -> residue of (a - b) mod 12 where Ext^i is F_3
_EXT_TABLE = {
    ("Line", "Line", 1): -2, ("Line", "Line", 2): -6,
    ("Line", "Ealpha", 1): -4, ("Line", "Ealpha", 2): -6,
    ("Ealpha", "Line", 1): -2, ("Ealpha", "Line", 2): -4,
    ("Ealpha", "Ealpha", 1): -2, ("Ealpha", "Ealpha", 2): 6,
}
DERIVED_ENTRIES = {("Ealpha", "Ealpha", 2)}


def ext_summands(a: StandardSummand, b: StandardSummand, i: int) -> int:
    """F_3-dimension of Ext^i(a, b) for summands, i in {1, 2}."""
    if i not in (1, 2):
        raise ValueError("only Ext^1 and Ext^2 are tabulated")
    if "FPush" in (a.kind, b.kind):
        return 0
    return int(_mod(a.twist - b.twist) == _mod(_EXT_TABLE[(a.kind, b.kind, i)]))


def ext_dim(x: StandardBundle, y: StandardBundle, i: int) -> int:
    if isinstance(x, StandardSummand):
        x = StandardBundle([x])
    if isinstance(y, StandardSummand):
        y = StandardBundle([y])
    return sum(ext_summands(a, b, i) for a in x for b in y)


def ext_via_adjunction(a: StandardSummand, b: StandardSummand, i: int) -> int:
    """Ext^i(a, b) = H^i(ǎ ⊗ b); an independent route through dual and tensor."""
    if "FPush" in (a.kind, b.kind):
        return 0
    return cohomology_dim(tensor(dual(a), StandardBundle([b])), i, 0)


def rank_h1_corollary_check(b: StandardBundle) -> bool:
    """H^1(b ⊗ ω^j) = 0 for every j implies 3 | rank(b)."""
    if all(cohomology_dim(b, 1, j) == 0 for j in range(PERIOD)):
        return b.rank % 3 == 0
    return True
