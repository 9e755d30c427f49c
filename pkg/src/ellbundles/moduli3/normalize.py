"""Rewriting iterated extensions of line bundles into standard form.

A stage is an extension 0 -> ω^q -> X -> Y -> 0 with Y standard, described by
the components of its class in Ext^1(Y, ω^q) = ⊕ Ext^1(S, ω^q).  Rules:

R0  class zero                          X = ω^q ⊕ Y
R1  nonzero on some E_α ⊗ ω^(q-2)       X = f_*f^*O ⊗ ω^q ⊕ (Y - S)
R2  nonzero only on lines ω^(q-2)       merge one line into E_α ⊗ ω^q, then
                                        the residual class y decides (resolver)

The residual class is not determined by the input chain, so it is supplied by
a resolver; EnumerateAll returns every possible outcome.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from .bundles import (Ealpha, FPush, KINDS, Line, StandardBundle, StandardSummand,
                      ext_summands)


class MalformedExtension(ValueError):
    pass


class ResolverExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class ExtClassVector:
    """Class in Ext^1(top, ω^q): one F_3 value per summand of ``top``."""
    q: int
    top: StandardBundle
    components: tuple

    def __post_init__(self):
        comps = tuple(int(c) % 3 for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != len(self.top.summands):
            raise MalformedExtension("one component per summand of the top bundle")
        for s, c in zip(self.top.summands, comps):
            if c and not ext_summands(s, Line(self.q), 1):
                raise MalformedExtension(
                    f"Ext^1({s.label()}, ω^{self.q}) = 0 but the component is {c}")

    @classmethod
    def from_pairs(cls, q: int, pairs) -> "ExtClassVector":
        """Build from (summand, value) pairs in any order."""
        pairs = list(pairs)
        top = StandardBundle(s for s, _ in pairs)
        pending = {}
        for s, v in pairs:
            pending.setdefault((s.kind, s.twist), []).append(v)
        return cls(q, top, tuple(pending[(s.kind, s.twist)].pop(0) for s in top.summands))

    @classmethod
    def zero(cls, q: int, top: StandardBundle) -> "ExtClassVector":
        return cls(q, top, (0,) * len(top.summands))

    def support(self) -> list:
        return [s for s, c in zip(self.top.summands, self.components) if c]

    def is_zero(self) -> bool:
        return not any(self.components)

    def to_dict(self) -> dict:
        return {"twist": self.q,
                "components": [{"kind": s.kind, "twist": s.twist, "value": c}
                               for s, c in zip(self.top.summands, self.components)]}


def eligible(top: StandardBundle, target: StandardSummand) -> list:
    """Indices of summands S of ``top`` with Ext^1(S, target) != 0."""
    return [k for k, s in enumerate(top.summands) if ext_summands(s, target, 1)]


# -- resolvers ------------------------------------------------------------------------


class Resolver:
    """Supplies class vectors that the input chain leaves undetermined."""

    def choices(self, top: StandardBundle, target: StandardSummand) -> list:
        raise NotImplementedError


class EnumerateAll(Resolver):
    """Every support pattern on the eligible summands (values 0/1 suffice
    since the rules only see zero versus nonzero)."""

    def choices(self, top, target):
        idx = eligible(top, target)
        out = []
        for bits in itertools.product((0, 1), repeat=len(idx)):
            comp = [0] * len(top.summands)
            for k, b in zip(idx, bits):
                comp[k] = b
            out.append(tuple(comp))
        return out


class Zero(Resolver):
    def choices(self, top, target):
        return [(0,) * len(top.summands)]


class Fixed(Resolver):
    """Consumes the given component tuples in query order."""

    def __init__(self, answers):
        self.answers = [tuple(a) for a in answers]
        self.used = 0

    def choices(self, top, target):
        if self.used >= len(self.answers):
            raise ResolverExhausted("no residual class left for this query")
        a = self.answers[self.used]
        self.used += 1
        if len(a) != len(top.summands):
            raise MalformedExtension("fixed residual class has the wrong length")
        for k, c in enumerate(a):
            if c % 3 and not ext_summands(top.summands[k], target, 1):
                raise MalformedExtension("fixed residual class has an invalid component")
        return [a]


# -- one stage ---------------------------------------------------------------------


def _normalize_stage(x: ExtClassVector, resolver: Resolver, trace: list) -> set:
    q, Y = x.q, x.top
    if x.is_zero():
        trace.append("R0")
        return {Y + Line(q)}
    supp = x.support()
    ea = [s for s in supp if s.kind == "Ealpha"]
    if ea:
        trace.append("R1")
        return {Y.without(ea[0]) + FPush(q)}
    lines = sorted((s for s in supp if s.kind == "Line"), key=lambda s: s.twist)
    if not lines:
        raise MalformedExtension("class supported on summands without Ext^1")
    L = lines[0]
    rest = Y.without(L)
    E = Ealpha(q)
    trace.append("R2")
    results = set()
    for y in resolver.choices(rest, E):
        ysupp = [s for s, c in zip(rest.summands, y) if c % 3]
        lq4 = [s for s in ysupp if s.kind == "Line"]
        eq2 = [s for s in ysupp if s.kind == "Ealpha"]
        if not ysupp:
            trace.append("R2:split")
            results.add(rest + E)
        elif lq4:
            trace.append("R2:line")
            results.add(rest.without(lq4[0]) + FPush(q))
        elif eq2:
            trace.append("R2:ealpha")
            Z = rest.without(eq2[0]) + FPush(q)
            for comp in resolver.choices(Z, Line(q - 2)):
                results |= _normalize_stage(ExtClassVector(q - 2, Z, comp), resolver, trace)
        else:
            raise MalformedExtension("residual class supported outside its Ext^1")
    return results


# -- iterated extensions -------------------------------------------------------------


@dataclass(frozen=True)
class IteratedExtension:
    stages: tuple      # ExtClassVector per stage, bottom-up

    def __post_init__(self):
        if not self.stages:
            raise MalformedExtension("at least one stage is required")

    @property
    def rank(self) -> int:
        return self.stages[0].top.rank + len(self.stages)

    def to_dict(self) -> dict:
        return {"stages": [s.to_dict() for s in self.stages]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "IteratedExtension":
        stages = []
        try:
            for st in d["stages"]:
                pairs = [(StandardSummand(c["kind"], c["twist"]), int(c.get("value", 0)))
                         for c in st["components"]]
                stages.append(ExtClassVector.from_pairs(int(st["twist"]), pairs))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedExtension):
                raise
            raise MalformedExtension(f"bad stage description: {exc}") from exc
        return cls(tuple(stages))


@dataclass
class NormalizationResult:
    forms: set
    rules: list

    def sorted_forms(self) -> list:
        return sorted(self.forms, key=lambda b: b.canonical())


def normalize(e: IteratedExtension, resolver: Resolver | None = None) -> NormalizationResult:
    resolver = resolver or EnumerateAll()
    trace: list = []
    current = None
    for k, x in enumerate(e.stages):
        if current is not None and x.top not in current:
            raise MalformedExtension(
                f"stage {k} top {x.top.label()} is not a normal form of the previous stages")
        current = _normalize_stage(x, resolver, trace)
    return NormalizationResult(current, trace)


def split_extension(b: StandardBundle) -> IteratedExtension | None:
    """A one-stage, zero-class presentation of b (needs a line summand)."""
    for s in b:
        if s.kind == "Line":
            return IteratedExtension((ExtClassVector.zero(s.twist, b.without(s)),))
    return None


# -- random chains ---------------------------------------------------------------------


def random_bundle(rng: random.Random, max_rank: int) -> StandardBundle:
    out, r = [], 0
    target = rng.randint(0, max_rank)
    while r < target:
        kind = rng.choice([k for k in KINDS if r + {"Line": 1, "Ealpha": 2, "FPush": 3}[k] <= target])
        s = StandardSummand(kind, rng.randrange(-12, 12))
        out.append(s)
        r += s.rank
    return StandardBundle(out)


def random_extension(rng: random.Random, max_rank: int = 8) -> IteratedExtension:
    """Random chain of total rank <= max_rank; twists are biased so that
    nonzero classes are frequent."""
    n_stages = rng.randint(1, max_rank)
    top = random_bundle(rng, max_rank - n_stages)
    stages = []
    for _ in range(n_stages):
        if top.summands and rng.random() < 0.8:
            q = rng.choice(top.summands).twist + 2 + 12 * rng.randint(-1, 1)
        else:
            q = rng.randrange(-12, 12)
        idx = eligible(top, Line(q))
        comp = [0] * len(top.summands)
        for k in idx:
            comp[k] = rng.choice((0, 1, 2))
        x = ExtClassVector(q, top, tuple(comp))
        stages.append(x)
        forms = sorted(_normalize_stage(x, EnumerateAll(), []), key=lambda b: b.canonical())
        top = rng.choice(forms)
    return IteratedExtension(tuple(stages))


def random_extensions(count: int = 200, seed: int = 0, max_rank: int = 8) -> list:
    rng = random.Random(seed)
    return [random_extension(rng, max_rank) for _ in range(count)]
