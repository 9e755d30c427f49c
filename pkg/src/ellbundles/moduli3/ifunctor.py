"""The functor I from 3-local S3-lattices to standard bundles, on the
dictionary objects.

Matching uses rank plus 3-adic elementary divisors (capped at 9, so this is
the mod 3 and mod 9 information) of g - 1 for every group element and of the
stacked pairs [g - 1; h - 1].  These invariants are additive over direct sums,
so a lattice is matched to a multiset of dictionary entries by a small search.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..exactalg import SparseIntMatrix, p_part, smith_normal_form
from ..reps.lattices import ShortExactSequence, rep_sequences, s3_lattices
from ..reps.modules import MatrixRep
from .bundles import Ealpha, FPush, Line, StandardBundle, StandardSummand


class NotInDictionary(ValueError):
    pass


# lattice name -> image summand
DICTIONARY = {
    "trivial": Line(0),
    "P": FPush(0),
    "Zzeta": Ealpha(-2),
    "IdealZeta": Ealpha(4),
}


def _divisor_profile(m: np.ndarray) -> tuple:
    """(#units, #divisors with 3-part 3, #with 3-part >= 9 or zero) among the
    columns' worth of elementary divisors."""
    ncols = m.shape[1]
    diag = smith_normal_form(SparseIntMatrix.from_dense(m.tolist()), transforms=False).diagonal
    counts = [0, 0, 0]
    for d in diag:
        e = p_part(int(d), 3)
        counts[0 if e == 1 else 1 if e == 3 else 2] += 1
    counts[2] += ncols - len(diag)
    return tuple(counts)


def invariant(rep: MatrixRep) -> tuple:
    if rep.group.name != "S3":
        raise NotInDictionary("the dictionary is for S3-lattices")
    n = rep.rank
    I = np.eye(n, dtype=np.int64)
    diffs = [m - I for m in rep.mats]
    singles = [_divisor_profile(d) for d in diffs]
    pairs = [_divisor_profile(np.vstack([diffs[a], diffs[b]]))
             for a, b in itertools.combinations(range(len(diffs)), 2)]
    return (n, tuple(singles), tuple(pairs))


def _add(x: tuple, y: tuple) -> tuple:
    if isinstance(x, int):
        return x + y
    return tuple(_add(a, b) for a, b in zip(x, y))


@lru_cache(maxsize=1)
def _dictionary_invariants() -> dict:
    L = s3_lattices()
    return {name: invariant(getattr(L, "Z" if name == "trivial" else name))
            for name in DICTIONARY}


@dataclass(frozen=True)
class Match:
    parts: tuple          # dictionary names with multiplicity

    def image(self) -> StandardBundle:
        return StandardBundle(DICTIONARY[n] for n in self.parts)


def match(rep: MatrixRep) -> Match:
    """Multiset of dictionary entries with the invariants of ``rep``."""
    target = invariant(rep)
    inv = _dictionary_invariants()
    names = list(DICTIONARY)
    found = []
    for size in range(1, rep.rank + 1):
        for combo in itertools.combinations_with_replacement(names, size):
            if sum(inv[c][0] for c in combo) != rep.rank:
                continue
            total = inv[combo[0]]
            for c in combo[1:]:
                total = _add(total, inv[c])
            if total == target:
                found.append(Match(tuple(combo)))
    if not found:
        raise NotInDictionary(f"{rep.name or 'lattice'} is not a sum of dictionary lattices")
    images = {m.image() for m in found}
    if len(images) > 1:
        raise NotInDictionary(f"{rep.name or 'lattice'} matches dictionary sums with "
                              "different images")
    return found[0]


def i_functor(rep: MatrixRep) -> StandardBundle:
    return match(rep).image()


@dataclass
class BundleSequence:
    left: StandardBundle
    middle: StandardBundle
    right: StandardBundle
    name: str

    def to_dict(self) -> dict:
        return {"name": self.name, "left": self.left.label(), "middle": self.middle.label(),
                "right": self.right.label()}


def map_sequence(seq: ShortExactSequence) -> BundleSequence:
    """Object-level image of 0 -> A -> B -> C -> 0."""
    return BundleSequence(i_functor(seq.left.source), i_functor(seq.left.target),
                          i_functor(seq.right.target), seq.name)


def mapped_rep_sequences() -> tuple:
    return tuple(map_sequence(s) for s in rep_sequences())


EXPECTED_SEQUENCES = {
    # 0 -> O -> f_*f^*O -> E_α ⊗ ω^-2 -> 0 and 0 -> E_α ⊗ ω^4 -> f_*f^*O -> O -> 0
    "RepSeq1": (StandardBundle([Line(0)]), StandardBundle([FPush(0)]),
                StandardBundle([Ealpha(-2)])),
    "RepSeq2": (StandardBundle([Ealpha(4)]), StandardBundle([FPush(0)]),
                StandardBundle([Line(0)])),
}


def summand_of(name: str) -> StandardSummand:
    return DICTIONARY[name]


def _parity(perm: tuple) -> int:
    inv = sum(1 for a, b in itertools.combinations(range(len(perm)), 2) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def sign_lattice() -> MatrixRep:
    """The sign representation of S3 over Z_(3); not in the dictionary."""
    L = s3_lattices()
    G = L.Z.group
    return MatrixRep(G, L.Z.domain,
                     tuple(np.array([[_parity(G.elements[g])]]) for g in G.generators), "sign")
