"""Small finite groups as multiplication tables.

Matrix groups over F_3 are generated by explicit matrices, so Q8 and SL2(F3)
sit inside GL2(F3) by equality of matrix keys.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

SUPPORTED = ("S3", "C2xC2", "Q8", "SL2F3", "GL2F3")
ORDERS = {"S3": 6, "C2xC2": 4, "Q8": 8, "SL2F3": 24, "GL2F3": 48}

# Q8 = <i, j> in SL2(F3); any conjugate embedding would do
Q8_I = ((0, 2), (1, 0))
Q8_J = ((1, 1), (1, 2))


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple          # hashable keys
    table: tuple             # table[a][b] = index of a*b
    identity: int
    inverses: tuple
    generators: tuple        # element indices
    generator_names: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, key) -> int:
        return self._lookup()[key]

    def _lookup(self):
        cache = getattr(self, "_lk", None)
        if cache is None:
            cache = {k: i for i, k in enumerate(self.elements)}
            object.__setattr__(self, "_lk", cache)
        return cache

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def words(self) -> list:
        """For each element, a word in the generators (BFS, shortest first)."""
        words = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for k, g in enumerate(self.generators):
                b = self.table[a][g]
                if b not in words:
                    words[b] = words[a] + (k,)
                    queue.append(b)
        if len(words) != self.order:
            raise GroupError("generators do not generate the group")
        return [words[i] for i in range(self.order)]

    def verify(self) -> None:
        n = self.order
        rng = range(n)
        for a in rng:
            if self.table[self.identity][a] != a or self.table[a][self.identity] != a:
                raise GroupError("identity fails")
            if self.table[a][self.inverses[a]] != self.identity:
                raise GroupError("inverse fails")
        for a, b, c in itertools.product(rng, rng, rng):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupError("multiplication is not associative")
        self.words()


def _from_closure(name, gens, gen_names, mul, one) -> FiniteGroup:
    elems = [one]
    seen = {one: 0}
    queue = deque([one])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mul(a, g)
            if b not in seen:
                seen[b] = len(elems)
                elems.append(b)
                queue.append(b)
    table = tuple(tuple(seen[mul(a, b)] for b in elems) for a in elems)
    ident = seen[one]
    inv = tuple(next(j for j in range(len(elems)) if table[i][j] == ident)
                for i in range(len(elems)))
    return FiniteGroup(name, tuple(elems), table, ident, inv,
                       tuple(seen[g] for g in gens), tuple(gen_names))


def mat_mul_mod(a, b, q=3):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) % q for j in range(2))
                 for i in range(2))


def det_mod(a, q=3):
    return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % q


def all_invertible_2x2(q: int = 3) -> list:
    """Brute-force enumeration of GL2(F_q)."""
    out = []
    for e in itertools.product(range(q), repeat=4):
        m = ((e[0], e[1]), (e[2], e[3]))
        if det_mod(m, q):
            out.append(m)
    return out


def build_group(name: str) -> FiniteGroup:
    if name not in SUPPORTED:
        raise GroupError(f"unsupported group {name!r}; choose from {SUPPORTED}")
    ident2 = ((1, 0), (0, 1))
    if name == "S3":
        # permutations as tuples p with p[i] the image of i; (p*q)(i) = p(q(i))
        G = _from_closure("S3", [(1, 0, 2), (1, 2, 0)], ("s", "c"),
                          lambda p, q: tuple(p[q[i]] for i in range(3)), (0, 1, 2))
    elif name == "C2xC2":
        G = _from_closure("C2xC2", [(1, 0), (0, 1)], ("g1", "g2"),
                          lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (0, 0))
    elif name == "Q8":
        G = _from_closure("Q8", [Q8_I, Q8_J], ("i", "j"), mat_mul_mod, ident2)
        _check_q8(G)
    elif name == "SL2F3":
        G = _from_closure("SL2F3", [((1, 1), (0, 1)), ((1, 0), (1, 1))], ("u", "l"),
                          mat_mul_mod, ident2)
        if any(det_mod(m) != 1 for m in G.elements):
            raise GroupError("SL2(F3) element with determinant != 1")
    else:
        G = _from_closure("GL2F3", [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))],
                          ("u", "l", "d"), mat_mul_mod, ident2)
    if G.order != ORDERS[name]:
        raise GroupError(f"{name} has order {G.order}, expected {ORDERS[name]}")
    G.verify()
    return G


def _check_q8(G: FiniteGroup) -> None:
    i, j = G.generators
    if G.power(i, 2) != G.power(j, 2):
        raise GroupError("i^2 != j^2")
    if G.power(i, 4) != G.identity:
        raise GroupError("i^4 != 1")
    if G.mul(G.mul(i, j), G.inverses[i]) != G.inverses[j]:
        raise GroupError("i j i^-1 != j^-1")
    if any(det_mod(m) != 1 for m in G.elements):
        raise GroupError("Q8 image not in SL2(F3)")


def subgroup_embedding(H: FiniteGroup, G: FiniteGroup) -> tuple:
    """Indices in G of the elements of H (by key equality), checked to be a
    homomorphism."""
    try:
        emb = tuple(G.index(k) for k in H.elements)
    except KeyError as exc:
        raise GroupError(f"{H.name} is not a subgroup of {G.name}") from exc
    for a in range(H.order):
        for b in range(H.order):
            if emb[H.mul(a, b)] != G.mul(emb[a], emb[b]):
                raise GroupError(f"{H.name} -> {G.name} is not multiplicative")
    return emb


def homomorphism(src: FiniteGroup, tgt: FiniteGroup, gen_images: tuple) -> tuple:
    """Extend images of generators to all elements, checking well-definedness."""
    image = {src.identity: tgt.identity}
    queue = deque([src.identity])
    while queue:
        a = queue.popleft()
        for g, gi in zip(src.generators, gen_images):
            b = src.mul(a, g)
            val = tgt.mul(image[a], gi)
            if b in image:
                if image[b] != val:
                    raise GroupError("generator images do not define a homomorphism")
            else:
                image[b] = val
                queue.append(b)
    out = tuple(image[i] for i in range(src.order))
    for a in range(src.order):
        for b in range(src.order):
            if out[src.mul(a, b)] != tgt.mul(out[a], out[b]):
                raise GroupError("not a homomorphism")
    return out


def q8_to_c2xc2(Q: FiniteGroup, K: FiniteGroup) -> tuple:
    """ρ : Q8 -> C2 x C2, i -> g1, j -> g2 (kernel {±1})."""
    return homomorphism(Q, K, K.generators)
