from __future__ import annotations

import json
from typing import Iterable, Mapping


class SparseIntMatrix:
    """Integer matrix stored as ``{(row, col): value}`` with no zero entries."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Mapping | Iterable = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative dimension")
        self.nrows = nrows
        self.ncols = ncols
        items = entries.items() if isinstance(entries, Mapping) else entries
        ent = {}
        for (i, j), v in items:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            v = int(v)
            if v:
                ent[(i, j)] = ent.get((i, j), 0) + v
                if not ent[(i, j)]:
                    del ent[(i, j)]
        self.entries = ent

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols,
                   {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def from_rows(cls, nrows, ncols, rows: Mapping):
        return cls(nrows, ncols, {(i, j): v for i, r in rows.items() for j, v in r.items()})

    @classmethod
    def from_cols(cls, nrows, ncols, cols: Mapping):
        return cls(nrows, ncols, {(i, j): v for j, c in cols.items() for i, v in c.items()})

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def rows(self) -> dict:
        out: dict = {}
        for (i, j), v in self.entries.items():
            out.setdefault(i, {})[j] = v
        return out

    def cols(self) -> dict:
        out: dict = {}
        for (i, j), v in self.entries.items():
            out.setdefault(j, {})[i] = v
        return out

    def column(self, j) -> dict:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def transpose(self):
        return SparseIntMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def __matmul__(self, other: "SparseIntMatrix"):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        orows = other.rows()
        out: dict = {}
        for (i, k), v in self.entries.items():
            for j, w in orows.get(k, {}).items():
                out[(i, j)] = out.get((i, j), 0) + v * w
        return SparseIntMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: Mapping) -> dict:
        """Multiply a sparse column vector ``{index: value}``."""
        out: dict = {}
        for (i, j), v in self.entries.items():
            x = vec.get(j)
            if x:
                out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}

    def __eq__(self, other):
        return (isinstance(other, SparseIntMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __repr__(self):
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={len(self.entries)})"

    def to_json(self) -> str:
        triples = sorted([i, j, v] for (i, j), v in self.entries.items())
        return json.dumps({"rows": self.nrows, "cols": self.ncols, "entries": triples})

    @classmethod
    def from_json(cls, text: str):
        d = json.loads(text)
        return cls(d["rows"], d["cols"], {(i, j): v for i, j, v in d["entries"]})
