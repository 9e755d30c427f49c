"""Smith normal form of sparse integer matrices.

Pivots are chosen by minimal absolute value (ties broken by a Markowitz fill
estimate), so unit entries are consumed first and the expensive gcd steps only
run on the small unit-free remainder.
"""
from __future__ import annotations

from dataclasses import dataclass

from .matrix import SparseIntMatrix


@dataclass(frozen=True)
class SmithForm:
    """``left @ D @ right == M`` with ``D`` diagonal; the inverses satisfy
    ``left_inv @ M @ right_inv == D``."""

    diagonal: tuple
    rank: int
    shape: tuple
    left: SparseIntMatrix | None = None
    right: SparseIntMatrix | None = None
    left_inv: SparseIntMatrix | None = None
    right_inv: SparseIntMatrix | None = None

    def diagonal_matrix(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.shape[0], self.shape[1],
                               {(i, i): d for i, d in enumerate(self.diagonal)})

    @property
    def torsion(self) -> list:
        return [d for d in self.diagonal if d > 1]


def _nearest_quotient(a: int, b: int) -> int:
    q, r = divmod(a, b)
    # pick the quotient leaving the remainder of least absolute value
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


class _Eliminator:
    def __init__(self, m: SparseIntMatrix, transforms: bool):
        self.nr, self.nc = m.nrows, m.ncols
        self.rows = m.rows()
        self.cols = {j: set(c) for j, c in m.cols().items()}
        self.track = transforms
        if transforms:
            # P M Q = D ; L = P^-1 ; R = Q^-1
            self.P = {i: {i: 1} for i in range(self.nr)}
            self.L = {i: {i: 1} for i in range(self.nr)}   # columns of L
            self.Q = {j: {j: 1} for j in range(self.nc)}   # columns of Q
            self.R = {j: {j: 1} for j in range(self.nc)}   # rows of R

    @staticmethod
    def _axpy(target: dict, source: dict, c: int):
        for k, v in source.items():
            nv = target.get(k, 0) + c * v
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)

    def add_row(self, i: int, p: int, c: int):
        """row_i += c * row_p"""
        if not c:
            return
        ri = self.rows.setdefault(i, {})
        for j, v in self.rows.get(p, {}).items():
            nv = ri.get(j, 0) + c * v
            if nv:
                if j not in ri:
                    self.cols.setdefault(j, set()).add(i)
                ri[j] = nv
            else:
                ri.pop(j, None)
                self.cols[j].discard(i)
        if not ri:
            del self.rows[i]
        if self.track:
            self._axpy(self.P[i], self.P[p], c)
            self._axpy(self.L[p], self.L[i], -c)

    def add_col(self, j: int, q: int, c: int):
        """col_j += c * col_q"""
        if not c:
            return
        cj = self.cols.setdefault(j, set())
        for i in list(self.cols.get(q, ())):
            row = self.rows[i]
            nv = row.get(j, 0) + c * row[q]
            if nv:
                row[j] = nv
                cj.add(i)
            else:
                row.pop(j, None)
                cj.discard(i)
        if self.track:
            self._axpy(self.Q[j], self.Q[q], c)
            self._axpy(self.R[q], self.R[j], -c)

    def negate_row(self, i: int):
        for j in self.rows.get(i, {}):
            self.rows[i][j] = -self.rows[i][j]
        if self.track:
            self.P[i] = {k: -v for k, v in self.P[i].items()}
            self.L[i] = {k: -v for k, v in self.L[i].items()}

    def _scan(self):
        """Minimal |entry|; tie-break on Markowitz cost."""
        best = None
        for i, row in self.rows.items():
            rl = len(row) - 1
            for j, v in row.items():
                a = abs(v)
                if best is not None and a > best[0]:
                    continue
                cost = rl * (len(self.cols[j]) - 1)
                key = (a, cost)
                if best is None or key < best[:2]:
                    best = (a, cost, i, j)
        return best

    def run(self):
        pivots = []
        queue = []      # (cost, i, j) candidates sharing the current minimal |entry|
        level = None
        while self.rows:
            piv = None
            while queue:
                cost, i, j = queue.pop()
                v = self.rows.get(i, {}).get(j)
                if v is not None and abs(v) == level:
                    piv = (i, j)
                    break
            if piv is None:
                best = self._scan()
                if best is None:
                    break
                level = best[0]
                cand = []
                for i, row in self.rows.items():
                    rl = len(row) - 1
                    for j, v in row.items():
                        if abs(v) == level:
                            cand.append((rl * (len(self.cols[j]) - 1), i, j))
                cand.sort(reverse=True)
                queue = cand
                continue
            p, q = self._isolate(*piv)
            pivots.append((p, q, self.rows[p][q]))
            del self.rows[p]
            self.cols[q].discard(p)
            if not self.cols[q]:
                del self.cols[q]
        return pivots

    def _isolate(self, p: int, q: int):
        """Clear row p and column q around the pivot, moving the pivot to a
        smaller entry whenever a remainder appears."""
        while True:
            v = self.rows[p][q]
            moved = False
            for i in list(self.cols[q]):
                if i == p:
                    continue
                a = self.rows[i][q]
                self.add_row(i, p, -_nearest_quotient(a, v))
            others = [i for i in self.cols[q] if i != p]
            if others:
                p = min(others, key=lambda i: abs(self.rows[i][q]))
                continue
            for j in list(self.rows[p]):
                if j == q:
                    continue
                a = self.rows[p][j]
                self.add_col(j, q, -_nearest_quotient(a, v))
            others = [j for j in self.rows[p] if j != q]
            if others:
                q = min(others, key=lambda j: abs(self.rows[p][j]))
                moved = True
            if moved:
                continue
            if abs(v) > 1:
                bad = None
                for i, row in self.rows.items():
                    if i == p:
                        continue
                    for j, w in row.items():
                        if w % v:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    self.add_row(p, bad, 1)
                    continue
            if v < 0:
                self.negate_row(p)
            return p, q


def smith_normal_form(m: SparseIntMatrix, transforms: bool = True) -> SmithForm:
    el = _Eliminator(m, transforms)
    pivots = el.run()
    pivots.sort(key=lambda t: abs(t[2]))  # stable: extraction order is already a chain
    diag = tuple(abs(v) for _, _, v in pivots)
    for a, b in zip(diag, diag[1:]):
        if b % a:
            raise ArithmeticError(f"divisibility chain broken: {a} ∤ {b}")
    r = len(diag)
    if not transforms:
        return SmithForm(diag, r, m.shape)
    prow = [p for p, _, _ in pivots]
    pcol = [q for _, q, _ in pivots]
    used_r, used_c = set(prow), set(pcol)
    row_order = prow + [i for i in range(m.nrows) if i not in used_r]
    col_order = pcol + [j for j in range(m.ncols) if j not in used_c]
    # D[k, k'] lives at (row_order[k], col_order[k'])
    P = {k: el.P[i] for k, i in enumerate(row_order)}
    L = {k: el.L[i] for k, i in enumerate(row_order)}
    Q = {k: el.Q[j] for k, j in enumerate(col_order)}
    R = {k: el.R[j] for k, j in enumerate(col_order)}
    nr, nc = m.nrows, m.ncols
    return SmithForm(
        diag, r, m.shape,
        left=SparseIntMatrix.from_cols(nr, nr, L),
        right=SparseIntMatrix.from_rows(nc, nc, R),
        left_inv=SparseIntMatrix.from_rows(nr, nr, P),
        right_inv=SparseIntMatrix.from_cols(nc, nc, Q),
    )


def matrix_rank(m: SparseIntMatrix) -> int:
    return smith_normal_form(m, transforms=False).rank
