"""Independent reference computations used to cross-check the main code paths."""
from __future__ import annotations

import sympy


def lattice_points_brute(k: int, l: int, m: int, degree: int, box: int = 200) -> list:
    """All (a, b) in a box with ak + bl = m, nonnegative (degree 0) or
    strictly negative (degree 1), by exhaustive search."""
    out = []
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            if a * k + b * l != m:
                continue
            if degree == 0 and a >= 0 and b >= 0:
                out.append((a, b))
            if degree == 1 and a < 0 and b < 0:
                out.append((a, b))
    return sorted(out)


def modular_form_count(n: int) -> int:
    """#{(a, b, c) : 4a + 6b + 12c = n, a, c >= 0, b in {0, 1}}."""
    count = 0
    for b in (0, 1):
        for c in range(n // 12 + 1):
            rest = n - 6 * b - 12 * c
            if rest >= 0 and rest % 4 == 0:
                count += 1
    return count


def dense_homology(d_in: list, d_out: list, dim: int) -> tuple:
    """(free rank, torsion invariants) of ker(d_out) / im(d_in) by dense sympy
    Smith forms; d_in is dim x a, d_out is b x dim (lists of rows)."""
    from sympy.matrices.normalforms import smith_normal_form

    def diag(rows, nrows, ncols):
        if not nrows or not ncols:
            return []
        M = sympy.Matrix(nrows, ncols, lambda i, j: rows[i][j])
        S = smith_normal_form(M, domain=sympy.ZZ)
        return [abs(int(S[i, i])) for i in range(min(nrows, ncols)) if S[i, i] != 0]

    out_rank = len(diag(d_out, len(d_out), dim))
    inv = diag(d_in, dim, len(d_in[0]) if d_in else 0)
    free = dim - out_rank - len(inv)
    return free, sorted(t for t in inv if t > 1)
