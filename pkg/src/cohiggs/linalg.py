"""Exact linear algebra over Q (Fractions) and Z (Python ints)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def rank_exact(rows) -> int:
    """Rank of an integer or rational matrix by fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    # clear denominators row by row so everything is a Python int
    ints = []
    for row in mat:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        ints.append([int(x * den) for x in row])
    mat = ints
    m, n = len(mat), len(mat[0])
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        pv = prow[col]
        for i in range(rank + 1, m):
            c = mat[i][col]
            if not c:
                continue
            g = gcd(pv, c)
            fp, fc = pv // g, c // g
            row = [a * fp - b * fc for a, b in zip(mat[i], prow)]
            rg = 0
            for x in row:
                rg = gcd(rg, x)
            if rg > 1:
                row = [x // rg for x in row]
            mat[i] = row
        rank += 1
    return rank


def nullspace(rows, nvars: int) -> list:
    """Basis of {v : row . v = 0 for every row}, over Q.

    ``rows`` are sparse dicts ``{column: coefficient}``. The returned vectors
    are dense lists of Fractions, one per free column, in column order.
    """
    pivots = {}  # pivot column -> reduced row (dict), every pivot column eliminated elsewhere
    for raw in rows:
        row = {j: Fraction(c) for j, c in raw.items() if c}
        # reduce against the existing pivots
        for pc in [j for j in row if j in pivots]:
            c = row.get(pc)
            if not c:
                continue
            for j, v in pivots[pc].items():
                nv = row.get(j, 0) - c * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {j: v * inv for j, v in row.items()}
        # back-substitute into earlier pivot rows
        for other in pivots.values():
            c = other.get(pc)
            if c:
                for j, v in row.items():
                    nv = other.get(j, 0) - c * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        pivots[pc] = row
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        vec = [Fraction(0)] * nvars
        vec[free] = Fraction(1)
        for pc, row in pivots.items():
            c = row.get(free)
            if c:
                vec[pc] = -c
        basis.append(vec)
    return basis
