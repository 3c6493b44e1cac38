"""Endomorphisms of a split bundle commuting with a co-Higgs field.

End(E, Phi) = {f in End(E) : Phi o f = f o Phi}, where on the right f acts
on E(gamma) through the twist. Unknowns are the coefficients of the forms
in f (entry (p, q) of degree a_p - a_q) and every coefficient of every entry
of Phi o f - f o Phi gives one linear equation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from . import kernels
from .errors import NecessaryConditionFails, ProfileTooShort
from .existence import two_nilpotent_guarantee
from .hn import CurveContext, HNData, necessary_condition
from .linalg import nullspace, rank_exact
from .p1 import Endomorphism, ShiftedField, SplittingType, degree_table, fields_to_array


@dataclass(frozen=True)
class EndoSpace:
    dimension: int
    basis: tuple  # of Endomorphism
    contains_identity: bool

    @property
    def flags(self) -> tuple:
        """Per basis vector: "scalar", "strictly-triangular" or "general"."""
        out = []
        for f in self.basis:
            if f.is_scalar():
                out.append("scalar")
            elif f.is_strictly_triangular():
                out.append("strictly-triangular")
            else:
                out.append("general")
        return tuple(out)


def end_dim(split: SplittingType) -> int:
    a = split.twists
    return sum(max(0, ap - aq + 1) for ap in a for aq in a)


def _unknowns(split: SplittingType):
    """List of (p, q, j) (0-based) and its inverse index."""
    table = degree_table(split, 0)
    r = split.rank
    cols = [(p, q, j) for p in range(r) for q in range(r) for j in range(table[p][q] + 1)]
    return cols, {c: i for i, c in enumerate(cols)}


def _equations(phi: ShiftedField, index) -> list:
    """Sparse rows of f -> Phi o f - f o Phi, keyed by output (p, q, t)."""
    r = phi.rank
    end_table = degree_table(phi.split, 0)
    rows: dict = {}

    def add(key, col, val):
        row = rows.setdefault(key, {})
        row[col] = row.get(col, 0) + val

    for p in range(r):
        for m in range(r):
            coeffs = phi.entries[p][m]
            for u, c in enumerate(coeffs):
                if not c:
                    continue
                for q in range(r):
                    # Phi_{pm} f_{mq}
                    for j in range(end_table[m][q] + 1):
                        add((p, q, u + j), index[(m, q, j)], c)
                    # f_{qp} Phi_{pm}
                    for j in range(end_table[q][p] + 1):
                        add((q, m, u + j), index[(q, p, j)], -c)
    return [rows[k] for k in sorted(rows)]


def commutant(phi: ShiftedField) -> EndoSpace:
    """Exact basis of End(E, Phi) over Q."""
    split = phi.split
    cols, index = _unknowns(split)
    vectors = nullspace(_equations(phi, index), len(cols))
    r = split.rank
    basis = []
    for vec in vectors:
        rows = [[[] for _ in range(r)] for _ in range(r)]
        table = degree_table(split, 0)
        for p in range(r):
            for q in range(r):
                rows[p][q] = [Fraction(0)] * (table[p][q] + 1) if table[p][q] >= 0 else []
        for (p, q, j), v in zip(cols, vec):
            rows[p][q][j] = v
        basis.append(Endomorphism(split, rows))
    ident = Endomorphism.identity(split)
    contains = _in_span(ident, basis, cols)
    return EndoSpace(len(basis), tuple(basis), contains)


def _flatten(f: Endomorphism, cols) -> list:
    return [f.entries[p][q][j] for p, q, j in cols]


def _in_span(f, basis, cols) -> bool:
    if not basis:
        return False
    mat = [_flatten(b, cols) for b in basis]
    return rank_exact(mat + [_flatten(f, cols)]) == rank_exact(mat)


def _integral(phi: ShiftedField):
    """phi scaled to integer coefficients (same commutant)."""
    den = 1
    for row in phi.entries:
        for e in row:
            for c in e:
                den = lcm(den, c.denominator)
    return phi if den == 1 else phi.scaled(den)


def commutant_dimension(phi: ShiftedField, backend=None) -> int:
    """dim End(E, Phi) via the integer rank kernel, exact fallback on overflow."""
    return int(commutant_dimensions([phi], backend=backend)[0])


def commutant_dimensions(fields, backend=None) -> np.ndarray:
    """Commutant dimensions for a list of fields on one bundle."""
    if not fields:
        return np.zeros(0, dtype=np.int64)
    first = fields[0]
    total = end_dim(first.split)
    try:
        arr, _ = fields_to_array([_integral(f) for f in fields])
    except (OverflowError, ValueError):
        return np.array([commutant(f).dimension for f in fields], dtype=np.int64)
    ranks = kernels.commutant_ranks(arr, first.split.twists, first.shift, backend=backend)
    out = total - ranks
    for i in np.nonzero(ranks < 0)[0]:
        out[i] = commutant(fields[i]).dimension
    return out


def commutant_dimensions_array(split: SplittingType, gamma: int, arr, backend=None) -> np.ndarray:
    """Same as :func:`commutant_dimensions` for fields already in kernel layout."""
    from .p1 import field_from_array

    ranks = kernels.commutant_ranks(arr, split.twists, gamma, backend=backend)
    out = end_dim(split) - ranks
    for i in np.nonzero(ranks < 0)[0]:
        out[i] = commutant(field_from_array(split, gamma, arr[i])).dimension
    return out


def is_simple_pair(phi: ShiftedField) -> bool:
    return commutant_dimension(phi) == 1


def nonsimplicity_certificate(ctx: CurveContext, data: HNData) -> bool:
    """True when every pair (E, Phi != 0) with this profile has a non-scalar endomorphism.

    For g >= 2 always. Otherwise it needs mu_s < mu_1 + g - 1 together with
    2-nilpotency: then E -> E/F_{s-1} -> F_1 -> E built from a nonzero map of
    the extreme pieces commutes with Phi.
    """
    if data.s < 2:
        raise ProfileTooShort(data.s)
    if not necessary_condition(ctx, data):
        raise NecessaryConditionFails()
    if ctx.genus >= 2:
        return True
    return data.slopes[-1] < data.slopes[0] + ctx.genus - 1 and two_nilpotent_guarantee(ctx, data)
