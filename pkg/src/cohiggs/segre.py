"""Segre invariants s_k and maximal subsheaf degrees delta_k.

s_k = k * deg E - r * delta_k, where delta_k is the largest degree of a
rank k subsheaf preserved by Phi. On P1 neither depends on Phi: the top k
summands always form an invariant subbundle of maximal degree.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import floor

import numpy as np

from . import kernels
from .errors import (
    InconsistentDeltaTable,
    NoValidH,
    NonIntegralDPrime,
    NotCompleteFiltration,
    NotTwoNilpotent,
    ProfileTooShort,
    RangeViolation,
)
from .hn import HNData
from .p1 import ShiftedField, SplittingType, generic_rank, iterate


@dataclass(frozen=True)
class SegreTable:
    r: int
    degree: int
    values: dict  # k -> (s_k, delta_k)
    provenance: dict = field(default_factory=dict)  # k -> str

    def s(self, k: int) -> int:
        return self.values[k][0]

    def delta(self, k: int) -> int:
        return self.values[k][1]

    def rows(self):
        for k in sorted(self.values):
            yield k, self.values[k][0], self.values[k][1], self.provenance.get(k, "")


def _table(r, d, deltas: dict, source) -> SegreTable:
    values = {k: (k * d - r * deltas[k], deltas[k]) for k in range(1, r)}
    prov = {k: source(k) if callable(source) else source for k in values}
    return SegreTable(r, d, values, prov)


def segre_p1(split: SplittingType) -> SegreTable:
    """Closed form on P1: delta_k is the sum of the k largest twists."""
    a = split.twists
    deltas = {k: sum(a[:k]) for k in range(1, split.rank)}
    return _table(split.rank, split.degree, deltas, "split formula: top-k twists")


def segre_complete(data: HNData) -> SegreTable:
    """Full flags (all r_i = 1): F_k is the unique subsheaf of maximal degree."""
    if any(r != 1 for r in data.ranks):
        raise NotCompleteFiltration()
    deltas = {k: data.partial_degree(k) for k in range(1, data.rank)}
    return _table(data.rank, data.degree, deltas, "complete flag: F_k unique maximiser")


def s_at_breakpoints(data: HNData) -> dict:
    """s at each rank rho = r_1 + ... + r_j, j < s, where F_j is the maximiser."""
    if data.s < 2:
        raise ProfileTooShort(data.s)
    r, d = data.rank, data.degree
    out = {}
    for j in range(1, data.s):
        rho = data.partial_rank(j)
        out[j] = rho * d - r * data.partial_degree(j)
    return out


def _bracket(data: HNData, k: int) -> int:
    """The h with rho_h - r_h < k < rho_h."""
    for h in range(1, data.s + 1):
        rho = data.partial_rank(h)
        if rho - data.ranks[h - 1] < k < rho:
            return h
    raise NoValidH(k)


def delta_intermediate_bound(data: HNData, k: int) -> int:
    """delta_k <= deg F_{h-1} + floor((k - rho + r_h) * mu_h) strictly inside block h."""
    h = _bracket(data, k)
    rho = data.partial_rank(h)
    return data.partial_degree(h - 1) + floor((k - rho + data.ranks[h - 1]) * data.mu(h))


def _compositions(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    for t in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - t, caps[1:]):
            yield (t,) + rest


def delta_composition(data: HNData, k: int, subquotient_delta: dict) -> int:
    """delta_k from per-block tables: deg F_{h-1} + max sum of delta_{t_j} over blocks j >= h.

    ``subquotient_delta[(j, t)]`` is delta_t of the j-th graded piece. The
    trivial entries t = 0 and t = r_j are filled in (0 and d_j) and checked
    if supplied.
    """
    h = _bracket(data, k)
    rho = data.partial_rank(h)
    table = dict(subquotient_delta)
    for j in range(h, data.s + 1):
        rj, dj = data.blocks[j - 1]
        for t, want in ((0, 0), (rj, dj)):
            if table.setdefault((j, t), want) != want:
                raise InconsistentDeltaTable(f"delta_{t} of piece {j} must be {want}")
    target = k + data.ranks[h - 1] - rho
    caps = [data.ranks[j - 1] for j in range(h, data.s + 1)]
    best = None
    for comp in _compositions(target, caps):
        total = 0
        for j, t in zip(range(h, data.s + 1), comp):
            if (j, t) not in table:
                raise InconsistentDeltaTable(f"missing delta_{t} for piece {j}")
            total += table[(j, t)]
        best = total if best is None else max(best, total)
    return data.partial_degree(h - 1) + best


def delta_tail(data: HNData, k: int, tail_delta: dict) -> int:
    """For r - r_s < k < r: d_1 + ... + d_{s-1} + delta_{k + r_s - r}(last piece)."""
    r, rs = data.rank, data.ranks[-1]
    if not r - rs < k < r:
        raise RangeViolation(f"k={k} outside ({r - rs}, {r})")
    t = k + rs - r
    if t not in tail_delta:
        raise InconsistentDeltaTable(f"missing delta_{t} for the last piece")
    return data.partial_degree(data.s - 1) + tail_delta[t]


def segre_upper_bound(data: HNData, k: int, e_inner: int) -> int:
    """Bound s_k <= k d - r (deg F_h + d') for rho_h < k < rho_{h+1}.

    ``e_inner`` is s_{r'}(F_{h+1}/F_h) with r' = k - rho_h, and d' is the
    degree of a maximal rank r' subsheaf of that piece, recovered from it.
    """
    for h in range(0, data.s):
        lo, hi = data.partial_rank(h), data.partial_rank(h + 1)
        if lo < k < hi:
            break
    else:
        raise NoValidH(k)
    rp = k - lo
    r_next, d_next = data.blocks[h]
    num = rp * d_next - e_inner
    if num % r_next:
        raise NonIntegralDPrime(f"({rp}*{d_next} - {e_inner})/{r_next} is not an integer")
    dprime = num // r_next
    return k * data.degree - data.rank * (data.partial_degree(h) + dprime)


# ------------------------------------------------------------------ oracle

def _term_rank(support) -> int:
    """Maximum matching size in a bipartite support pattern (list of row sets)."""
    match = {}

    def augment(col, seen):
        for row in support[col]:
            if row in seen:
                continue
            seen.add(row)
            if row not in match or augment(match[row], seen):
                match[row] = col
                return True
        return False

    return sum(1 for col in range(len(support)) if augment(col, set()))


def _generic_injective(a, c, rng) -> bool:
    """Does a generic map O(c_1) + ... + O(c_k) -> O(a_1) + ... + O(a_r) have rank k?"""
    k = len(c)
    # fast path: one random specialisation; full rank there is proof
    mat = np.zeros((len(a), k), dtype=np.int64)
    for i, ci in enumerate(c):
        for p, ap in enumerate(a):
            if ap >= ci:
                mat[p, i] = rng.randint(1, 1 << 20)
    if kernels.int_rank(mat) == k:
        return True
    # independent generic coefficients: rank equals the term rank
    support = [[p for p, ap in enumerate(a) if ap >= ci] for ci in c]
    return _term_rank(support) == k


def oracle_delta_p1(split: SplittingType, k: int, window=None, seed: int = 0) -> int:
    """delta_k by brute force over split candidate subsheaves.

    Candidates C = O(c_1) + ... + O(c_k) with twists in ``window`` (default
    [min a - r, max a]) are visited by decreasing degree; the first one that
    embeds generically is the answer.
    """
    r = split.rank
    if not 1 <= k < r:
        raise ValueError(f"k must satisfy 1 <= k < {r}")
    a = split.twists
    lo, hi = window if window is not None else (min(a) - r, max(a))
    rng = random.Random(seed)
    cands = sorted(itertools.combinations_with_replacement(range(hi, lo - 1, -1), k),
                   key=lambda c: -sum(c))
    for c in cands:
        if _generic_injective(a, c, rng):
            return sum(c)
    raise RuntimeError("no candidate subsheaf in the search window")


def oracle_segre_p1(split: SplittingType, window=None) -> SegreTable:
    deltas = {k: oracle_delta_p1(split, k, window) for k in range(1, split.rank)}
    return _table(split.rank, split.degree, deltas, "oracle")


def two_nilpotent_subsheaf_ranks(phi: ShiftedField):
    """``(rank ker Phi, rank im Phi, True)`` for a 2-nilpotent field.

    Kernel and image are then Phi-invariant, and together with the flags
    they contain they give invariant subsheaves of every rank, hence the
    constant third component.
    """
    if not iterate(phi, 2).is_zero():
        raise NotTwoNilpotent()
    rk = generic_rank(phi)
    return phi.rank - rk, rk, True
