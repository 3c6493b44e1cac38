"""Slope arithmetic on numeric Harder-Narasimhan profiles.

Everything here works on the numeric shadow of a filtration: the list of
(rank, degree) pairs of its semistable subquotients. No sheaves are built.
Slopes are :class:`fractions.Fraction` values and every comparison is exact.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import Optional

from .errors import (
    EmptyProfile,
    GammaNonNegative,
    InvalidRank,
    NecessaryConditionFails,
    NonDecreasingSlopes,
    NonIntegralSlopeGenusZero,
    OrderViolation,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class CurveContext:
    """A smooth curve of genus ``genus`` with ``marked_points`` log points."""

    genus: int
    marked_points: int = 0
    gamma: int = field(init=False)

    def __post_init__(self):
        if self.genus < 0 or self.marked_points < 0:
            raise ValueError("genus and marked_points must be non-negative")
        gamma = 2 - 2 * self.genus - self.marked_points
        if gamma >= 0:
            raise GammaNonNegative(gamma)
        object.__setattr__(self, "gamma", gamma)

    @property
    def regime(self) -> str:
        if self.genus == 0:
            return "projective-line"
        if self.genus == 1:
            return "elliptic"
        return "higher-genus"


@dataclass(frozen=True)
class HNData:
    """Validated profile ``(r_1, d_1; ...; r_s, d_s)``; build with :func:`validate_hn`."""

    blocks: tuple
    slopes: tuple

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def ranks(self) -> tuple:
        return tuple(r for r, _ in self.blocks)

    @property
    def degrees(self) -> tuple:
        return tuple(d for _, d in self.blocks)

    @property
    def rank(self) -> int:
        return sum(self.ranks)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def partial_rank(self, h: int) -> int:
        """r_1 + ... + r_h (1-based, h may be 0)."""
        return sum(self.ranks[:h])

    def partial_degree(self, h: int) -> int:
        """deg F_h = d_1 + ... + d_h."""
        return sum(self.degrees[:h])

    def mu(self, i: int) -> Fraction:
        return self.slopes[i - 1]

    def __str__(self):
        return ";".join(f"{r},{d}" for r, d in self.blocks)


def validate_hn(blocks, ctx: Optional[CurveContext] = None) -> HNData:
    """Check a list of ``(rank, degree)`` pairs and cache the slopes.

    Slopes must strictly decrease. When ``ctx`` is a genus 0 curve each
    slope must also be an integer, since the bundle then splits as a sum of
    line bundles.
    """
    blocks = tuple((int(r), int(d)) for r, d in blocks)
    if not blocks:
        raise EmptyProfile()
    for i, (r, _) in enumerate(blocks, start=1):
        if r < 1:
            raise InvalidRank(i)
    slopes = tuple(Fraction(d, r) for r, d in blocks)
    for i in range(len(slopes) - 1):
        # cross-multiplied: d_i r_{i+1} > d_{i+1} r_i
        (r1, d1), (r2, d2) = blocks[i], blocks[i + 1]
        if not d1 * r2 > d2 * r1:
            raise NonDecreasingSlopes(i + 1)
    if ctx is not None and ctx.genus == 0:
        for i, (r, d) in enumerate(blocks, start=1):
            if d % r:
                raise NonIntegralSlopeGenusZero(i)
    return HNData(blocks, slopes)


def slope_profile(data: HNData):
    """Return ``(mu_plus, mu_minus, [mu_1, ..., mu_s])``."""
    return data.slopes[0], data.slopes[-1], list(data.slopes)


def necessary_condition(ctx: CurveContext, data: HNData) -> bool:
    """True iff a nonzero co-Higgs field can exist: mu_s <= mu_1 + gamma."""
    return data.slopes[-1] <= data.slopes[0] + ctx.gamma


def nilpotency_bound(ctx: CurveContext, data: HNData) -> int:
    """Largest e with mu_s <= mu_1 + e*gamma; every field then has Phi^(e+1) = 0."""
    if not necessary_condition(ctx, data):
        raise NecessaryConditionFails()
    # mu_1 - mu_s >= e * (-gamma)
    return floor((data.slopes[0] - data.slopes[-1]) / -ctx.gamma)


@dataclass(frozen=True)
class IndexMaps:
    """Partial maps i -> b(i) and j -> c(j); ``None`` marks an undefined value.

    ``b[i]`` is the first later block that ``Phi`` can reach from block i,
    ``c[j]`` the last earlier block that block j can map into.
    """

    b: dict
    c: dict

    def defined_b(self) -> dict:
        return {i: k for i, k in self.b.items() if k is not None}

    def defined_c(self) -> dict:
        return {j: k for j, k in self.c.items() if k is not None}


def index_maps(ctx: CurveContext, data: HNData) -> IndexMaps:
    mu, s, gamma = data.slopes, data.s, ctx.gamma
    b = {}
    for i in range(1, s + 1):
        b[i] = None
        if mu[i - 1] + gamma >= mu[-1]:
            b[i] = min(k for k in range(i + 1, s + 1) if mu[i - 1] + gamma >= mu[k - 1])
    c = {}
    for j in range(1, s + 1):
        c[j] = None
        if j >= 2 and mu[j - 1] <= gamma + mu[0]:
            c[j] = max(k for k in range(1, j) if mu[j - 1] <= gamma + mu[k - 1])
    return IndexMaps(b, c)


class SplittingVerdict(enum.Enum):
    SplitsForAll = "SplitsForAll"
    SplitsViaCoprimeCase = "SplitsViaCoprimeCase"
    Inconclusive = "Inconclusive"


def splitting_guarantee(ctx: CurveContext, data: HNData) -> SplittingVerdict:
    """Decide whether every bundle with this profile is isomorphic to gr(E).

    The strict gap ``mu_i + 2 - 2g > mu_{i+1}`` kills every extension class.
    At an equality step the coprime argument needs different ranks and a
    coprime (rank, degree) pair on the higher-rank side; any other equality
    is reported as inconclusive.
    """
    shift = 2 - 2 * ctx.genus
    mu = data.slopes
    equal_steps = []
    for i in range(data.s - 1):
        if mu[i] + shift > mu[i + 1]:
            continue
        if mu[i] + shift == mu[i + 1]:
            equal_steps.append(i)
            continue
        return SplittingVerdict.Inconclusive
    if not equal_steps:
        return SplittingVerdict.SplitsForAll
    for i in equal_steps:
        (ri, di), (rj, dj) = data.blocks[i], data.blocks[i + 1]
        if ri == rj:
            return SplittingVerdict.Inconclusive
        rh, dh = (ri, di) if ri > rj else (rj, dj)
        if gcd(rh, dh) != 1:
            return SplittingVerdict.Inconclusive
    return SplittingVerdict.SplitsViaCoprimeCase


def ell_indices(ctx: CurveContext, data: HNData):
    """Return ``(ell1, ell2)``.

    ``ell2`` is the last block whose twist by the log tangent bundle still
    reaches the bottom slope, so Phi(E) lies in F_ell2 (x) T. ``ell1`` is the
    first block whose slope exceeds mu_ell2 + gamma.
    """
    if not necessary_condition(ctx, data):
        raise NecessaryConditionFails()
    mu, gamma = data.slopes, ctx.gamma
    ell2 = max(i for i in range(1, data.s + 1) if mu[i - 1] + gamma >= mu[-1])
    ell1 = min(j for j in range(1, data.s + 1) if mu[ell2 - 1] + gamma < mu[j - 1])
    return ell1, ell2


class Rank3Case(enum.Enum):
    A_PhiVanishesOnF2 = "A_PhiVanishesOnF2"
    B_KernelContainsF2Candidate = "B_KernelContainsF2Candidate"
    B_RankOneImage = "B_RankOneImage"
    B_RankTwoImage = "B_RankTwoImage"


_B_CASES = frozenset({
    Rank3Case.B_KernelContainsF2Candidate,
    Rank3Case.B_RankOneImage,
    Rank3Case.B_RankTwoImage,
})


@dataclass(frozen=True)
class Rank3Branch:
    delta: Fraction
    branch: str
    cases: frozenset

    @property
    def phi_vanishes_on_f2(self) -> bool:
        return self.branch == "A"


def rank3_branch(deg_f1: int, deg_a1: int, deg_a2: int, mu_plus_td) -> Rank3Branch:
    """Classify a rank 3, length 3 profile by delta = deg A1 - (deg F1 + mu_+(T)).

    Only the A/B split is decided. Which B sub-case occurs depends on the rank
    of the image of Phi, so all three stay attached as candidates.
    """
    mu_plus_td = as_rational(mu_plus_td)
    if not deg_f1 > deg_a1 > deg_a2:
        raise OrderViolation(f"need deg F1 > deg A1 > deg A2, got {deg_f1}, {deg_a1}, {deg_a2}")
    if mu_plus_td >= 0:
        raise GammaNonNegative(mu_plus_td)
    delta = deg_a1 - (deg_f1 + mu_plus_td)
    if delta > 0:
        return Rank3Branch(delta, "A", frozenset({Rank3Case.A_PhiVanishesOnF2}))
    return Rank3Branch(delta, "B", _B_CASES)


def euler_char(rank: int, degree: int, genus: int) -> int:
    """Riemann-Roch: chi = d + r(1 - g)."""
    return degree + rank * (1 - genus)
