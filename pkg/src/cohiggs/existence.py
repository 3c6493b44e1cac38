"""Existence of nonzero co-Higgs fields, decided from slopes alone."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import ProfileTooShort
from .hn import CurveContext, HNData, ell_indices, necessary_condition, nilpotency_bound


class VerdictKind(enum.Enum):
    NoneForAll = "NoneForAll"
    Mixed = "Mixed"
    AllAdmit = "AllAdmit"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    citation: str
    witness_note: Optional[str] = None


CITE_OBSTRUCTION = "slope obstruction: mu_min > mu_max + gamma"
CITE_P1 = "P1 hom dimension"
CITE_ELLIPTIC_BOUNDARY = "elliptic trichotomy: equality case mu_min = mu_max + gamma"
CITE_ELLIPTIC_ALL = "elliptic trichotomy: mu_min < mu_max + gamma"
CITE_HIGHER_BAND = "genus>=2 trichotomy: boundary band mu_max+gamma+1-g <= mu_min <= mu_max+gamma"
CITE_HIGHER_ALL = "genus>=2 trichotomy: mu_min < mu_max + gamma + 1 - g"

_MIXED_NOTE = ("some bundle with this profile carries a nonzero field (built as an extension "
               "of its graded pieces) and some carries none")


def classify(ctx: CurveContext, data: HNData) -> Verdict:
    """NoneForAll / Mixed / AllAdmit for the profile ``data`` on the curve ``ctx``."""
    if ctx.genus == 0:
        # on P1 the profile pins down the bundle, so the answer is Delta > 0
        from .p1 import SplittingType, delta_dimension

        delta = delta_dimension(SplittingType.from_hn(data), ctx.gamma)
        kind = VerdictKind.AllAdmit if delta > 0 else VerdictKind.NoneForAll
        return Verdict(kind, f"{CITE_P1}: Delta = {delta}")
    mu1, mus, gamma, g = data.slopes[0], data.slopes[-1], ctx.gamma, ctx.genus
    if data.s == 1 or mus > mu1 + gamma:
        return Verdict(VerdictKind.NoneForAll, CITE_OBSTRUCTION)
    if mus < mu1 + gamma + 1 - g:
        return Verdict(VerdictKind.AllAdmit, CITE_ELLIPTIC_ALL if g == 1 else CITE_HIGHER_ALL)
    return Verdict(VerdictKind.Mixed, CITE_ELLIPTIC_BOUNDARY if g == 1 else CITE_HIGHER_BAND, _MIXED_NOTE)


def gcd_vanishing(ctx: CurveContext, data: HNData) -> bool:
    """Coprime extreme blocks of different rank meeting exactly at mu_1 + gamma = mu_s.

    Then F_1 and the last quotient are stable with equal slope after the
    twist, and different ranks rule out any nonzero map between them.
    """
    if data.s < 2:
        raise ProfileTooShort(data.s)
    (r1, d1), (rs, ds) = data.blocks[0], data.blocks[-1]
    return (r1 != rs and gcd(r1, d1) == 1 and gcd(rs, ds) == 1
            and data.slopes[0] + ctx.gamma == data.slopes[-1])


def two_nilpotent_guarantee(ctx: CurveContext, data: HNData) -> bool:
    """True when every field on every bundle with this profile has Phi^(2) = 0."""
    if data.s < 2:
        raise ProfileTooShort(data.s)
    if not necessary_condition(ctx, data):
        return True  # only the zero field
    if data.s == 2 or nilpotency_bound(ctx, data) == 1:
        return True
    ell1, ell2 = ell_indices(ctx, data)
    if ell1 >= ell2:
        return True
    return data.slopes[1] + ctx.gamma < data.slopes[-1]
