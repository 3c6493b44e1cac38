"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from cohiggs.hn import CurveContext, validate_hn
from cohiggs.p1 import SplittingType


@st.composite
def hn_blocks(draw, max_s=4, max_rank=4, integral=False):
    """Valid (rank, degree) lists with strictly decreasing slopes."""
    s = draw(st.integers(1, max_s))
    blocks = []
    for i in range(s):
        r = draw(st.integers(1, max_rank))
        if integral:
            if i == 0:
                b = draw(st.integers(-6, 6))
            else:
                prev_r, prev_d = blocks[-1]
                b = prev_d // prev_r - draw(st.integers(1, 4))
            blocks.append((r, b * r))
            continue
        if i == 0:
            d = draw(st.integers(-12, 12))
        else:
            prev_r, prev_d = blocks[-1]
            # largest d with d / r < prev_d / prev_r
            top = -((-prev_d * r) // prev_r) - 1
            d = top - draw(st.integers(0, 6))
        blocks.append((r, d))
    return blocks


@st.composite
def contexts(draw, genus=None):
    g = draw(st.integers(0, 4)) if genus is None else genus
    lo = 0 if g >= 2 else (1 if g == 1 else 3)
    m = draw(st.integers(lo, lo + 3))
    return CurveContext(g, m)


@st.composite
def profiles(draw, genus=None):
    ctx = draw(contexts(genus))
    blocks = draw(hn_blocks(integral=ctx.genus == 0))
    return ctx, validate_hn(blocks, ctx)


@st.composite
def split_types(draw, max_rank=4, lo=-5, hi=5):
    r = draw(st.integers(1, max_rank))
    twists = draw(st.lists(st.integers(lo, hi), min_size=r, max_size=r))
    return SplittingType.from_twists(twists)


gammas = st.integers(-4, -1)
