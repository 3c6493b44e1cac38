import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cohiggs import errors
from cohiggs.endo import (
    commutant,
    commutant_dimension,
    commutant_dimensions,
    end_dim,
    is_simple_pair,
    nonsimplicity_certificate,
)
from cohiggs.hn import CurveContext, validate_hn
from cohiggs.p1 import CoHiggsFieldP1, Endomorphism, SplittingType, hom_basis, random_field

import oracles
from strategies import gammas, split_types


def tw(*a):
    return SplittingType.from_twists(a)


def test_end_dim_examples():
    assert end_dim(tw(7)) == 1
    assert end_dim(tw(1, 0)) == 4
    assert end_dim(tw(0, -3)) == 6


def test_commutant_examples():
    s = tw(0, -3)
    zero = CoHiggsFieldP1.zero(s, -2)
    assert commutant(zero).dimension == 6
    phi = CoHiggsFieldP1.from_entries(s, -2, {(1, 2): [1, 0]})  # the form x
    space = commutant(phi)
    assert space.dimension == 5 and space.contains_identity
    assert sorted(space.flags) == ["scalar"] + ["strictly-triangular"] * 4
    phi3 = CoHiggsFieldP1.from_entries(tw(1, 0, -1), -1, {(1, 2): [2], (2, 3): [-5]})
    assert commutant(phi3).dimension == 6 >= 2


def test_simple_pair_examples():
    assert not is_simple_pair(CoHiggsFieldP1.zero(tw(1, 0), -1))
    assert not is_simple_pair(CoHiggsFieldP1.from_entries(tw(0, -3), -2, {(1, 2): [1, 0]}))
    assert is_simple_pair(CoHiggsFieldP1.zero(tw(4), -1))


def test_certificate_examples():
    assert nonsimplicity_certificate(CurveContext(2, 0), validate_hn([(1, 0), (1, -2)]))
    assert nonsimplicity_certificate(CurveContext(0, 4), validate_hn([(1, 0), (1, -3)]))
    assert not nonsimplicity_certificate(CurveContext(0, 3), validate_hn([(1, 0), (1, -1)]))
    with pytest.raises(errors.NecessaryConditionFails):
        nonsimplicity_certificate(CurveContext(2, 0), validate_hn([(1, 0), (1, -1)]))


def test_boundary_case_checked_directly():
    # certificate withheld, yet the commutant is still computable: O(0)+O(-1), Phi = 1
    # commutes with the scalars and with both upper-corner maps x, y
    phi = CoHiggsFieldP1.from_entries(tw(0, -1), -1, {(1, 2): [1]})
    assert commutant(phi).dimension == 3


def test_three_routes_agree_on_fixed_cases():
    rng = random.Random(3)
    for twists in [(2, 1, 0, -2), (1, 1, 0, 0), (3, 0, 0, -1, -4), (0, -2, -2)]:
        s = SplittingType.from_twists(twists)
        for gamma in (-1, -2):
            fields = [random_field(s, gamma, rng) for _ in range(3)]
            exact = [commutant(f).dimension for f in fields]
            assert list(commutant_dimensions(fields)) == exact
            assert list(commutant_dimensions(fields, backend="numpy")) == exact
            if s.rank <= 3:
                assert [oracles.commutant_dim_sympy(f) for f in fields] == exact


@settings(max_examples=40, deadline=None)
@given(split_types(max_rank=3, lo=-3, hi=3), gammas, st.integers(0, 10**6))
def test_commutant_against_sympy(split, gamma, seed):
    phi = random_field(split, gamma, random.Random(seed))
    assert commutant(phi).dimension == oracles.commutant_dim_sympy(phi)


@settings(max_examples=60, deadline=None)
@given(split_types(max_rank=4), gammas, st.integers(0, 10**6))
def test_identity_always_commutes(split, gamma, seed):
    space = commutant(random_field(split, gamma, random.Random(seed)))
    assert space.contains_identity
    assert space.dimension == commutant_dimension(random_field(split, gamma, random.Random(seed)))


@settings(max_examples=60, deadline=None)
@given(split_types(max_rank=4), gammas, st.integers(0, 10**6),
       st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(lambda q: q != 0))
def test_scaling_invariance(split, gamma, seed, c):
    phi = random_field(split, gamma, random.Random(seed))
    assert commutant(phi.scaled(c)).dimension == commutant(phi).dimension
    assert commutant_dimension(phi.scaled(c)) == commutant_dimension(phi)


def _block_change(split, rng):
    """Random invertible constant block-diagonal automorphism and its inverse."""
    r = split.rank
    while True:
        m = sp.zeros(r, r)
        start = 0
        for _, mult in split.blocks:
            for i in range(mult):
                for j in range(mult):
                    m[start + i, start + j] = rng.randint(-3, 3)
            start += mult
        if m.det() != 0:
            break
    inv = m.inv()

    def endo(mat):
        rows = []
        a = split.twists
        for p in range(r):
            row = []
            for q in range(r):
                d = a[p] - a[q]
                if d < 0:
                    row.append(None)
                else:
                    v = mat[p, q] if a[p] == a[q] else 0
                    row.append([Fraction(int(sp.fraction(v)[0]), int(sp.fraction(v)[1]))] + [0] * d)
            rows.append(row)
        return Endomorphism(split, rows)

    return endo(m), endo(inv)


@settings(max_examples=40, deadline=None)
@given(split_types(max_rank=4, lo=-3, hi=3), gammas, st.integers(0, 10**6))
def test_conjugation_invariance(split, gamma, seed):
    rng = random.Random(seed)
    phi = random_field(split, gamma, rng)
    f, finv = _block_change(split, rng)
    inner = CoHiggsFieldP1._make(split, gamma, 1, phi.compose_after(f))
    conj = CoHiggsFieldP1._make(split, gamma, 1, finv.compose_after(inner))
    assert commutant(conj).dimension == commutant(phi).dimension


@settings(max_examples=60, deadline=None)
@given(split_types(max_rank=4, lo=-4, hi=4), gammas)
def test_nonsimplicity_shadow_sampled(split, gamma):
    if split.s < 2 or not split.blocks[-1][0] < split.blocks[0][0] - 1:
        return
    for phi in hom_basis(split, gamma):
        assert commutant_dimension(phi) >= 2
