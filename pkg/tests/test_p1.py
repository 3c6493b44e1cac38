import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohiggs import errors, p1
from cohiggs.hn import CurveContext, necessary_condition, nilpotency_bound
from cohiggs.p1 import (
    CoHiggsFieldP1,
    SplittingType,
    compose,
    decompose_pm,
    delta_dimension,
    generic_rank,
    hom_basis,
    invariant_subbundle_check,
    iterate,
    nilpotency_index,
    random_field,
)
from cohiggs.polys import HomogPoly

import oracles
from strategies import gammas, split_types

A03 = SplittingType.from_twists([0, -3])
A10M1 = SplittingType.from_twists([1, 0, -1])


def superdiagonal(c=2, c2=3):
    return CoHiggsFieldP1.from_entries(A10M1, -1, {(1, 2): [c], (2, 3): [c2]})


# ---------------------------------------------------------------- forms

def test_homog_poly_basics():
    f = HomogPoly(2, [1, 0, "1/2"])
    assert f(2, 1) == Fraction(9, 2)
    assert str(f) == "1*x^2 + 1/2*y^2"
    g = HomogPoly.monomial(1, 1, 3)
    assert (f * g).degree == 3 and (f * g).coefficients == (0, 3, 0, Fraction(3, 2))
    assert HomogPoly.zero(-5).degree == -1 and HomogPoly.zero(-1).coefficients == ()
    assert (f * HomogPoly.zero(-1)).is_zero()
    with pytest.raises(ValueError):
        HomogPoly(2, [1, 2])
    with pytest.raises(ValueError):
        f + g


def test_splitting_type():
    s = SplittingType.from_twists([-1, 2, 2, 0])
    assert s.blocks == ((2, 2), (0, 1), (-1, 1))
    assert s.twists == (2, 2, 0, -1) and s.rank == 4 and s.degree == 3 and s.s == 3
    assert SplittingType.from_hn(s.to_hn()) == s
    assert s.block_of(2) == 1 and s.block_of(4) == 3
    with pytest.raises(errors.ValidationError):
        SplittingType(((0, 1), (1, 1)))


# ------------------------------------------------------------ dimension

def test_delta_examples():
    assert delta_dimension(A03, -2) == 2
    assert delta_dimension(SplittingType.from_twists([0, 0]), -2) == 0
    assert delta_dimension(SplittingType.from_twists([2, 0, -1]), -1) == 6


def test_hom_basis_examples():
    basis = hom_basis(A03, -2)
    assert [str(b.entry(1, 2)) for b in basis] == ["1*x", "1*y"]
    assert hom_basis(SplittingType.from_twists([0, 0]), -2) == []
    (only,) = hom_basis(SplittingType.from_twists([1, 0]), -1)
    assert list(only.nonzero_entries()) == [(1, 2)] and only.entry(1, 2).degree == 0


def test_multiplicity_weighting():
    # O(0)^2 + O(-2)^3, gamma = -1: 2 * 3 blocks of H^0(O(1)) -> 12, unweighted sum gives 2
    s = SplittingType(((0, 2), (-2, 3)))
    assert delta_dimension(s, -1) == 12 == len(hom_basis(s, -1)) == oracles.monomial_count(s.twists, -1)


# --------------------------------------------------------------- fields

def test_field_validation():
    with pytest.raises(errors.MalformedField):
        CoHiggsFieldP1.from_entries(A03, -2, {(1, 2): [1, 0, 0]})
    with pytest.raises(errors.MalformedField):
        CoHiggsFieldP1.from_entries(A03, -2, {(2, 1): [1]})
    with pytest.raises(errors.MalformedField):
        CoHiggsFieldP1.from_entries(A03, -2, {(3, 1): [1]})
    with pytest.raises(errors.ValidationError):
        CoHiggsFieldP1.zero(A03, 1)
    f = CoHiggsFieldP1.from_entries(A03, -2, {(1, 2): HomogPoly(1, [1, 0])})
    assert f == CoHiggsFieldP1.from_payload(A03, -2, [[[], ["1", "0"]], [[], []]])
    assert hash(f) == hash(CoHiggsFieldP1.from_entries(A03, -2, {(1, 2): [1, 0]}))


def test_iterate_examples():
    phi = superdiagonal(2, 3)
    assert iterate(phi, 1) is phi
    sq = iterate(phi, 2)
    assert sq.level == 2 and sq.shift == -2
    assert list(sq.nonzero_entries()) == [(1, 3)] and sq.entry(1, 3).coefficients == (6,)
    zero = CoHiggsFieldP1.zero(A10M1, -1)
    assert all(iterate(zero, i).is_zero() for i in range(1, 5))


def test_nilpotency_examples():
    assert nilpotency_index(CoHiggsFieldP1.zero(A10M1, -1)) == 1
    assert nilpotency_index(superdiagonal()) == 3
    assert nilpotency_index(CoHiggsFieldP1.from_entries(A03, -2, {(1, 2): [1, 0]})) == 2
    with pytest.raises(errors.NotNilpotentWithin):
        nilpotency_index(superdiagonal(), cap=2)


def test_generic_rank_examples():
    assert generic_rank(CoHiggsFieldP1.zero(A10M1, -1)) == 0
    assert generic_rank(superdiagonal()) == 2
    for b in hom_basis(SplittingType.from_twists([2, 0, -1]), -1):
        assert generic_rank(b) == 1


def test_generic_rank_needs_good_point():
    # x*y vanishes at both x = 0 and y = 0 but the generic rank is 1
    s = SplittingType.from_twists([0, -4])
    f = CoHiggsFieldP1.from_entries(s, -2, {(1, 2): [0, 1, 0]})
    assert generic_rank(f) == 1


def test_generic_rank_cancelling_minor():
    # 2x2 block with determinant x^2 - x^2 = 0 identically
    s = SplittingType.from_twists([1, 1, -1, -1])
    f = CoHiggsFieldP1.from_entries(s, -1, {(1, 3): [1, 0], (1, 4): [1, 0], (2, 3): [1, 0], (2, 4): [1, 0]})
    assert generic_rank(f) == 1 == oracles.generic_rank_sympy(f)


def test_decompose_examples():
    assert decompose_pm(A03, -2) == (SplittingType(((0, 1),)), SplittingType(((-3, 1),)))
    assert decompose_pm(SplittingType.from_twists([0, 0]), -1) == (SplittingType(((0, 2),)), None)
    plus, minus = decompose_pm(SplittingType.from_twists([0, -1]), -1)
    assert plus.twists == (0,) and minus.twists == (-1,)


def test_invariant_subbundle_examples():
    zero = CoHiggsFieldP1.zero(A03, -2)
    assert invariant_subbundle_check(zero, {1}) and invariant_subbundle_check(zero, {2})
    f = CoHiggsFieldP1.from_entries(A03, -2, {(1, 2): [1, 0]})
    assert invariant_subbundle_check(f, {1})
    assert not invariant_subbundle_check(f, {2})
    with pytest.raises(ValueError):
        invariant_subbundle_check(f, {1, 2})


def test_no_wedge_target():
    # on a curve the wedge square of T_D vanishes, so the library has no
    # operation producing Phi ^ Phi; the only self-composition is Phi^(2)
    assert not any("wedge" in name for name in dir(p1))
    phi = superdiagonal()
    assert compose(phi, phi) == iterate(phi, 2)


# ------------------------------------------------------------- properties

@settings(max_examples=150, deadline=None)
@given(split_types(max_rank=5, lo=-6, hi=6), gammas)
def test_basis_size_matches_formula_and_count(split, gamma):
    basis = hom_basis(split, gamma)
    assert len(basis) == delta_dimension(split, gamma) == oracles.monomial_count(split.twists, gamma)
    assert len(set(basis)) == len(basis)


@settings(max_examples=100, deadline=None)
@given(split_types(), gammas, st.integers(0, 10**6))
def test_nilpotency_bounds(split, gamma, seed):
    phi = random_field(split, gamma, random.Random(seed))
    idx = nilpotency_index(phi)
    assert idx <= split.s
    ctx = CurveContext(0, 2 - gamma)
    data = split.to_hn()
    if necessary_condition(ctx, data):
        e = nilpotency_bound(ctx, data)
        assert idx <= e + 1
        assert iterate(phi, e + 1).is_zero()
    else:
        assert idx == 1


@settings(max_examples=60, deadline=None)
@given(split_types(), gammas, st.integers(0, 10**6), st.integers(1, 4))
def test_iterate_degrees_and_associativity(split, gamma, seed, i):
    phi = random_field(split, gamma, random.Random(seed))
    it = iterate(phi, i)
    a = split.twists
    for p in range(1, split.rank + 1):
        for q in range(1, split.rank + 1):
            e = it.entry(p, q)
            assert e.degree == max(a[p - 1] + i * gamma - a[q - 1], -1)
    assert compose(phi, it) == iterate(phi, i + 1) == compose(it, phi)


@settings(max_examples=80, deadline=None)
@given(split_types(max_rank=5, lo=-6, hi=6), gammas)
def test_basis_never_reads_from_e_plus(split, gamma):
    plus, _ = decompose_pm(split, gamma)
    assert plus is not None
    for f in hom_basis(split, gamma):
        assert all(q > plus.rank for _, q in f.nonzero_entries())


@settings(max_examples=40, deadline=None)
@given(split_types(max_rank=4, lo=-3, hi=3), gammas, st.integers(0, 10**6))
def test_exact_against_sympy(split, gamma, seed):
    rng = random.Random(seed)
    phi = random_field(split, gamma, rng)
    # sparsify so that low ranks show up too
    keep = {pq for pq in phi.nonzero_entries() if rng.random() < 0.5}
    phi = CoHiggsFieldP1.from_entries(split, gamma, {pq: phi.entry(*pq) for pq in keep})
    assert generic_rank(phi) == oracles.generic_rank_sympy(phi)
    assert nilpotency_index(phi) == oracles.nilpotency_index_sympy(phi, split.rank + 1)


@settings(max_examples=40, deadline=None)
@given(split_types(max_rank=4, lo=-3, hi=3), gammas, st.integers(0, 10**6))
def test_rank_at_most_any_evaluation_bound(split, gamma, seed):
    from cohiggs.linalg import rank_exact

    phi = random_field(split, gamma, random.Random(seed))
    g = generic_rank(phi)
    for t in range(-3, 4):
        assert rank_exact(phi.evaluate(t)) <= g
