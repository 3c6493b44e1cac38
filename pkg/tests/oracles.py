"""Independent reference computations used only by the tests.

They share no code with the package beyond the input types: sympy does the
polynomial and linear algebra, and counts come from explicit enumeration.
"""
import itertools

import sympy as sp

X, Y = sp.symbols("x y")


def splits(rmax, lo, hi):
    """Every flat twist list a_1 >= ... >= a_r with 1 <= r <= rmax, twists in [lo, hi]."""
    for r in range(1, rmax + 1):
        yield from itertools.combinations_with_replacement(range(hi, lo - 1, -1), r)


def monomial_count(twists, gamma):
    """dim Hom(E, E(gamma)) by listing monomials x^i y^j of each entry."""
    n = 0
    for ap in twists:
        for aq in twists:
            d = ap + gamma - aq
            n += sum(1 for i in range(d + 1) for j in range(d + 1) if i + j == d)
    return n


def to_sympy(field):
    r = field.rank
    m = sp.zeros(r, r)
    for p in range(r):
        for q in range(r):
            c = field.entries[p][q]
            d = len(c) - 1
            m[p, q] = sum(sp.Rational(v.numerator, v.denominator) * X ** (d - j) * Y ** j for j, v in enumerate(c))
    return m


def nilpotency_index_sympy(field, cap):
    m = to_sympy(field)
    cur = m
    for i in range(1, cap + 1):
        if cur.expand() == sp.zeros(*m.shape):
            return i
        cur = (m * cur).expand()
    return None


def generic_rank_sympy(field):
    return to_sympy(field).rank(simplify=True)


def commutant_dim_sympy(field):
    """dim {F : Phi F = F Phi} with F a matrix of generic forms of degree a_p - a_q."""
    a = field.split.twists
    r = len(a)
    unknowns = []
    F = sp.zeros(r, r)
    for p in range(r):
        for q in range(r):
            d = a[p] - a[q]
            if d < 0:
                continue
            cs = sp.symbols(f"f_{p}_{q}_0:{d + 1}")
            unknowns.extend(cs)
            F[p, q] = sum(c * X ** (d - j) * Y ** j for j, c in enumerate(cs))
    phi = to_sympy(field)
    residual = (phi * F - F * phi).expand()
    eqs = []
    for e in residual:
        if e != 0:
            eqs.extend(sp.Poly(e, X, Y).coeffs())
    if not eqs:
        return len(unknowns)
    mat = sp.Matrix([[sp.diff(eq, u) for u in unknowns] for eq in eqs])
    return len(unknowns) - mat.rank()


def subsheaf_delta_bruteforce(twists, k):
    """delta_k on P1 as the largest degree of a sum of k of the summands.

    Every k-subset of summands is tried; no sorting shortcut is used.
    """
    return max(sum(sub) for sub in itertools.combinations(twists, k))
