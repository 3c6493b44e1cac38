"""Binary forms with exact rational coefficients.

A section of O(d) on P1 is a homogeneous form of degree d in x, y. It is
stored as the tuple of its d + 1 coefficients in descending powers of x:
``(c_0, ..., c_d)`` means ``sum c_j x^(d-j) y^j``. Degree -1 is the zero
space and carries the empty tuple. Multiplication is a convolution over the
y-exponent, so degrees add with no further bookkeeping.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hn import as_rational, format_rational

_ZERO = Fraction(0)


@lru_cache(maxsize=None)
def zero_coeffs(degree: int) -> tuple:
    if degree < 0:
        return ()
    return (_ZERO,) * (degree + 1)


def is_zero(coeffs) -> bool:
    return not any(coeffs)


def mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return tuple(out)


def add_into(acc: list, b: tuple) -> None:
    for j, bj in enumerate(b):
        if bj:
            acc[j] += bj


def scale(a: tuple, c) -> tuple:
    return tuple(c * x for x in a)


def evaluate(coeffs: tuple, x, y=1):
    d = len(coeffs) - 1
    return sum(c * x ** (d - j) * y ** j for j, c in enumerate(coeffs) if c)


@dataclass(frozen=True)
class HomogPoly:
    """A binary form of fixed degree; the zero form keeps its degree."""

    degree: int
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coefficients)
        if self.degree < -1:
            raise ValueError("degree must be >= -1")
        if len(coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} form needs {self.degree + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, degree: int) -> "HomogPoly":
        return cls(max(degree, -1), zero_coeffs(degree))

    @classmethod
    def monomial(cls, degree: int, y_power: int, coefficient=1) -> "HomogPoly":
        coeffs = list(zero_coeffs(degree))
        coeffs[y_power] = Fraction(coefficient)
        return cls(degree, tuple(coeffs))

    def is_zero(self) -> bool:
        return is_zero(self.coefficients)

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        if self.degree < 0 or other.degree < 0:
            return HomogPoly.zero(-1)
        return HomogPoly(self.degree + other.degree, mul(self.coefficients, other.coefficients))

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if self.degree != other.degree:
            raise ValueError("can only add forms of equal degree")
        return HomogPoly(self.degree, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __call__(self, x, y=1):
        return evaluate(self.coefficients, x, y)

    def __str__(self):
        if self.degree < 0:
            return "0"
        terms = []
        d = self.degree
        for j, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "*".join(p for p in (_power("x", d - j), _power("y", j)) if p)
            terms.append(format_rational(c) + ("*" + mono if mono else ""))
        return " + ".join(terms) if terms else "0"


def _power(var, e):
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"
