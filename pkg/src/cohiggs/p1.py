"""Split bundles on P1 and co-Higgs fields as matrices of binary forms.

A split bundle O(a_1) + ... + O(a_r) (a_1 >= ... >= a_r) is handled through
its flat twist list. A map E -> E(t) is an r x r matrix whose entry (p, q)
sends O(a_q) into O(a_p + t), i.e. a binary form of degree a_p + t - a_q.
Entries with negative prescribed degree are structurally zero and stored as
the empty tuple. Indices in the public API are 1-based.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import polys
from .errors import MalformedField, NotNilpotentWithin, ValidationError
from .hn import HNData, as_rational, validate_hn
from .linalg import rank_exact
from .polys import HomogPoly

_ZERO = Fraction(0)


@dataclass(frozen=True)
class SplittingType:
    """Blocks ``((b_1, r_1), ..., (b_s, r_s))`` with b strictly decreasing."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((int(b), int(r)) for b, r in self.blocks)
        if not blocks:
            raise ValidationError("splitting type needs at least one block")
        for i, (b, r) in enumerate(blocks, start=1):
            if r < 1:
                raise ValidationError(f"block {i} has multiplicity < 1")
            if i > 1 and not blocks[i - 2][0] > b:
                raise ValidationError(f"twists must strictly decrease (block {i})")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_twists(cls, twists) -> "SplittingType":
        counts: dict = {}
        for a in twists:
            counts[int(a)] = counts.get(int(a), 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)))

    @classmethod
    def from_hn(cls, data: HNData) -> "SplittingType":
        blocks = []
        for r, d in data.blocks:
            if d % r:
                raise ValidationError("slopes must be integers to describe a split bundle on P1")
            blocks.append((d // r, r))
        return cls(tuple(blocks))

    @property
    def twists(self) -> tuple:
        return tuple(b for b, r in self.blocks for _ in range(r))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.blocks)

    @property
    def degree(self) -> int:
        return sum(b * r for b, r in self.blocks)

    @property
    def s(self) -> int:
        return len(self.blocks)

    def to_hn(self) -> HNData:
        return validate_hn([(r, b * r) for b, r in self.blocks])

    def block_of(self, p: int) -> int:
        """1-based block index of the 1-based summand p."""
        acc = 0
        for i, (_, r) in enumerate(self.blocks, start=1):
            acc += r
            if p <= acc:
                return i
        raise IndexError(p)

    def __str__(self):
        return " + ".join(f"O({b})^{r}" if r > 1 else f"O({b})" for b, r in self.blocks)


def degree_table(split: SplittingType, shift: int) -> tuple:
    a = split.twists
    return tuple(tuple(ap + shift - aq for aq in a) for ap in a)


def _coerce_entry(value, degree, where):
    if value is None or (isinstance(value, int) and not isinstance(value, bool) and value == 0):
        return polys.zero_coeffs(degree)
    if isinstance(value, HomogPoly):
        if value.degree != degree and not (value.is_zero() and degree < 0):
            raise MalformedField(f"entry {where} must have degree {degree}, got {value.degree}")
        return polys.zero_coeffs(degree) if degree < 0 else value.coefficients
    coeffs = tuple(as_rational(c) for c in value)
    if degree < 0:
        if any(coeffs):
            raise MalformedField(f"entry {where} must vanish (prescribed degree {degree})")
        return ()
    if len(coeffs) != degree + 1:
        raise MalformedField(f"entry {where} needs {degree + 1} coefficients, got {len(coeffs)}")
    return coeffs


class TwistedMatrix:
    """A map E -> E(shift) on a split bundle; value semantics, hashable."""

    __slots__ = ("split", "shift", "entries")

    def __init__(self, split: SplittingType, shift: int, entries):
        r = split.rank
        table = degree_table(split, shift)
        rows = list(entries)
        if len(rows) != r or any(len(row) != r for row in rows):
            raise MalformedField(f"expected a {r}x{r} matrix of forms")
        checked = tuple(
            tuple(_coerce_entry(rows[p][q], table[p][q], (p + 1, q + 1)) for q in range(r))
            for p in range(r)
        )
        self._set(split, shift, checked)

    def _set(self, split, shift, entries):
        object.__setattr__(self, "split", split)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    @classmethod
    def _trusted(cls, split, shift, entries, **extra):
        obj = cls.__new__(cls)
        obj._set(split, shift, entries)
        for k, v in extra.items():
            object.__setattr__(obj, k, v)
        return obj

    @property
    def rank(self) -> int:
        return self.split.rank

    def degree(self, p: int, q: int) -> int:
        a = self.split.twists
        return a[p - 1] + self.shift - a[q - 1]

    def entry(self, p: int, q: int) -> HomogPoly:
        d = self.degree(p, q)
        if d < 0:
            return HomogPoly.zero(-1)
        return HomogPoly(d, self.entries[p - 1][q - 1])

    def is_zero(self) -> bool:
        return not any(any(c) for row in self.entries for c in row)

    def nonzero_entries(self):
        """Yield 1-based (p, q) of the nonzero entries."""
        for p, row in enumerate(self.entries, start=1):
            for q, c in enumerate(row, start=1):
                if any(c):
                    yield p, q

    def compose_after(self, other: "TwistedMatrix") -> tuple:
        """Entries of (self o other) as a matrix product; shift is the sum."""
        if self.split != other.split:
            raise ValueError("maps live on different bundles")
        r = self.rank
        table = degree_table(self.split, self.shift + other.shift)
        A, B = self.entries, other.entries
        out = []
        for p in range(r):
            row = []
            for q in range(r):
                d = table[p][q]
                if d < 0:
                    row.append(())
                    continue
                acc = [_ZERO] * (d + 1)
                for m in range(r):
                    if A[p][m] and B[m][q]:
                        polys.add_into(acc, polys.mul(A[p][m], B[m][q]))
                row.append(tuple(acc))
            out.append(tuple(row))
        return tuple(out)

    def evaluate(self, x, y=1) -> list:
        return [[polys.evaluate(c, x, y) if c else _ZERO for c in row] for row in self.entries]

    def scaled(self, c):
        c = as_rational(c)
        entries = tuple(tuple(polys.scale(e, c) for e in row) for row in self.entries)
        return self._with_entries(entries)

    def _with_entries(self, entries):
        return type(self)._trusted(self.split, self.shift, entries)

    def to_payload(self) -> list:
        """Nested lists of coefficient strings, [] for structural zeros."""
        return [[[_fmt(c) for c in e] for e in row] for row in self.entries]

    def _key(self):
        return (type(self).__name__, self.split, self.shift, self.entries)

    def __eq__(self, other):
        return isinstance(other, TwistedMatrix) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        nz = ", ".join(f"({p},{q}): {self.entry(p, q)}" for p, q in self.nonzero_entries())
        return f"{type(self).__name__}({self.split}, shift={self.shift}, {{{nz}}})"


def _fmt(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ShiftedField(TwistedMatrix):
    """Phi^(i): E -> E(i*gamma)."""

    __slots__ = ("gamma", "level")

    def __init__(self, split, gamma: int, level: int, entries):
        if gamma >= 0:
            raise ValidationError(f"gamma must be negative, got {gamma}")
        if level < 1:
            raise ValueError("level must be positive")
        object.__setattr__(self, "gamma", int(gamma))
        object.__setattr__(self, "level", int(level))
        super().__init__(split, level * gamma, entries)

    @classmethod
    def zero(cls, split, gamma, level=1):
        if gamma >= 0:
            raise ValidationError(f"gamma must be negative, got {gamma}")
        r = split.rank
        table = degree_table(split, level * gamma)
        entries = tuple(tuple(polys.zero_coeffs(table[p][q]) for q in range(r)) for p in range(r))
        return cls._make(split, gamma, level, entries)

    @classmethod
    def _make(cls, split, gamma, level, entries):
        return cls._trusted(split, level * gamma, entries, gamma=gamma, level=level)

    def _with_entries(self, entries):
        return type(self)._make(self.split, self.gamma, self.level, entries)

    def _key(self):
        return ("field", self.split, self.gamma, self.level, self.entries)


class CoHiggsFieldP1(ShiftedField):
    """Phi: E -> E(gamma) on a split bundle over P1."""

    __slots__ = ()

    def __init__(self, split, gamma: int, entries):
        super().__init__(split, gamma, 1, entries)

    @classmethod
    def zero(cls, split, gamma, level=1):
        return super().zero(split, gamma, 1)

    @classmethod
    def _make(cls, split, gamma, level, entries):
        if level != 1:
            return ShiftedField._make(split, gamma, level, entries)
        return cls._trusted(split, gamma, entries, gamma=gamma, level=1)

    @classmethod
    def from_entries(cls, split, gamma, sparse: dict) -> "CoHiggsFieldP1":
        """Build from ``{(p, q): coefficients or HomogPoly}`` with 1-based keys."""
        r = split.rank
        rows = [[None] * r for _ in range(r)]
        for (p, q), value in sparse.items():
            if not (1 <= p <= r and 1 <= q <= r):
                raise MalformedField(f"entry ({p},{q}) outside a {r}x{r} matrix")
            rows[p - 1][q - 1] = value
        return cls(split, gamma, rows)

    @classmethod
    def from_payload(cls, split, gamma, payload) -> "CoHiggsFieldP1":
        r = split.rank
        table = degree_table(split, gamma)
        if not isinstance(payload, (list, tuple)) or len(payload) != r:
            raise MalformedField(f"field must be a {r}x{r} array")
        rows = []
        for p, row in enumerate(payload):
            if not isinstance(row, (list, tuple)) or len(row) != r:
                raise MalformedField(f"row {p + 1} must have {r} entries")
            out = []
            for q, e in enumerate(row):
                if not isinstance(e, (list, tuple)):
                    raise MalformedField(f"entry ({p + 1},{q + 1}) must be a coefficient array")
                if table[p][q] < 0 and len(e) == 0:
                    out.append(None)
                else:
                    out.append(e)
            rows.append(out)
        try:
            return cls(split, gamma, rows)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise MalformedField(str(exc)) from exc


class Endomorphism(TwistedMatrix):
    """f: E -> E, entry (p, q) of degree a_p - a_q."""

    __slots__ = ()

    def __init__(self, split, entries):
        super().__init__(split, 0, entries)

    @classmethod
    def identity(cls, split):
        r = split.rank
        table = degree_table(split, 0)
        rows = []
        for p in range(r):
            row = []
            for q in range(r):
                c = list(polys.zero_coeffs(table[p][q]))
                if p == q:
                    c[0] = Fraction(1)
                row.append(tuple(c))
            rows.append(tuple(row))
        return cls._trusted(split, 0, tuple(rows))

    def is_scalar(self) -> bool:
        """A constant multiple of the identity."""
        r = self.rank
        c0 = self.entries[0][0][0]
        for p in range(r):
            for q in range(r):
                e = self.entries[p][q]
                if p == q:
                    if e[0] != c0 or any(e[1:]):
                        return False
                elif any(e):
                    return False
        return True

    def is_strictly_triangular(self) -> bool:
        """Zero on and below the diagonal (so nilpotent)."""
        return all(p < q for p, q in self.nonzero_entries())


# ---------------------------------------------------------------- counting

def delta_dimension(split: SplittingType, gamma: int) -> int:
    """dim Hom(E, E(gamma)) = sum_{i<j} r_i r_j max(0, gamma + 1 + b_i - b_j)."""
    total = 0
    bl = split.blocks
    for i in range(len(bl)):
        for j in range(i + 1, len(bl)):
            total += bl[i][1] * bl[j][1] * max(0, gamma + 1 + bl[i][0] - bl[j][0])
    return total


def hom_basis(split: SplittingType, gamma: int) -> list:
    """Monomial basis of Hom(E, E(gamma)), ordered by (row, column, power of y)."""
    r = split.rank
    table = degree_table(split, gamma)
    zero = CoHiggsFieldP1.zero(split, gamma)
    out = []
    for p in range(r):
        for q in range(r):
            d = table[p][q]
            for j in range(d + 1):
                rows = [list(row) for row in zero.entries]
                rows[p][q] = HomogPoly.monomial(d, j).coefficients
                out.append(CoHiggsFieldP1._make(split, gamma, 1, tuple(tuple(row) for row in rows)))
    return out


# --------------------------------------------------------------- iteration

def compose(a: ShiftedField, b: ShiftedField) -> ShiftedField:
    """a o b for two iterates of the same field type; levels add."""
    if a.gamma != b.gamma:
        raise ValueError("fields have different gamma")
    return ShiftedField._make(a.split, a.gamma, a.level + b.level, a.compose_after(b))


def iterate(phi: ShiftedField, i: int) -> ShiftedField:
    if i < 1:
        raise ValueError("i must be positive")
    cur = phi
    for _ in range(i - 1):
        cur = compose(phi, cur)
    return cur


def nilpotency_index(phi: ShiftedField, cap: Optional[int] = None) -> int:
    """Least i <= cap with Phi^(i) = 0."""
    if cap is None:
        cap = phi.rank + 1
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if phi.is_zero():
        return 1
    cur = phi
    for i in range(2, cap + 1):
        cur = compose(phi, cur)
        if cur.is_zero():
            return i
    raise NotNilpotentWithin(cap)


# -------------------------------------------------------------------- rank

def generic_rank(phi: TwistedMatrix, seed: int = 0) -> int:
    """Rank over the function field, computed exactly.

    Set y = 1. Every k x k minor is a polynomial in x of degree at most
    k * D (D the largest entry degree), so some point among any k*D + 1
    distinct ones sees the full rank. A few seeded random points usually
    hit the upper bound (nonzero rows/columns) immediately.
    """
    nz = list(phi.nonzero_entries())
    if not nz:
        return 0
    upper = min(len({p for p, _ in nz}), len({q for _, q in nz}))
    maxdeg = max(len(phi.entries[p - 1][q - 1]) - 1 for p, q in nz)
    rng = random.Random(seed)
    best = 0
    tried = set()
    points = [rng.randint(-997, 997) for _ in range(3)] + list(range(phi.rank * maxdeg + 1))
    for t in points:
        if t in tried:
            continue
        tried.add(t)
        best = max(best, rank_exact(phi.evaluate(t)))
        if best == upper:
            break
    return best


# --------------------------------------------------------------- structure

def decompose_pm(split: SplittingType, gamma: int):
    """Return ``(E_plus, E_minus)``; an empty side is ``None``.

    E_plus collects the blocks with b_i > gamma + b_1. No nonzero field
    reads from them, since the whole bundle sits below O(b_1 + gamma) there.
    """
    threshold = gamma + split.blocks[0][0]
    e = sum(1 for b, _ in split.blocks if b > threshold)
    plus = SplittingType(split.blocks[:e]) if e else None
    minus = SplittingType(split.blocks[e:]) if e < split.s else None
    return plus, minus


def invariant_subbundle_check(phi: TwistedMatrix, summands) -> bool:
    """Whether the coordinate subbundle on ``summands`` (1-based) is Phi-invariant."""
    chosen = {int(p) for p in summands}
    r = phi.rank
    if not chosen or len(chosen) >= r or not chosen <= set(range(1, r + 1)):
        raise ValueError("summands must be a non-empty proper subset of 1..r")
    return all(p in chosen for p, q in phi.nonzero_entries() if q in chosen)


# ----------------------------------------------------------------- sampling

def random_field(split: SplittingType, gamma: int, rng: random.Random, bound: int = 3) -> CoHiggsFieldP1:
    """Field with independent integer coefficients uniform in [-bound, bound]."""
    r = split.rank
    table = degree_table(split, gamma)
    rows = tuple(
        tuple(tuple(Fraction(rng.randint(-bound, bound)) for _ in range(table[p][q] + 1)) for q in range(r))
        for p in range(r)
    )
    return CoHiggsFieldP1._make(split, gamma, 1, rows)


def degree_array(split: SplittingType, shift: int) -> np.ndarray:
    return np.array(degree_table(split, shift), dtype=np.int64).reshape(split.rank, split.rank)


def random_field_array(split: SplittingType, gamma: int, n: int, np_rng: np.random.Generator, bound: int = 3):
    """``n`` random fields as an int64 array (n, r, r, L) plus the degree table."""
    degrees = degree_array(split, gamma)
    length = max(int(degrees.max()) + 1, 1)
    r = split.rank
    fields = np_rng.integers(-bound, bound + 1, size=(n, r, r, length), dtype=np.int64)
    mask = np.arange(length)[None, None, :] <= degrees[:, :, None]
    fields *= mask[None]
    return fields, degrees


def field_from_array(split: SplittingType, gamma: int, arr) -> CoHiggsFieldP1:
    table = degree_table(split, gamma)
    r = split.rank
    rows = tuple(
        tuple(tuple(Fraction(int(c)) for c in arr[p, q, :table[p][q] + 1]) if table[p][q] >= 0 else ()
              for q in range(r))
        for p in range(r)
    )
    return CoHiggsFieldP1._make(split, gamma, 1, rows)


def fields_to_array(fields) -> tuple:
    """Stack integral fields of one bundle into the kernel layout."""
    first = fields[0]
    degrees = degree_array(first.split, first.shift)
    length = max(int(degrees.max()) + 1, 1)
    r = first.rank
    out = np.zeros((len(fields), r, r, length), dtype=np.int64)
    for k, f in enumerate(fields):
        for p, q in f.nonzero_entries():
            c = f.entries[p - 1][q - 1]
            if any(x.denominator != 1 for x in c):
                raise ValueError("kernel layout needs integral coefficients")
            out[k, p - 1, q - 1, :len(c)] = [int(x) for x in c]
    return out, degrees
