"""Exact scalar arithmetic in Q(sqrt2, sqrt3), symmetric matrices, and the
Lobachevsky function.

Everything geometric in this package reduces to Gram matrices whose entries
are -cos(pi/m) for m in {2, 3, 4, 6, infinity}.  All of these live in the
real field Q(sqrt2, sqrt3), so we can decide positivity, rank and rationality
questions exactly, with no tolerances.  Floating point enters only where
exactness is impossible (eigenvalue signatures of numeric matrices, volumes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT6 = math.sqrt(6.0)


class ContractViolation(ValueError):
    """A documented precondition was violated."""


@dataclass(frozen=True)
class ExactScalar:
    """An element a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational coefficients.

    The four coefficients determine the element uniquely (1, sqrt2, sqrt3,
    sqrt6 are linearly independent over Q), so equality is literal equality
    of coefficients.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    @staticmethod
    def rational(q) -> "ExactScalar":
        return ExactScalar(Fraction(q))

    def __add__(self, other):
        other = _coerce(other)
        return ExactScalar(self.a + other.a, self.b + other.b,
                           self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3, sqrt3*sqrt6 = 3*sqrt2
        return ExactScalar(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj(self, flip2: bool, flip3: bool) -> "ExactScalar":
        """Galois conjugate sending sqrt2 -> -sqrt2 and/or sqrt3 -> -sqrt3."""
        s2 = -1 if flip2 else 1
        s3 = -1 if flip3 else 1
        return ExactScalar(self.a, s2 * self.b, s3 * self.c, s2 * s3 * self.d)

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
        # Multiply by the three nontrivial conjugates; the product of all four
        # conjugates is the (rational) field norm.
        y = self.conj(True, False) * self.conj(False, True) * self.conj(True, True)
        norm = (self * y).a
        return ExactScalar(y.a / norm, y.b / norm, y.c / norm, y.d / norm)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def is_integer(self) -> bool:
        return self.is_rational() and self.a.denominator == 1

    def sign(self) -> int:
        """Exact sign, via interval refinement of the square roots."""
        if self.is_zero():
            return 0
        # Evaluate with outward rounding: float arithmetic on Fractions is
        # accurate to ~1e-15 relative, and nonzero elements of the field with
        # moderate coefficients stay far from zero; fall back to high
        # precision Fraction bounds when the float value is suspiciously small.
        v = self.to_float()
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d), Fraction(1))
        if abs(v) > 1e-9 * float(scale):
            return 1 if v > 0 else -1
        return _sign_by_fractions(self)

    def to_float(self) -> float:
        return (float(self.a) + float(self.b) * _SQRT2
                + float(self.c) * _SQRT3 + float(self.d) * _SQRT6)

    def __float__(self):
        return self.to_float()

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        parts = []
        for coef, sym in ((self.a, ""), (self.b, "r2"), (self.c, "r3"), (self.d, "r6")):
            if coef:
                parts.append(f"{coef}{('*' + sym) if sym else ''}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    __repr__ = __str__


def _coerce(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(Fraction(x))
    raise TypeError(f"cannot coerce {x!r} into Q(sqrt2, sqrt3)")


def _sign_by_fractions(x: ExactScalar, bits: int = 128) -> int:
    # Rational lower/upper bounds for sqrt(n) from integer square roots.
    def bounds(n):
        m = 1 << bits
        r = math.isqrt(n * m * m)
        return Fraction(r, m), Fraction(r + 1, m)

    lo2, hi2 = bounds(2)
    lo3, hi3 = bounds(3)
    lo6, hi6 = bounds(6)
    lo = self_lo = x.a
    hi = x.a
    for coef, (l, h) in ((x.b, (lo2, hi2)), (x.c, (lo3, hi3)), (x.d, (lo6, hi6))):
        if coef >= 0:
            lo += coef * l
            hi += coef * h
        else:
            lo += coef * h
            hi += coef * l
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0  # genuinely zero would have been caught; treat as zero


ZERO = ExactScalar()
ONE = ExactScalar.rational(1)
HALF = ExactScalar.rational(Fraction(1, 2))
SQRT2_OVER_2 = ExactScalar(b=Fraction(1, 2))
SQRT3_OVER_2 = ExactScalar(c=Fraction(1, 2))

Scalar = Union[ExactScalar, float, int, Fraction]


class SymMatrix:
    """A symmetric matrix with exact or floating entries."""

    def __init__(self, entries: Sequence[Sequence[Scalar]]):
        n = len(entries)
        rows = [list(r) for r in entries]
        for r in rows:
            if len(r) != n:
                raise ContractViolation("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if not _entries_equal(rows[i][j], rows[j][i]):
                    raise ContractViolation("matrix is not symmetric")
        self.n = n
        self.entries = rows
        self.exact = all(
            isinstance(x, (ExactScalar, int, Fraction)) for r in rows for x in r
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def exact_entries(self):
        if not self.exact:
            raise ContractViolation("matrix has floating entries")
        return [[_coerce(x) if not isinstance(x, ExactScalar) else x
                 for x in row] for row in self.entries]

    def submatrix(self, idx: Iterable[int]) -> "SymMatrix":
        idx = list(idx)
        return SymMatrix([[self.entries[i][j] for j in idx] for i in idx])

    def __repr__(self):
        return f"SymMatrix({self.entries!r})"


def _entries_equal(x, y) -> bool:
    if isinstance(x, ExactScalar) or isinstance(y, ExactScalar):
        try:
            return (_coerce(x) - _coerce(y)).is_zero()
        except TypeError:
            return False
    return x == y


def signature(m: SymMatrix, tol: float = 1e-9):
    """Counts of eigenvalues > tol, < -tol and in [-tol, tol]."""
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    w = np.linalg.eigvalsh(m.to_float())
    pos = int(np.sum(w > tol))
    neg = int(np.sum(w < -tol))
    return pos, neg, m.n - pos - neg


def _det_exact(rows) -> ExactScalar:
    """Determinant over Q(sqrt2, sqrt3) by dynamic programming on column sets."""
    n = len(rows)
    if n == 0:
        return ONE
    prev = {0: ONE}
    for i in range(n):
        nxt: dict[int, ExactScalar] = {}
        for used, val in prev.items():
            sign = 1
            for j in range(n):
                bit = 1 << j
                if used & bit:
                    continue
                x = rows[i][j]
                if not x.is_zero():
                    term = val * x if sign > 0 else -(val * x)
                    key = used | bit
                    nxt[key] = nxt.get(key, ZERO) + term
                sign = -sign
        prev = nxt
    return prev.get((1 << n) - 1, ZERO)


def det_exact(m: SymMatrix) -> ExactScalar:
    return _det_exact(m.exact_entries())


def is_positive_definite(m: SymMatrix) -> bool:
    """Exact Sylvester criterion: all leading principal minors positive."""
    rows = m.exact_entries()
    for k in range(1, m.n + 1):
        minor = _det_exact([row[:k] for row in rows[:k]])
        if minor.sign() <= 0:
            return False
    return True


def rank_exact(m: SymMatrix) -> int:
    """Rank over Q(sqrt2, sqrt3) by Gaussian elimination with exact pivots."""
    rows = [row[:] for row in m.exact_entries()]
    n = m.n
    rank = 0
    col = 0
    r = 0
    while r < n and col < n:
        piv = next((i for i in range(r, n) if not rows[i][col].is_zero()), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        for i in range(r + 1, n):
            if not rows[i][col].is_zero():
                f = rows[i][col] * inv
                rows[i] = [rows[i][j] - f * rows[r][j] for j in range(n)]
        rank += 1
        r += 1
        col += 1
    return rank


def is_positive_semidefinite(m: SymMatrix) -> bool:
    """Exact PSD test: every principal minor is >= 0."""
    rows = m.exact_entries()
    n = m.n
    # n stays small (<= #nodes of a diagram), so scanning subsets is fine.
    from itertools import combinations

    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = [[rows[i][j] for j in idx] for i in idx]
            if _det_exact(sub).sign() < 0:
                return False
    return True


def lobachevsky(theta: float, tol: float = 1e-12) -> float:
    """The Lobachevsky function L(t) = 1/2 * sum_{n>=1} sin(2nt)/n^2.

    The series is summed until the Dirichlet-kernel tail bound
    1/((N+1)^2 |sin t|) drops below tol.  Angles too close to a multiple of
    pi (where that bound is useless) are first moved away using the exact
    duplication identity L(t) = L(2t)/2 - L(t + pi/2).
    """
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    return _lob(theta, tol, depth=0)


def _lob(theta: float, tol: float, depth: int) -> float:
    # odd and pi-periodic: reduce to [0, pi)
    t = math.fmod(theta, math.pi)
    if t < 0:
        t += math.pi
    s = math.sin(t)
    if s == 0.0:
        return 0.0
    if abs(s) < 0.1 and depth < 40:
        half = tol / 3.0
        return _lob(2 * t, half, depth + 1) / 2.0 - _lob(t + math.pi / 2, half, depth + 1)
    n_terms = int(math.sqrt(1.0 / (tol * abs(s)))) + 1
    total = 0.0
    block = 1_000_000
    start = 1
    while start <= n_terms:
        stop = min(start + block - 1, n_terms)
        n = np.arange(start, stop + 1, dtype=float)
        total += float(np.sum(np.sin(2.0 * t * n) / (n * n)))
        start = stop + 1
    return 0.5 * total


#: Volume of the ideal right-angled octahedron, 8 * L(pi/4).
def octahedron_volume(tol: float = 1e-12) -> float:
    return 8.0 * lobachevsky(math.pi / 4, tol)
