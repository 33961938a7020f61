"""Exact arithmetic in Q(sqrt2, sqrt3, sqrt5).

An element is a rational combination of the eight square roots
sqrt(d), d | 30 squarefree. That field contains cos(pi/m) for
m in {2, 3, 4, 5, 6}, which is all the canonical representation needs for
those labels. Signs are decided exactly by peeling off one square root at a
time: the sign of A + B*sqrt(p) follows from the signs of A, B and
A^2 - p*B^2, all of which live in the smaller field.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
import math

PRIMES = (2, 3, 5)
DIM = 1 << len(PRIMES)

_RADICANDS = tuple(math.prod(p for k, p in enumerate(PRIMES) if mask >> k & 1) for mask in range(DIM))
_ZEROS = (Fraction(0),) * DIM


def _mul(a: tuple, b: tuple) -> list:
    n = len(a)
    out = [Fraction(0)] * n
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        for j in range(n):
            bj = b[j]
            if not bj:
                continue
            common = i & j
            out[i ^ j] += ai * bj * _RADICANDS[common] if common else ai * bj
    return out


def _sign(c: tuple) -> int:
    n = len(c)
    if n == 1:
        q = c[0]
        return (q > 0) - (q < 0)
    half = n // 2
    p = PRIMES[half.bit_length() - 1]
    a, b = c[:half], c[half:]
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    a2 = _mul(a, a)
    b2 = _mul(b, b)
    return sa * _sign(tuple(x - p * y for x, y in zip(a2, b2)))


@total_ordering
class Scalar:
    __slots__ = ("c",)

    def __init__(self, coeffs=_ZEROS):
        self.c = tuple(Fraction(x) for x in coeffs) if coeffs is not _ZEROS else _ZEROS
        if len(self.c) != DIM:
            raise ValueError(f"expected {DIM} coefficients")

    @classmethod
    def _raw(cls, coeffs: tuple) -> Scalar:
        obj = cls.__new__(cls)
        obj.c = coeffs
        return obj

    @classmethod
    def rational(cls, q) -> Scalar:
        return cls._raw((Fraction(q),) + _ZEROS[1:])

    @classmethod
    def sqrt(cls, d: int, coef=1) -> Scalar:
        """coef * sqrt(d) for squarefree d dividing 30."""
        mask = _RADICANDS.index(d)
        c = list(_ZEROS)
        c[mask] = Fraction(coef)
        return cls._raw(tuple(c))

    @staticmethod
    def _coerce(other) -> Scalar | None:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(tuple(x - y for x, y in zip(self.c, o.c)))

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return Scalar._raw(tuple(-x for x in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(tuple(x * other for x in self.c))
        if not isinstance(other, Scalar):
            return NotImplemented
        # Rational fast path: most corpus labels give rational forms.
        if not any(self.c[1:]):
            return other * self.c[0]
        if not any(other.c[1:]):
            return self * other.c[0]
        return Scalar._raw(tuple(_mul(self.c, other.c)))

    __rmul__ = __mul__

    def sign(self) -> int:
        if not any(self.c[1:]):
            q = self.c[0]
            return (q > 0) - (q < 0)
        return _sign(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __float__(self):
        return float(sum(float(q) * math.sqrt(d) for q, d in zip(self.c, _RADICANDS)))

    def __str__(self):
        terms = []
        for q, d in zip(self.c, _RADICANDS):
            if not q:
                continue
            if d == 1:
                terms.append(str(q))
            elif q == 1:
                terms.append(f"√{d}")
            elif q == -1:
                terms.append(f"-√{d}")
            else:
                terms.append(f"{q}√{d}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar.rational(0)
ONE = Scalar.rational(1)

# cos(pi/m) for the exactly supported finite labels
COS_PI_OVER = {
    2: ZERO,
    3: Scalar.rational(Fraction(1, 2)),
    4: Scalar.sqrt(2, Fraction(1, 2)),
    5: Scalar.rational(Fraction(1, 4)) + Scalar.sqrt(5, Fraction(1, 4)),
    6: Scalar.sqrt(3, Fraction(1, 2)),
}
