"""Exact arithmetic in Q(sqrt 2).

Values ``u + v*sqrt(2)`` with rational ``u, v``.  Signs are decided by
comparing ``u**2`` against ``2*v**2``, so every comparison is exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "ScalarQ2"]


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings.  Floats are rejected."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


class ScalarQ2:
    __slots__ = ("u", "v")

    def __init__(self, u=0, v=0):
        self.u = as_fraction(u)
        self.v = as_fraction(v)

    @classmethod
    def coerce(cls, value) -> "ScalarQ2":
        if isinstance(value, ScalarQ2):
            return value
        return cls(value, 0)

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def sign(self) -> int:
        u, v = self.u, self.v
        su = (u > 0) - (u < 0)
        sv = (v > 0) - (v < 0)
        if su >= 0 and sv >= 0:
            return 1 if (su or sv) else 0
        if su <= 0 and sv <= 0:
            return -1
        # opposite signs: the larger magnitude wins, |u| vs |v|*sqrt(2)
        lhs, rhs = u * u, 2 * v * v
        if lhs == rhs:
            return 0  # unreachable for rationals, sqrt(2) is irrational
        return su if lhs > rhs else sv

    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return ScalarQ2(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        return ScalarQ2(-self.u, -self.v)

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return ScalarQ2(self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return ScalarQ2(
            self.u * other.u + 2 * self.v * other.v,
            self.u * other.v + self.v * other.u,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ScalarQ2":
        return ScalarQ2(self.u, -self.v)

    def norm(self) -> Fraction:
        """Field norm ``u**2 - 2*v**2``; zero only for zero."""
        return self.u * self.u - 2 * self.v * self.v

    def __truediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * other.conjugate()
        return ScalarQ2(num.u / n, num.v / n)

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ScalarQ2(1)
        for _ in range(k):
            out = out * self
        return out

    def _cmp(self, other) -> int:
        other = _maybe(other)
        if other is None:
            raise TypeError(f"cannot compare ScalarQ2 with {other!r}")
        return (self - other).sign()

    def __eq__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.u) + float(self.v) * math.sqrt(2)

    def __floor__(self) -> int:
        if self.v == 0:
            return math.floor(self.u)
        k = math.floor(float(self))
        # float is off by at most one near integers; settle exactly
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def __repr__(self):
        return f"ScalarQ2({self.u}, {self.v})"

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        return f"{self.u}+{self.v}*sqrt2"

    def to_json(self):
        if self.v == 0:
            return fraction_to_json(self.u)
        return {"u": fraction_to_json(self.u), "v": fraction_to_json(self.v)}

    @classmethod
    def from_json(cls, data) -> "ScalarQ2":
        if isinstance(data, dict):
            return cls(data.get("u", 0), data.get("v", 0))
        return cls(data)


SQRT2 = ScalarQ2(0, 1)


def _maybe(value) -> ScalarQ2 | None:
    if isinstance(value, ScalarQ2):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ScalarQ2(value)
    return None


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction, ScalarQ2)) and not isinstance(value, bool)


def fraction_to_json(q) -> int | str:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
