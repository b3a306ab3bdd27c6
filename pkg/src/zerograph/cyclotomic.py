"""Exact arithmetic in Q(zeta) with zeta = exp(i*pi/4)."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Union

__all__ = ["Cyc8", "ZETA", "ZETA_BAR", "I"]

Number = Union[int, Fraction, "Cyc8"]


def _num(x) -> int | Fraction:
    # integral coordinates stay plain ints; Fraction arithmetic is far slower
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Cyc8:
    """Element c0 + c1*zeta + c2*zeta**2 + c3*zeta**3 with rational coordinates.

    zeta**4 == -1, so i == zeta**2 and (1 + i)/sqrt(2) == zeta.
    """

    __slots__ = ("_c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self._c = tuple(_num(c) for c in (c0, c1, c2, c3))

    @classmethod
    def _raw(cls, coords) -> Cyc8:
        obj = object.__new__(cls)
        obj._c = tuple(
            c.numerator if type(c) is Fraction and c.denominator == 1 else c for c in coords
        )
        return obj

    @classmethod
    def coerce(cls, x: Number) -> Cyc8:
        if isinstance(x, Cyc8):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls._raw((x, 0, 0, 0))
        raise TypeError(f"cannot coerce {x!r} to Cyc8")

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(c) for c in self._c)

    def __repr__(self) -> str:
        return "Cyc8({})".format(", ".join(str(c) for c in self._c))

    def __str__(self) -> str:
        names = ("", "ζ", "ζ^2", "ζ^3")
        parts = [f"{c}{n}" if n else str(c) for c, n in zip(self._c, names) if c]
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyc8):
            return self._c == other._c
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._c == (other, 0, 0, 0)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __bool__(self) -> bool:
        return any(self._c)

    def __neg__(self) -> Cyc8:
        return Cyc8._raw(tuple(-c for c in self._c))

    def __add__(self, other: Number) -> Cyc8:
        try:
            o = Cyc8.coerce(other)
        except TypeError:
            return NotImplemented
        return Cyc8._raw(tuple(a + b for a, b in zip(self._c, o._c)))

    __radd__ = __add__

    def __sub__(self, other: Number) -> Cyc8:
        try:
            o = Cyc8.coerce(other)
        except TypeError:
            return NotImplemented
        return Cyc8._raw(tuple(a - b for a, b in zip(self._c, o._c)))

    def __rsub__(self, other: Number) -> Cyc8:
        return Cyc8.coerce(other) - self

    def __mul__(self, other: Number) -> Cyc8:
        try:
            o = Cyc8.coerce(other)
        except TypeError:
            return NotImplemented
        a0, a1, a2, a3 = self._c
        b0, b1, b2, b3 = o._c
        # reduce modulo zeta**4 + 1
        return Cyc8._raw((
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        ))

    __rmul__ = __mul__

    def conjugate(self) -> Cyc8:
        # zeta**-k == -zeta**(4-k)
        c0, c1, c2, c3 = self._c
        return Cyc8._raw((c0, -c3, -c2, -c1))

    def norm2(self) -> Cyc8:
        """|x|**2, which lies in Q(sqrt 2)."""
        return self * self.conjugate()

    def inverse(self) -> Cyc8:
        # x * conj(x) * sigma(x * conj(x)) is rational, sigma: zeta -> zeta**3
        n = self.norm2()
        c0, c1, c2, c3 = n._c
        n_sigma = Cyc8._raw((c0, c3, -c2, c1))
        total = (n * n_sigma)._c[0]
        if total == 0:
            raise ZeroDivisionError("Cyc8 division by zero")
        return self.conjugate() * n_sigma * Cyc8(Fraction(1, 1) / total)

    def __truediv__(self, other: Number) -> Cyc8:
        return self * Cyc8.coerce(other).inverse()

    def __pow__(self, k: int) -> Cyc8:
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_rational(self) -> bool:
        return not (self._c[1] or self._c[2] or self._c[3])

    def is_integer(self) -> bool:
        return self.is_rational() and self._c[0].denominator == 1

    def __complex__(self) -> complex:
        z = cmath.exp(1j * math.pi / 4)
        return sum(float(c) * z**k for k, c in enumerate(self._c))

    def to_dict(self) -> dict:
        """Integer numerators over a common denominator, as decimal strings."""
        den = math.lcm(*(c.denominator for c in self._c))
        out = {f"c{k}": str(int(c * den)) for k, c in enumerate(self._c)}
        out["den"] = str(den)
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> Cyc8:
        if set(doc) != {"c0", "c1", "c2", "c3", "den"}:
            raise ValueError("Cyc8 JSON needs exactly keys c0, c1, c2, c3, den")
        den = int(doc["den"])
        if den <= 0:
            raise ValueError("Cyc8 denominator must be positive")
        return cls(*(Fraction(int(doc[f"c{k}"]), den) for k in range(4)))


ONE = Cyc8(1)
ZETA = Cyc8(0, 1)
ZETA_BAR = ZETA.conjugate()
I = Cyc8(0, 0, 1)
