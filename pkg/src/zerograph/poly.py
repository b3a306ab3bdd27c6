"""Dense univariate integer polynomials."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["IntPoly"]


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPoly:
    """Ascending integer coefficients with trailing zeros stripped.

    The identically-zero polynomial has no coefficients; check ``is_zero``.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        for c in self.coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> IntPoly:
        return cls(tuple(counts))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self[k] + other[k] for k in range(n)))

    def __mul__(self, other: IntPoly) -> IntPoly:
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    def as_fractions(self) -> list[Fraction]:
        return [Fraction(c) for c in self.coeffs]

    def is_even(self) -> bool:
        """True when only even powers carry nonzero coefficients."""
        return all(c == 0 for c in self.coeffs[1::2])

    def odd_exponents(self) -> list[int]:
        return [k for k in range(1, len(self.coeffs), 2) if self.coeffs[k] != 0]

    def to_dict(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> IntPoly:
        if not isinstance(doc, dict) or set(doc) != {"coeffs"}:
            raise ValueError("polynomial JSON must be an object with the single key 'coeffs'")
        try:
            return cls(tuple(int(c) for c in doc["coeffs"]))
        except (TypeError, ValueError):
            raise ValueError("coefficients must be exact decimal integer strings") from None

    @classmethod
    def from_json(cls, text: str) -> IntPoly:
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+", term))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text
