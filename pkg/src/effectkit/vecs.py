"""Fixed-rank vectors of exact rationals.

Scalars are ``fractions.Fraction`` throughout; no floating point is used
anywhere in the package, so order predicates are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import RankMismatchError

Rat = Fraction

RatLike = Union[int, str, Fraction]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, ``p/q`` string, or Fraction to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value))


def rat_str(q: Fraction) -> str:
    """Canonical ``p/q`` rendering (denominator always written)."""
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Vec:
    """Immutable rational vector; length is the rank of the ambient group."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def of(*values: RatLike) -> "Vec":
        return Vec(tuple(rat(v) for v in values))

    @staticmethod
    def from_iter(values: Iterable[RatLike]) -> "Vec":
        return Vec(tuple(rat(v) for v in values))

    @staticmethod
    def zero(rank: int) -> "Vec":
        return Vec((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Vec") -> "Vec":
        self._check(other)
        return Vec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vec") -> "Vec":
        self._check(other)
        return Vec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vec":
        return Vec(tuple(-a for a in self.coords))

    def scale(self, k: RatLike) -> "Vec":
        f = rat(k)
        return Vec(tuple(f * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def head(self, r: int) -> "Vec":
        return Vec(self.coords[:r])

    def tail(self, r: int) -> "Vec":
        return Vec(self.coords[r:])

    def concat(self, other: "Vec") -> "Vec":
        return Vec(self.coords + other.coords)

    def _check(self, other: "Vec") -> None:
        if len(self.coords) != len(other.coords):
            raise RankMismatchError(
                f"rank {len(self.coords)} vs {len(other.coords)}")

    def __str__(self) -> str:
        return "(" + ", ".join(rat_str(c) for c in self.coords) + ")"
