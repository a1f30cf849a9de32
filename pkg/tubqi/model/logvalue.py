"""Exact heights: real numbers of the form 1/2 * log2(q) with q a positive rational."""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

RationalLike = Union[int, Fraction]


def _power_of_two_exponent(q: Fraction) -> Union[int, None]:
    """Return k when q == 2**k, otherwise None."""
    num, den = q.numerator, q.denominator
    if num == 1 and den & (den - 1) == 0:
        return -(den.bit_length() - 1)
    if den == 1 and num & (num - 1) == 0:
        return num.bit_length() - 1
    return None


@total_ordering
@dataclass(frozen=True)
class LogValue:
    """The real number 1/2 * log2(q).

    The group operation is multiplication of q, so sums, negations,
    integer multiples and comparisons are all exact rational operations.
    """

    q: Fraction

    def __post_init__(self):
        q = Fraction(self.q)
        if q <= 0:
            raise ValueError(f"LogValue needs q > 0, got {q}")
        object.__setattr__(self, "q", q)

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(Fraction(1))

    @classmethod
    def from_height(cls, height: RationalLike) -> "LogValue":
        """
        Build the LogValue equal to a dyadic-friendly height.

        Args:
            height: A rational h with 2h an integer.

        Returns:
            The LogValue with q = 2**(2h).
        """
        doubled = Fraction(height) * 2
        if doubled.denominator != 1:
            raise ValueError(f"height {height} is not a multiple of 1/2")
        return cls(Fraction(2) ** int(doubled))

    def __add__(self, other: "LogValue") -> "LogValue":
        return LogValue(self.q * other.q)

    def __sub__(self, other: "LogValue") -> "LogValue":
        return LogValue(self.q / other.q)

    def __neg__(self) -> "LogValue":
        return LogValue(1 / self.q)

    def __mul__(self, n: int) -> "LogValue":
        if not isinstance(n, int):
            return NotImplemented
        return LogValue(self.q ** n)

    __rmul__ = __mul__

    def __lt__(self, other: "LogValue") -> bool:
        if not isinstance(other, LogValue):
            return NotImplemented
        return self.q < other.q

    def __abs__(self) -> "LogValue":
        return self if self.q >= 1 else -self

    def is_zero(self) -> bool:
        return self.q == 1

    def sign(self) -> int:
        if self.q == 1:
            return 0
        return 1 if self.q > 1 else -1

    def height(self) -> Union[Fraction, None]:
        """Exact value when q is a power of two, otherwise None."""
        k = _power_of_two_exponent(self.q)
        return None if k is None else Fraction(k, 2)

    def __float__(self) -> float:
        # display only
        return 0.5 * (math.log2(self.q.numerator) - math.log2(self.q.denominator))

    def render(self) -> str:
        exact = self.height()
        if exact is not None:
            return str(exact)
        return f"{float(self):.6f}"

    def __str__(self) -> str:
        return self.render()


ZERO = LogValue.zero()


def total(values) -> LogValue:
    """Sum an iterable of LogValues."""
    q = Fraction(1)
    for value in values:
        q *= value.q
    return LogValue(q)
