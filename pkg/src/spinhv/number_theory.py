"""Closed-form feasibility of magnitude-conserving spin projection triples.

A spin-s hidden-variable model that conserves the magnitude must pick
projections (s_x, s_y, s_z) from the operator spectrum with
s_x^2 + s_y^2 + s_z^2 = s(s+1).  Whether such a triple exists at all is a
pure number-theory question, settled here by residue tests after stripping
powers of four.  Everything works on doubled integers so half-integer
spins stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class SpinValue:
    """A spin magnitude or projection stored as twice its value.

    Doubling keeps half-integers exact: s = 3/2 is SpinValue(3), a
    projection of -1 is SpinValue(-2).
    """

    doubled: int

    def __post_init__(self) -> None:
        if not isinstance(self.doubled, int):
            raise TypeError(f"doubled must be an int, got {type(self.doubled).__name__}")

    @classmethod
    def from_value(cls, value: float) -> "SpinValue":
        doubled = round(2 * value)
        if abs(2 * value - doubled) > 1e-9:
            raise ValueError(f"{value} is not an integer or half-integer")
        return cls(doubled)

    @property
    def value(self) -> float:
        return self.doubled / 2

    @property
    def is_half_integer(self) -> bool:
        return self.doubled % 2 != 0

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"


def is_sum_of_three_squares(n: int) -> bool:
    """Whether n = x^2 + y^2 + z^2 has a solution in integers.

    Holds exactly when n is not of the form 4^a (8b + 7); implemented by
    stripping factors of 4 and testing the residue mod 8.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    while n % 4 == 0 and n > 0:
        n //= 4
    return n % 8 != 7


def _strip_fours(n: int) -> tuple[int, int]:
    """Largest power of four dividing n, as (remainder, exponent)."""
    a = 0
    while n % 4 == 0:
        n //= 4
        a += 1
    return n, a


def magnitude_feasible(s: SpinValue) -> bool:
    """Whether some projection triple of spin s has squared sum s(s+1).

    Half-integer s: solvable exactly when 2s = 1 (mod 4).  Integer s:
    solvable unless stripping fours from s (s even) or from s+1 (s odd)
    leaves an odd remainder in the obstructed residue class mod 8.
    """
    if s.doubled < 1:
        raise ValueError("spin magnitude must be positive")
    if s.doubled % 2 != 0:
        return s.doubled % 4 == 1

    n = s.doubled // 2
    if n % 2 == 0:
        t, a = _strip_fours(n)
        if t % 2 == 0:
            # odd 2-adic valuation, s(s+1) cannot match an obstructed form
            return True
        return not ((a == 1 and t % 8 == 3) or (a >= 2 and t % 8 == 7))
    t, a = _strip_fours(n + 1)
    if t % 2 == 0:
        return True
    return not ((a == 1 and t % 8 == 5) or (a >= 2 and t % 8 == 1))


def infeasible_spins_up_to(max_doubled: int) -> list[SpinValue]:
    """All spins s with 1 <= 2s <= max_doubled that admit no conserving triple."""
    if max_doubled < 1:
        raise ValueError("max_doubled must be >= 1")
    return [
        SpinValue(d)
        for d in range(1, max_doubled + 1)
        if not magnitude_feasible(SpinValue(d))
    ]
