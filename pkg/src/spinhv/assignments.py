"""Deterministic projection assignments for a single spin-s party."""

from __future__ import annotations

import math
from collections import Counter
from itertools import product
from typing import NamedTuple

from .number_theory import SpinValue


class Assignment(NamedTuple):
    """Projection values preassigned to the x, y and z axes."""

    x: SpinValue
    y: SpinValue
    z: SpinValue

    @property
    def doubled(self) -> tuple[int, int, int]:
        return (self.x.doubled, self.y.doubled, self.z.doubled)

    @property
    def values(self) -> tuple[float, float, float]:
        return (self.x.value, self.y.value, self.z.value)

    def squared_doubled_sum(self) -> int:
        """Sum of squared doubled components: four times the squared length."""
        dx, dy, dz = self.doubled
        return dx * dx + dy * dy + dz * dz

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.z})"


def _require_positive(s: SpinValue) -> None:
    if s.doubled < 1:
        raise ValueError("spin magnitude must be positive")


def conserving_target_doubled(s: SpinValue) -> int:
    """s(s+1) expressed in squared-doubled units: 2s * (2s + 2)."""
    return s.doubled * (s.doubled + 2)


def enumerate_unconstrained(s: SpinValue) -> list[Assignment]:
    """All (2s+1)^3 assignments, ascending lexicographic on components."""
    _require_positive(s)
    spectrum = [SpinValue(d) for d in range(-s.doubled, s.doubled + 1, 2)]
    return [Assignment(x, y, z) for x, y, z in product(spectrum, repeat=3)]


def enumerate_constrained(s: SpinValue) -> list[Assignment]:
    """The assignments whose squared projections sum to s(s+1).

    Empty exactly when no magnitude-conserving model exists for this s.
    """
    target = conserving_target_doubled(s)
    return [a for a in enumerate_unconstrained(s) if a.squared_doubled_sum() == target]


def feasible_by_enumeration(s: SpinValue) -> bool:
    """Magnitude-conservation feasibility by direct search over triples.

    Scans sorted nonnegative component triples with an exact integer
    square root for the third; deliberately free of the residue tests in
    number_theory so the two routes stay independent cross-checks.
    """
    _require_positive(s)
    target = conserving_target_doubled(s)
    parity = s.doubled % 2
    dx = parity
    while 3 * dx * dx <= target:
        dy = dx
        while dx * dx + 2 * dy * dy <= target:
            rest = target - dx * dx - dy * dy
            dz = math.isqrt(rest)
            if dz * dz == rest and dz % 2 == parity:
                return True
            dy += 2
        dx += 2
    return False


def squared_magnitude_classes(s: SpinValue) -> dict[int, int]:
    """Histogram of squared projection sums over all assignments.

    Keys are exact: the sum of squared doubled components, i.e. four
    times the squared length.  A key equal to conserving_target_doubled(s)
    is present iff the constrained set is nonempty.
    """
    _require_positive(s)
    return dict(Counter(a.squared_doubled_sum() for a in enumerate_unconstrained(s)))
