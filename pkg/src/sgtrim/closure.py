"""Bounded additive-closure windows.

Everything in this module works on a finite prefix [0, bound) of the monoid
generated by a list of positive integers, held as a Python int used as a
bitset (bit i set  <=>  i is a sum of generators).  The point is that
conductor and genus questions about the *full* monoid have exact answers
from a window of the right length, so trimming decisions never need an
unbounded closure:

* m consecutive members starting at k force membership of everything >= k
  (add the smallest generator repeatedly), hence ``conductor <= k`` is
  decidable from the window [0, k + m).
* a monoid with more than g gaps has a gap in [1, 2g + m) already, hence
  ``genus <= g`` is decidable from the window [0, 2g + m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import EmptyInput

__all__ = [
    "ClosureWindow",
    "truncated_closure",
    "bounded_conductor_leq",
    "bounded_genus_leq",
    "conductor_if_leq",
]


@dataclass(frozen=True)
class ClosureWindow:
    """Membership of a generated monoid restricted to [0, bound)."""

    bound: int
    bits: int

    def __contains__(self, n: int) -> bool:
        return 0 <= n < self.bound and self.bits >> n & 1 == 1

    def members(self) -> Iterator[int]:
        bits = self.bits
        i = 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def member_count(self) -> int:
        return self.bits.bit_count()

    def gap_count(self) -> int:
        """Number of non-members in [0, bound)."""
        return self.bound - self.bits.bit_count()


def truncated_closure(gens: Sequence[int], bound: int) -> ClosureWindow:
    """All sums of the generators (0 included) below ``bound``.

    Plain unbounded-knapsack DP on a bitset: for each generator g the set is
    saturated under +g by or-ing in shifted copies with doubling step, then
    the next generator is folded in, which reaches every combination.
    """
    if not gens:
        raise EmptyInput("need at least one generator")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    if any(g <= 0 for g in gens):
        raise ValueError("generators must be positive")
    mask = (1 << bound) - 1
    bits = 1 & mask
    for g in sorted(set(gens)):
        if g >= bound:
            break
        shift = g
        while shift < bound:
            bits |= (bits << shift) & mask
            shift <<= 1
    return ClosureWindow(bound, bits)


def bounded_conductor_leq(gens: Sequence[int], k: int) -> bool:
    """True iff the conductor of the full monoid <gens> is <= k.

    Checks that all of [k, k + m) (m = min generator) lies in the closure
    truncated at k + m: a run of m consecutive members pulls in the whole
    ray, and conversely conductor <= k puts the whole run in the monoid.
    """
    if k < 0:
        return False
    m = min(gens)
    window = truncated_closure(gens, k + m)
    need = ((1 << m) - 1) << k
    return window.bits & need == need


def bounded_genus_leq(gens: Sequence[int], g: int) -> bool:
    """True iff the full monoid <gens> has at most g gaps.

    A monoid with more than g gaps already shows g + 1 of them below
    2g + m (members below the conductor pair off with gaps under
    n -> F - n, so c <= 2g + 1 whenever genus <= g; past that the window
    [0, 2g + m) contains every gap).
    """
    if g < 0:
        return False
    m = min(gens)
    window = truncated_closure(gens, 2 * g + m)
    return window.gap_count() <= g


def conductor_if_leq(gens: Sequence[int], k: int):
    """The exact conductor when it is <= k, else None."""
    if not bounded_conductor_leq(gens, k):
        return None
    m = min(gens)
    window = truncated_closure(gens, k + m)
    below = ~window.bits & ((1 << k) - 1)
    return below.bit_length()  # index of the largest gap below k, plus one
