"""Parameterized semigroup properties and cut decisions.

Three properties drive every search and every trim:

* genus bound      — genus(S) ≤ g
* small depth      — conductor(S) ≤ ℓ·multiplicity(S)
* large density    — edim(S) ≥ multiplicity(S)/κ

A semigroup is *cutting* for a property when it and every descendant satisfy
it; the whole subtree below a cutting node can be skipped by any search whose
targets live outside the property.  Cutting is decidable from the left
primitives alone: the semigroup they generate is the unique maximum-genus,
maximum-conductor, minimum-edim descendant (when the lefts are coprime), so
bounded conductor/genus tests on that generated semigroup settle the matter.

Parameters are exact rationals and every threshold comparison is done
cross-multiplied in integers: the canonical ℓ = κ = 3 puts thresholds exactly
on integers, where float rounding would flip cut decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce

from .closure import bounded_conductor_leq, bounded_genus_leq
from .core import Semigroup

__all__ = [
    "PropertyKind",
    "PropertySpec",
    "genus_bound",
    "small_depth",
    "large_density",
    "gcd_lefts",
    "satisfies",
    "is_cutting",
    "skilled_primitives",
    "truncated_cut_sufficient",
]


class PropertyKind(Enum):
    GENUS_BOUND = "genus_bound"
    SMALL_DEPTH = "small_depth"
    LARGE_DENSITY = "large_density"


@dataclass(frozen=True)
class PropertySpec:
    kind: PropertyKind
    param: Fraction

    def __post_init__(self):
        if self.kind is PropertyKind.GENUS_BOUND:
            if self.param.denominator != 1 or self.param < 1:
                raise ValueError("genus bound must be a positive integer")
        elif self.kind is PropertyKind.SMALL_DEPTH:
            if self.param <= 0:
                raise ValueError("depth bound must be positive")
        else:
            if self.param <= 1:
                raise ValueError("density bound must exceed 1")

    def __str__(self) -> str:
        tag = {
            PropertyKind.GENUS_BOUND: "G",
            PropertyKind.SMALL_DEPTH: "H",
            PropertyKind.LARGE_DENSITY: "D",
        }[self.kind]
        return f"{tag}_{self.param}"


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("property parameters must be exact rationals, not floats")
    return Fraction(x)


def genus_bound(g: int) -> PropertySpec:
    return PropertySpec(PropertyKind.GENUS_BOUND, _rational(g))


def small_depth(l) -> PropertySpec:
    return PropertySpec(PropertyKind.SMALL_DEPTH, _rational(l))


def large_density(k) -> PropertySpec:
    return PropertySpec(PropertyKind.LARGE_DENSITY, _rational(k))


# ---------------------------------------------------------------------------
# point tests
# ---------------------------------------------------------------------------

def gcd_lefts(s: Semigroup) -> int:
    """gcd of the positive left elements (0 when there are none).

    The left elements and the left primitives generate the same semigroup,
    so the gcd is taken over the (much shorter) primitive list.
    """
    return reduce(math.gcd, s.left_primitives, 0)


def satisfies(s: Semigroup, p: PropertySpec) -> bool:
    num, den = p.param.numerator, p.param.denominator
    if p.kind is PropertyKind.GENUS_BOUND:
        return s.genus <= num
    if p.kind is PropertyKind.SMALL_DEPTH:
        # c ≤ ℓ·m
        return s.conductor * den <= num * s.multiplicity
    # e ≥ m/κ
    return len(s.primitives) * num >= s.multiplicity * den


def is_cutting(s: Semigroup, p: PropertySpec) -> bool:
    """True iff s and every descendant of s satisfy p.

    ℕ and the superficial semigroups are never cutting: their descendants
    cover all larger multiplicities, so genus, depth and density are all
    unbounded below them.  Everywhere else the left primitives decide.
    """
    if s.conductor <= s.multiplicity:
        return False

    num, den = p.param.numerator, p.param.denominator
    if p.kind is PropertyKind.LARGE_DENSITY:
        le = s.left_prim_count
        if gcd_lefts(s) == 1:
            return le * num >= s.multiplicity * den
        return (le + 1) * num >= s.multiplicity * den

    if gcd_lefts(s) != 1:
        return False  # descendants of unbounded genus and conductor exist
    if p.kind is PropertyKind.GENUS_BOUND:
        return bounded_genus_leq(s.left_primitives, num)
    # small depth: conductor of ⟨left primitives⟩ must stay ≤ ℓ·m
    return bounded_conductor_leq(s.left_primitives, (num * s.multiplicity) // den)


# ---------------------------------------------------------------------------
# skilled primitives
# ---------------------------------------------------------------------------

def skilled_primitives(s: Semigroup, p: PropertySpec) -> set[int]:
    """The big primitives whose removal yields a non-cutting child.

    These are the only removals a trimmed search needs to follow.  Each child
    is judged without being constructed: removing primitives[i] leaves a
    child whose left primitives are exactly primitives[:i], and the gcd of
    the child's lefts follows from the parent's in three cases (the removal
    at the conductor adds no left element, the one right after adds only c,
    any later removal adds the coprime pair c, c+1).
    """
    out = set()
    m = s.multiplicity
    c = s.conductor
    num, den = p.param.numerator, p.param.denominator
    parent_gcd = gcd_lefts(s)

    for i in range(s.left_prim_count, len(s.primitives)):
        b = s.primitives[i]
        if b == m:
            # removing the multiplicity gives the next superficial semigroup,
            # which is never cutting
            out.add(b)
            continue

        if b == c:
            child_gcd = parent_gcd
        elif b == c + 1:
            child_gcd = math.gcd(parent_gcd, c)
        else:
            child_gcd = 1

        if p.kind is PropertyKind.LARGE_DENSITY:
            le_child = i
            if child_gcd == 1:
                cutting = le_child * num >= m * den
            else:
                cutting = (le_child + 1) * num >= m * den
        elif child_gcd != 1:
            cutting = False
        elif p.kind is PropertyKind.GENUS_BOUND:
            cutting = bounded_genus_leq(s.primitives[:i], num)
        else:
            cutting = bounded_conductor_leq(s.primitives[:i], (num * m) // den)

        if not cutting:
            out.add(b)
    return out


# ---------------------------------------------------------------------------
# truncated-tree cuts
# ---------------------------------------------------------------------------

def truncated_cut_sufficient(s: Semigroup, p: PropertySpec, gamma: int) -> bool:
    """Sound (not complete) test that every descendant of s with genus ≤
    gamma satisfies p — cheap enough to run at subtree roots.

    True when any of these hold:

    * s is cutting outright;
    * p is a density property and s is a ray semigroup (all left elements
      multiples of m — the superficial root and the spine obtained from it by
      repeatedly removing the smallest big primitive above m): such nodes
      have edim m and genus m−1+i, and any genus ≤ Γ descendant keeps
      edim ≥ 2m−Γ−1+i, so κ·(2m−Γ−1+i) ≥ m settles it;
    * p is a depth property and m ≥ 2Γ/ℓ: every genus ≤ Γ descendant has
      conductor ≤ 2Γ ≤ ℓ·m ≤ ℓ·(its multiplicity).
    """
    if is_cutting(s, p):
        return True
    num, den = p.param.numerator, p.param.denominator
    m = s.multiplicity

    if p.kind is PropertyKind.LARGE_DENSITY:
        if s.left_count == s.depth:  # ray shape ⇒ edim = m, genus = m−1+i
            i = s.genus - (m - 1)
            floor_edim = 2 * m - gamma - 1 + i
            return floor_edim * num >= m * den
        return False

    if p.kind is PropertyKind.SMALL_DEPTH:
        return m * num >= 2 * gamma * den

    return False
