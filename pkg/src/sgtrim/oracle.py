"""Brute-force reference implementations.

Everything in here is deliberately slow and structurally unrelated to the
incremental bookkeeping in :mod:`sgtrim.core`: membership tables are rebuilt
by plain dynamic programming over sets, genus populations are found by
testing every candidate gap set, descendants by unbounded recursion.  These
are the second route that the fast paths are checked against.
"""

from __future__ import annotations

import math
from functools import reduce
from itertools import combinations

from .core import InvariantRecord, Semigroup, from_generators, natural_numbers
from .errors import InfiniteDescent

__all__ = [
    "enumerate_all_by_subsets",
    "naive_descendants",
    "edim_drop_family",
    "naive_invariants",
]


# ---------------------------------------------------------------------------
# genus populations by gap-set search
# ---------------------------------------------------------------------------

def enumerate_all_by_subsets(g: int) -> list[Semigroup]:
    """All numerical semigroups of genus exactly g, found the dumb way.

    Any semigroup of genus g has its Frobenius number below 2g, so the gap
    set is a g-subset of [1, 2g-1] containing 1.  Try them all, keep the ones
    whose complement is closed under addition.  Exponential: keep g small
    (the intended range is g <= 12).
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if g == 0:
        return [natural_numbers()]

    span = 2 * g  # gaps live in [1, span)
    full = (1 << span) - 1
    half = span // 2
    out = []
    for rest in combinations(range(2, span), g - 1):
        gap_bits = 2  # gap 1 is forced
        for x in rest:
            gap_bits |= 1 << x
        members = full & ~gap_bits
        sums = 0
        pool = (members & ~1) & ((1 << (half + 1)) - 1)
        closed = True
        while pool:
            low = pool & -pool
            a = low.bit_length() - 1
            sums |= members << a
            if sums & gap_bits:
                closed = False
                break
            pool ^= low
        if closed:
            gaps = {i for i in range(1, span) if (gap_bits >> i) & 1}
            out.append(_package(gaps, span))
    return out


def _package(gaps: set[int], span: int) -> Semigroup:
    """Turn an explicit gap set into a Semigroup via its minimal generators,
    both computed with plain set arithmetic."""
    conductor = max(gaps) + 1
    m = next(n for n in range(1, conductor + 1) if n not in gaps)
    top = conductor + m  # no minimal generator reaches conductor + m
    members = [n for n in range(top) if n not in gaps]
    sums = {a + b for a in members for b in members if 0 < a <= b and a + b < top}
    prims = [n for n in members if 0 < n and n not in sums]
    return from_generators(prims)


# ---------------------------------------------------------------------------
# descendants by unbounded recursion
# ---------------------------------------------------------------------------

def naive_descendants(s: Semigroup) -> list[Semigroup]:
    """Every descendant of s (s included), with no genus cap.

    Only meaningful when the left elements of s are globally coprime; then
    the semigroup generated by them bounds all descendant genera and the
    recursion bottoms out.  Otherwise the tree below s is infinite and we
    refuse.
    """
    lefts = [n for n in range(s.conductor) if n in s]
    if reduce(math.gcd, lefts, 0) != 1:
        raise InfiniteDescent(
            f"left elements of {s!r} are not coprime; descendant set is infinite"
        )
    out = []
    stack = [s]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(node.children())
    return out


# ---------------------------------------------------------------------------
# the embedding-dimension drop chain
# ---------------------------------------------------------------------------

def edim_drop_family(k: int) -> tuple[Semigroup, list[int]]:
    """A semigroup with a removal chain dropping the embedding dimension by
    one at every step, k steps long.

    With m = 2k+1 the generators are m, the k integers after 2m, and the k
    integers after 3m+k; removing the latter block one by one (left to
    right) never creates a replacement primitive.
    """
    if k < 1:
        raise ValueError("k must be positive")
    m = 2 * k + 1
    gens = [m] + list(range(2 * m + 1, 2 * m + k + 1)) \
               + list(range(3 * m + k + 1, 3 * m + 2 * k + 1))
    return from_generators(gens), list(range(3 * m + k + 1, 3 * m + 2 * k + 1))


# ---------------------------------------------------------------------------
# invariants from first principles
# ---------------------------------------------------------------------------

def naive_invariants(s: Semigroup) -> InvariantRecord:
    """Recompute the invariant record from a freshly built membership table.

    Shares no code with the cached/incremental fields on Semigroup: the
    member table is grown by set DP from the primitive list, and every
    quantity (conductor, genus, left set, minimal generators, threshold
    window) is re-derived from that table.
    """
    gens = list(s.primitives)
    m = min(gens)

    horizon = 2 * max(gens) + 2
    while True:
        member = [False] * (horizon + 1)
        member[0] = True
        for n in range(1, horizon + 1):
            member[n] = any(n >= g and member[n - g] for g in gens)
        last_gap = max((n for n in range(horizon + 1) if not member[n]), default=-1)
        if horizon - last_gap >= m:
            break
        horizon *= 2

    conductor = last_gap + 1
    genus = sum(1 for n in range(conductor) if not member[n])
    lefts = [n for n in range(conductor) if member[n]]

    # minimal generators, recomputed
    positives = [n for n in range(1, horizon + 1) if member[n]]
    sums = set()
    for i, a in enumerate(positives):
        for b in positives[i:]:
            if a + b > horizon:
                break
            sums.add(a + b)
    if conductor == 0:
        prims = [1]  # ℕ: the one primitive sits exactly at conductor + m
    else:
        prims = [n for n in positives if n not in sums and n < conductor + m]

    edim = len(prims)
    depth = -(-conductor // m)
    rho = depth * m - conductor
    window = range(conductor, conductor + m)
    dq = sum(1 for n in window if n not in prims)
    left_prims = [p for p in prims if p < conductor]

    return InvariantRecord(
        wilf=edim * len(lefts) - conductor,
        eliahou=len(left_prims) * len(lefts) - depth * dq + rho,
        depth=depth,
        density=-(-m // edim),
        edim=edim,
        rho=rho,
        dq_count=dq,
    )
