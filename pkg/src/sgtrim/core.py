"""Numerical semigroups as immutable values.

A numerical semigroup is a cofinite submonoid of the nonnegative integers.
We keep, per semigroup, the handful of cached quantities that the tree walk
needs at every node: multiplicity, conductor, genus, the minimal generating
set (primitives), and how much of all that sits strictly below the conductor
(left elements / left primitives).  Membership is a plain Python integer used
as a bitset over the window [0, c + m); everything at or beyond the conductor
is a member, so the window is all the information there is.

Tree edges live here too: ``children`` removes one big primitive at a time
(the classical parent/child construction), ``parent`` puts the Frobenius
number back.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .errors import EmptyInput, IsRoot, NotNumerical

__all__ = [
    "Semigroup",
    "InvariantRecord",
    "natural_numbers",
    "superficial",
    "from_generators",
]


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantRecord:
    """Per-semigroup numbers that are reported but not needed on every edge."""

    wilf: int
    eliahou: int
    depth: int
    density: int
    edim: int
    rho: int
    dq_count: int


@dataclass(frozen=True)
class Semigroup:
    """An immutable numerical semigroup.

    ``_bits`` is the membership bitset over [0, conductor + multiplicity);
    bit n is set iff n is a member.  Instances are only built by the module
    factories and by ``children``/``parent``, which maintain every cached
    field incrementally; they are safe to hash, compare and share between
    threads.
    """

    multiplicity: int
    conductor: int
    genus: int
    primitives: tuple[int, ...]
    left_count: int
    left_prim_count: int
    _bits: int

    # -- plain views --------------------------------------------------

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    @property
    def embedding_dimension(self) -> int:
        return len(self.primitives)

    @property
    def left_primitives(self) -> tuple[int, ...]:
        """Primitives strictly below the conductor."""
        return self.primitives[: self.left_prim_count]

    @property
    def big_primitives(self) -> tuple[int, ...]:
        """Primitives at or beyond the conductor (the removable ones)."""
        return self.primitives[self.left_prim_count:]

    def is_natural(self) -> bool:
        return self.conductor == 0

    def is_superficial(self) -> bool:
        """True for the semigroups {0} ∪ [m, ∞), the roots of the
        fixed-multiplicity subtrees (and for ℕ itself)."""
        return self.conductor <= self.multiplicity

    def __contains__(self, n: int) -> bool:
        if n >= self.conductor:
            return True
        if n < 0:
            return False
        return (self._bits >> n) & 1 == 1

    def __repr__(self) -> str:  # ⟨5,8,11⟩-style; primitives generate exactly
        gens = ",".join(map(str, self.primitives))
        return f"⟨{gens}⟩"

    # -- derived numbers ----------------------------------------------

    @property
    def depth(self) -> int:
        """⌈c/m⌉ — how many multiplicity-lengths the gaps span."""
        return -(-self.conductor // self.multiplicity)

    @property
    def density(self) -> int:
        """⌈m/e⌉, kept for reporting; exact m/e ratios are compared as
        rationals wherever a decision depends on them."""
        return -(-self.multiplicity // len(self.primitives))

    @property
    def rho(self) -> int:
        return self.depth * self.multiplicity - self.conductor

    @property
    def dq_count(self) -> int:
        """Decomposable members of the window [c, c+m).

        Counted as m minus the primitives lying in the window.  (For every
        semigroup other than ℕ that is m − (e − left_prim_count), but ℕ's
        single primitive sits outside [0, 1).)
        """
        hi = self.conductor + self.multiplicity
        inside = sum(1 for p in self.big_primitives if p < hi)
        return self.multiplicity - inside

    def wilf_number(self) -> int:
        """e·|L| − c.  Wilf's conjecture asserts this is never negative."""
        return len(self.primitives) * self.left_count - self.conductor

    def eliahou_number(self) -> int:
        """|P ∩ L|·|L| − q·|D_q| + ρ.

        Nonnegative for every generic semigroup; a negative value is the
        fingerprint the search targets look for.
        """
        return (
            self.left_prim_count * self.left_count
            - self.depth * self.dq_count
            + self.rho
        )

    def invariants(self) -> InvariantRecord:
        return InvariantRecord(
            wilf=self.wilf_number(),
            eliahou=self.eliahou_number(),
            depth=self.depth,
            density=self.density,
            edim=len(self.primitives),
            rho=self.rho,
            dq_count=self.dq_count,
        )

    def is_quasi_superficial(self) -> bool:
        """True iff the semigroup is ⟨m, km+1, …, (k+1)m−1⟩ for some k ≥ 1.

        These have Wilf number exactly 0, so they are the known-benign shapes
        a zero-Wilf search must discard.  Recognized off the primitive tuple:
        m followed by m−1 consecutive integers starting just past a multiple
        of m.
        """
        m = self.multiplicity
        if m == 1:
            return True
        prims = self.primitives
        if len(prims) != m:
            return False
        start = prims[1]
        if start <= m or start % m != 1:
            return False
        return all(prims[i] == start + i - 1 for i in range(2, m))

    # -- tree edges ----------------------------------------------------

    def children(self, min_removable: int | None = None) -> list[Semigroup]:
        """All semigroups obtained by removing one big primitive ≥ the bound.

        With the default bound m the superficial successor edge (removing the
        multiplicity itself) is included; pass m+1 to stay inside the
        fixed-multiplicity subtree.  Children come back ordered by increasing
        removed primitive, which fixes every downstream iteration order.
        """
        m = self.multiplicity
        floor = max(self.conductor, m if min_removable is None else min_removable)
        out = []
        start = bisect_left(self.primitives, floor, lo=self.left_prim_count)
        for i in range(start, len(self.primitives)):
            p = self.primitives[i]
            if p == m:
                out.append(superficial(m + 1))
            else:
                out.append(self._remove_primitive(p, i))
        return out

    def _remove_primitive(self, p: int, i: int) -> Semigroup:
        """Child s∖{p} where p = primitives[i] is a big primitive > m.

        Every cached field moves incrementally: the conductor lands at p+1,
        members of [c, p) become left elements, the primitives keep their
        prefix below p, and the only possible new primitive is p+m (it is one
        exactly when it has no two-member decomposition in the child).
        """
        m = self.multiplicity
        c = self.conductor
        bound = c + m
        new_bound = p + 1 + m
        bits = self._bits | (((1 << (new_bound - bound)) - 1) << bound)
        bits &= ~(1 << p)

        q = p + m
        decomposable = False
        pool = bits & ((1 << (q // 2 + 1)) - 1) & ~1  # positive members ≤ q/2
        while pool:
            low = pool & -pool
            a = low.bit_length() - 1
            if (bits >> (q - a)) & 1:
                decomposable = True
                break
            pool ^= low

        prims = self.primitives[:i] + self.primitives[i + 1:]
        if not decomposable:
            prims = prims + (q,)
        return Semigroup(
            multiplicity=m,
            conductor=p + 1,
            genus=self.genus + 1,
            primitives=prims,
            left_count=self.left_count + (p - c),
            left_prim_count=i,
            _bits=bits,
        )

    def parent(self) -> Semigroup:
        """The semigroup with the Frobenius number put back.

        The multiplicity may drop (the parent of {0} ∪ [m+1, ∞) is
        {0} ∪ [m, ∞)), so the parent is rebuilt from membership rather than
        patched incrementally.
        """
        if self.conductor == 0:
            raise IsRoot("the full semigroup has no parent")
        bits = self._bits | (1 << (self.conductor - 1))
        return _from_membership(bits, self.conductor + self.multiplicity)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

_NATURALS = Semigroup(
    multiplicity=1,
    conductor=0,
    genus=0,
    primitives=(1,),
    left_count=0,
    left_prim_count=0,
    _bits=1,
)


def natural_numbers() -> Semigroup:
    """The full semigroup ℕ — the root of the whole tree."""
    return _NATURALS


def superficial(m: int) -> Semigroup:
    """{0} ∪ [m, ∞), the genus-(m−1) root of the multiplicity-m subtree."""
    if m < 1:
        raise ValueError("multiplicity must be positive")
    if m == 1:
        return _NATURALS
    return Semigroup(
        multiplicity=m,
        conductor=m,
        genus=m - 1,
        primitives=tuple(range(m, 2 * m)),
        left_count=1,
        left_prim_count=0,
        _bits=1 | (((1 << m) - 1) << m),
    )


def from_generators(
    gens: list[int] | tuple[int, ...],
    truncation: int | None = None,
) -> Semigroup:
    """The semigroup generated by ``gens``, optionally truncated.

    Without a truncation the generators must be globally coprime (otherwise
    no cofinite semigroup exists).  With truncation t the result is
    ⟨gens⟩ ∪ [t, ∞), which is a numerical semigroup for any generators.
    Redundant generators are fine; primitives are recomputed from membership.
    """
    if not gens:
        raise EmptyInput("need at least one generator")
    gens = sorted(set(int(g) for g in gens))
    if gens[0] < 1:
        raise ValueError("generators must be positive")

    if truncation is None:
        if math.gcd(*gens) != 1:
            raise NotNumerical(
                "generators with gcd > 1 never reach a conductor; "
                "pass a truncation to force one"
            )
        bound = 2 * gens[-1] + 2
        while True:
            bits = _closure_bits(gens, bound)
            run = bits
            for k in range(1, gens[0]):
                run &= bits >> k
                if run == 0:
                    break
            if run:
                return _from_membership(bits, bound)
            bound *= 2
    else:
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        bound = truncation + gens[0] + 1
        bits = _closure_bits(gens, bound)
        bits |= (((1 << (bound - truncation)) - 1) << truncation)
        return _from_membership(bits, bound)


def _closure_bits(gens, bound: int) -> int:
    """Bitset of ⟨gens⟩ ∩ [0, bound)."""
    mask = (1 << bound) - 1
    bits = 1
    for g in gens:
        if g >= bound:
            continue
        shift = g
        while shift < bound:
            bits |= (bits << shift) & mask
            shift <<= 1
    return bits


def _from_membership(bits: int, bound: int) -> Semigroup:
    """Normalize a membership bitset into a Semigroup.

    ``bits`` must be the exact membership of S ∩ [0, bound) for some
    bound ≥ conductor; everything from ``bound`` on is taken to be a member.
    """
    zeros = ~bits & ((1 << bound) - 1)
    c = zeros.bit_length()  # one past the largest gap
    if c == 0:
        return _NATURALS
    pos = bits & ~1
    m = (pos & -pos).bit_length() - 1

    window = c + m
    if bound < window:
        bits |= (((1 << (window - bound)) - 1) << bound)
    else:
        bits &= (1 << window) - 1

    left_count = (bits & ((1 << c) - 1)).bit_count()
    genus = c - left_count

    # positive members and their pairwise sums, inside the window
    pos = bits & ~1
    wmask = (1 << window) - 1
    sums = 0
    pool = pos & ((1 << (window // 2 + 1)) - 1)
    while pool:
        low = pool & -pool
        a = low.bit_length() - 1
        sums |= (pos << a) & wmask
        pool ^= low
    prim_bits = pos & ~sums

    prims = []
    while prim_bits:
        low = prim_bits & -prim_bits
        prims.append(low.bit_length() - 1)
        prim_bits ^= low
    primitives = tuple(prims)

    return Semigroup(
        multiplicity=m,
        conductor=c,
        genus=genus,
        primitives=primitives,
        left_count=left_count,
        left_prim_count=bisect_left(primitives, c),
        _bits=bits,
    )
