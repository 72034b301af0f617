"""Count tables N(m, g) and their recurrence extension.

The expensive way to know N(m, g) — the number of numerical semigroups with
multiplicity m and genus g — is to explore the multiplicity-m subtree.  For
2g < 3m there is a Fibonacci-like shortcut,

    N(m, g) = N(m-1, g-1) + N(m-1, g-2),

which lets a full table up to genus Γ be assembled from explored rows with
m ≤ ⌈2Γ/3⌉ only: every cell to the right of that boundary satisfies the
strict guard.  The guard is genuinely strict — at (m, g) = (36, 54), where
2g = 3m exactly, the recurrence is off by 131072 — so applying it outside
2g < 3m is a hard error here, never a silent approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapacityExceeded, GuardViolation

__all__ = [
    "EXPLORED",
    "RECURRENCE",
    "STRUCTURAL_ZERO",
    "CountMatrix",
    "kaplan_extend",
    "recurrence_value",
    "total_by_genus",
    "theta",
]

EXPLORED = "explored"
RECURRENCE = "recurrence"
STRUCTURAL_ZERO = "structural_zero"

_CELL_LIMIT = 1 << 128  # far beyond any reachable genus; cheap headroom


@dataclass
class CountMatrix:
    """N[m][g] with a provenance flag per filled cell.

    Unfilled cells read as None.  Values are bounds-checked on write so a
    runaway accumulation fails loudly instead of wrapping somewhere
    downstream.
    """

    max_multiplicity: int
    max_genus: int
    _counts: list = field(repr=False, default=None)
    _prov: list = field(repr=False, default=None)

    def __post_init__(self):
        if self.max_multiplicity < 1 or self.max_genus < 0:
            raise ValueError("matrix bounds out of range")
        if self._counts is None:
            rows = self.max_multiplicity + 1
            cols = self.max_genus + 1
            self._counts = [[None] * cols for _ in range(rows)]
            self._prov = [[None] * cols for _ in range(rows)]

    # -- cell access ----------------------------------------------------

    def in_range(self, m: int, g: int) -> bool:
        return 1 <= m <= self.max_multiplicity and 0 <= g <= self.max_genus

    def get(self, m: int, g: int):
        return self._counts[m][g]

    def provenance(self, m: int, g: int):
        return self._prov[m][g]

    def set_cell(self, m: int, g: int, value: int, provenance: str) -> None:
        if not self.in_range(m, g):
            raise ValueError(f"cell ({m}, {g}) outside matrix bounds")
        if not 0 <= value < _CELL_LIMIT:
            raise CapacityExceeded(f"count at ({m}, {g}) exceeds 128 bits")
        if provenance not in (EXPLORED, RECURRENCE, STRUCTURAL_ZERO):
            raise ValueError(f"unknown provenance {provenance!r}")
        self._counts[m][g] = value
        self._prov[m][g] = provenance

    def cells(self):
        """(m, g, count, provenance) for every filled cell, sorted by (m, g)."""
        for m in range(1, self.max_multiplicity + 1):
            for g in range(self.max_genus + 1):
                v = self._counts[m][g]
                if v is not None:
                    yield m, g, v, self._prov[m][g]

    def to_csv(self) -> str:
        lines = ["m,g,count,provenance"]
        for m, g, v, p in self.cells():
            lines.append(f"{m},{g},{v},{p}")
        return "\n".join(lines) + "\n"

    # -- structural seeds ------------------------------------------------

    def seed_trivial_row(self) -> None:
        """Row m=1: only ℕ lives there (genus 0)."""
        self.set_cell(1, 0, 1, EXPLORED)
        for g in range(1, self.max_genus + 1):
            self.set_cell(1, g, 0, STRUCTURAL_ZERO)


# ---------------------------------------------------------------------------
# recurrence machinery
# ---------------------------------------------------------------------------

def recurrence_value(matrix: CountMatrix, m: int, g: int) -> int:
    """N(m-1, g-1) + N(m-1, g-2), valid only under the strict guard 2g < 3m."""
    if 2 * g >= 3 * m:
        raise GuardViolation(
            f"recurrence for ({m}, {g}) needs 2g < 3m; got 2*{g} >= 3*{m}"
        )
    total = 0
    for gg in (g - 1, g - 2):
        if gg < 0:
            continue
        v = matrix.get(m - 1, gg)
        if v is None:
            raise ValueError(f"dependency ({m - 1}, {gg}) is unfilled")
        total += v
    return total


def kaplan_extend(matrix: CountMatrix, gamma: int) -> CountMatrix:
    """Fill every cell with m > ⌈2·gamma/3⌉ and g ≤ gamma.

    Explored rows up to the boundary multiplicity must already be present.
    Cells are filled in increasing m so each application of the recurrence
    finds its two dependencies; already-filled cells are left untouched
    (re-extending a fully explored matrix changes nothing).
    """
    if gamma < 1 or gamma > matrix.max_genus:
        raise ValueError("gamma outside matrix bounds")
    boundary = -(-2 * gamma // 3)
    for m in range(boundary + 1, matrix.max_multiplicity + 1):
        for g in range(0, gamma + 1):
            if matrix.get(m, g) is not None:
                continue
            if m > g + 1:
                matrix.set_cell(m, g, 0, STRUCTURAL_ZERO)
            else:
                matrix.set_cell(m, g, recurrence_value(matrix, m, g), RECURRENCE)
    return matrix


# ---------------------------------------------------------------------------
# totals
# ---------------------------------------------------------------------------

def total_by_genus(matrix: CountMatrix) -> list[int]:
    """N(g) for g = 0 .. max_genus, summing the column of each genus."""
    out = []
    for g in range(matrix.max_genus + 1):
        if matrix.max_multiplicity < g + 1:
            raise ValueError(
                f"totaling genus {g} needs multiplicities up to {g + 1}; "
                f"matrix stops at {matrix.max_multiplicity}"
            )
        total = 0
        for m in range(1, g + 2):
            v = matrix.get(m, g)
            if v is None:
                raise ValueError(f"matrix incomplete at ({m}, {g})")
            total += v
        out.append(total)
    return out


def theta(matrix: CountMatrix, gamma: int) -> int:
    """Number of semigroups of genus up to gamma (inclusive)."""
    if gamma > matrix.max_genus:
        raise ValueError("gamma beyond matrix genus bound")
    return sum(total_by_genus(matrix)[: gamma + 1])
