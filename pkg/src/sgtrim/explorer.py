"""Parallel exploration of truncated, trimmed semigroup trees.

The search space is the genus-truncated tree: every numerical semigroup of
genus ≤ Γ, reached by removing big primitives starting from the superficial
roots.  Work is partitioned by multiplicity (the subtrees below distinct
superficial semigroups are disjoint), optionally refined along the chain of
smallest-big-primitive removals, and each unit is walked depth-first with an
explicit stack.

Trimming: when trim properties are given, descent is restricted to skilled
primitives — removals whose child is not cutting for any listed property.
A pruned child is tallied (at its own multiplicity and genus) but its subtree
is never entered.  Unit roots get the cheaper truncated-tree cut tests, which
can discard a whole multiplicity before anything is walked.

Everything is deterministic by construction: units are derived from the task
alone, workers own disjoint subtrees, and merge order follows unit order, so
results are identical for 1 and N workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .core import InvariantRecord, Semigroup, superficial
from .counting import EXPLORED, STRUCTURAL_ZERO, CountMatrix
from .errors import CapacityExceeded
from .properties import (
    PropertyKind,
    PropertySpec,
    large_density,
    skilled_primitives,
    small_depth,
    truncated_cut_sufficient,
)

__all__ = [
    "TargetKind",
    "Target",
    "COUNT_ALL",
    "WILF_NEGATIVE",
    "ELIAHOU_NEGATIVE",
    "ZERO_WILF_NONTRIVIAL",
    "little_density",
    "non_generic",
    "matches",
    "default_trim",
    "ExplorationTask",
    "ExplorationResult",
    "Hit",
    "plan_roots",
    "split_chain",
    "explore",
]

_CELL_CAP = 1 << 63  # merged per-(m,g) accumulators stay within 64 signed bits


# ---------------------------------------------------------------------------
# targets
# ---------------------------------------------------------------------------

class TargetKind(Enum):
    COUNT_ALL = "count_all"
    WILF_NEGATIVE = "wilf_negative"
    ELIAHOU_NEGATIVE = "eliahou_negative"
    ZERO_WILF_NONTRIVIAL = "zero_wilf_nontrivial"
    LITTLE_DENSITY = "little_density"
    NON_GENERIC = "non_generic"


@dataclass(frozen=True)
class Target:
    kind: TargetKind
    param: Fraction | None = None


COUNT_ALL = Target(TargetKind.COUNT_ALL)
WILF_NEGATIVE = Target(TargetKind.WILF_NEGATIVE)
ELIAHOU_NEGATIVE = Target(TargetKind.ELIAHOU_NEGATIVE)
ZERO_WILF_NONTRIVIAL = Target(TargetKind.ZERO_WILF_NONTRIVIAL)


def little_density(kappa) -> Target:
    """Hits are the semigroups with m/e > κ (they fail the density property)."""
    if isinstance(kappa, float):
        raise TypeError("kappa must be an exact rational")
    kappa = Fraction(kappa)
    if kappa <= 1:
        raise ValueError("kappa must exceed 1")
    return Target(TargetKind.LITTLE_DENSITY, kappa)


def non_generic(ell=3) -> Target:
    """Hits are the semigroups with conductor > ℓ·multiplicity."""
    if isinstance(ell, float):
        raise TypeError("ell must be an exact rational")
    ell = Fraction(ell)
    if ell <= 0:
        raise ValueError("ell must be positive")
    return Target(TargetKind.NON_GENERIC, ell)


def matches(s: Semigroup, target: Target) -> bool:
    k = target.kind
    if k is TargetKind.COUNT_ALL:
        return False
    if k is TargetKind.WILF_NEGATIVE:
        return s.wilf_number() < 0
    if k is TargetKind.ELIAHOU_NEGATIVE:
        return s.eliahou_number() < 0
    if k is TargetKind.ZERO_WILF_NONTRIVIAL:
        return (
            s.wilf_number() == 0
            and len(s.primitives) > 2
            and not s.is_quasi_superficial()
        )
    num, den = target.param.numerator, target.param.denominator
    if k is TargetKind.LITTLE_DENSITY:
        return s.multiplicity * den > len(s.primitives) * num
    # non-generic: c > ℓ·m
    return s.conductor * den > num * s.multiplicity


def default_trim(target: Target) -> list[PropertySpec]:
    """The strongest trim that provably loses no hit of the target.

    Wilf counter-examples cannot be 3-large-density; Eliahou failures and
    nontrivial zero-Wilf semigroups cannot be generic; density and depth
    searches are complements of their own trim property.
    """
    k = target.kind
    if k is TargetKind.WILF_NEGATIVE:
        return [large_density(3)]
    if k is TargetKind.LITTLE_DENSITY:
        return [PropertySpec(PropertyKind.LARGE_DENSITY, target.param)]
    if k in (TargetKind.ELIAHOU_NEGATIVE, TargetKind.ZERO_WILF_NONTRIVIAL):
        return [small_depth(3)]
    if k is TargetKind.NON_GENERIC:
        return [PropertySpec(PropertyKind.SMALL_DEPTH, target.param)]
    return []


# ---------------------------------------------------------------------------
# task / result shapes
# ---------------------------------------------------------------------------

@dataclass
class ExplorationTask:
    roots: list
    max_genus: int
    trim: list = field(default_factory=list)
    target: Target = COUNT_ALL
    workers: int = 1


@dataclass(frozen=True)
class Hit:
    """A target match, stored as its minimal description: the left primitives
    plus a truncation at the conductor (truncation None when the stored
    generators already generate the semigroup exactly — leaves and
    superficial nodes)."""

    generators: tuple
    truncation: int | None
    multiplicity: int
    genus: int
    conductor: int
    record: InvariantRecord


@dataclass
class ExplorationResult:
    counts: CountMatrix
    hits: list
    pruned: dict


def _make_hit(s: Semigroup) -> Hit:
    lpc = s.left_prim_count
    if lpc == 0 or lpc == len(s.primitives):
        gens, trunc = s.primitives, None
    else:
        gens, trunc = s.left_primitives, s.conductor
    return Hit(
        generators=gens,
        truncation=trunc,
        multiplicity=s.multiplicity,
        genus=s.genus,
        conductor=s.conductor,
        record=s.invariants(),
    )


# ---------------------------------------------------------------------------
# work planning
# ---------------------------------------------------------------------------

def plan_roots(gamma: int, target: Target) -> list[Semigroup]:
    """Superficial roots worth exploring for a target, up to genus gamma.

    All of O_2 … O_{Γ+1} by default.  Wilf searches drop m ≤ 18 (known Wilf)
    and m ≥ ⌈3(Γ+1)/5⌉ (the whole truncated subtree is 3-large-density);
    genericity-based searches drop m > ⌈2Γ/ℓ⌉, beyond which every genus ≤ Γ
    semigroup satisfies the depth bound.
    """
    if gamma < 1:
        raise ValueError("gamma must be positive")
    ms = range(2, gamma + 2)
    k = target.kind
    if k is TargetKind.WILF_NEGATIVE:
        ms = [m for m in ms if m > 18 and 5 * m < 3 * (gamma + 1)]
    elif k in (TargetKind.ELIAHOU_NEGATIVE, TargetKind.ZERO_WILF_NONTRIVIAL):
        boundary = -(-2 * gamma // 3)
        ms = [m for m in ms if m <= boundary]
    elif k is TargetKind.NON_GENERIC:
        num, den = target.param.numerator, target.param.denominator
        boundary = -(-2 * gamma * den // num)
        ms = [m for m in ms if m <= boundary]
    return [superficial(m) for m in ms]


def split_chain(m: int, gamma: int, target: Target) -> list[Semigroup]:
    """The spine of T_m: iterated removals of the smallest big primitive
    above m, S_0 = O_m, genus(S_i) = m−1+i, embedding dimension m throughout.

    Exploring each S_i without its chain successor partitions T_m exactly.
    For a Wilf search the tail of the spine is dropped as soon as the
    truncated density cut proves everything below it 3-large-density.
    """
    if m < 3:
        raise ValueError("chain splitting needs multiplicity at least 3")
    d3 = large_density(3)
    out = []
    s = superficial(m)
    for i in range(gamma - m + 2):
        if target.kind is TargetKind.WILF_NEGATIVE and truncated_cut_sufficient(
            s, d3, gamma
        ):
            break  # the cut condition is monotone along the chain
        out.append(s)
        if i < gamma - m + 1:
            s = s.children(m + 1)[0]
    return out


def _units(task: ExplorationTask) -> list[tuple]:
    """(root, skip_chain_successor) pairs, a function of the task alone."""
    split = task.target.kind is TargetKind.WILF_NEGATIVE and any(
        p.kind is PropertyKind.LARGE_DENSITY for p in task.trim
    )
    units = []
    for root in task.roots:
        if split and root.is_superficial() and root.multiplicity >= 3:
            for s in split_chain(root.multiplicity, task.max_genus, task.target):
                units.append((s, True))
        else:
            units.append((root, False))
    return units


# ---------------------------------------------------------------------------
# the walk
# ---------------------------------------------------------------------------

def _descent_start(s: Semigroup) -> int:
    """Index of the first removable primitive inside the fixed-m tree."""
    start = s.left_prim_count
    prims = s.primitives
    if start < len(prims) and prims[start] == s.multiplicity:
        start += 1  # never leave T_m through the superficial successor
    return start


def _run_unit_python(root, skip_first, gamma, trim, target, visitor):
    counts = [0] * (gamma + 1)
    pruned = [0] * (gamma + 1)
    hits = []

    def visit(s):
        counts[s.genus] += 1
        if visitor is not None:
            visitor(s)
        if matches(s, target):
            hits.append(_make_hit(s))

    visit(root)
    stack = [(root, skip_first)]
    while stack:
        s, skip_one = stack.pop()
        if s.genus + 1 > gamma:
            continue
        allowed = None
        if trim:
            for prop in trim:
                sk = skilled_primitives(s, prop)
                allowed = sk if allowed is None else allowed & sk
        first = True
        children = []
        for i in range(_descent_start(s), len(s.primitives)):
            p = s.primitives[i]
            if skip_one and first:
                first = False
                continue
            first = False
            if allowed is not None and p not in allowed:
                pruned[s.genus + 1] += 1
                continue
            children.append(s._remove_primitive(p, i))
        for child in reversed(children):  # keep increasing-p visit order
            visit(child)
            stack.append((child, False))
    return counts, pruned, hits


def _resolve_engine(engine: str, visitor) -> str:
    if engine not in ("auto", "python", "kernel"):
        raise ValueError(f"unknown engine {engine!r}")
    if visitor is not None:
        if engine == "kernel":
            raise ValueError("per-node visitors require the python engine")
        return "python"
    if engine == "auto":
        from . import _kernel

        return "kernel" if _kernel.AVAILABLE else "python"
    if engine == "kernel":
        from . import _kernel

        if not _kernel.AVAILABLE:
            raise RuntimeError("compiled kernel unavailable (numba not importable)")
    return engine


def explore(task: ExplorationTask, engine: str = "auto", visitor=None) -> ExplorationResult:
    """Walk every unit of the task and merge the results deterministically.

    Counts hold one row per explored multiplicity (plus the trivial m=1 row);
    hits come back canonically sorted by (genus, multiplicity, generators).
    """
    gamma = task.max_genus
    if gamma < 1:
        raise ValueError("max_genus must be positive")
    if task.workers < 1:
        raise ValueError("workers must be positive")
    for root in task.roots:
        if root.genus > gamma:
            raise ValueError(f"root {root!r} has genus beyond the bound")

    chosen = _resolve_engine(engine, visitor)
    units = _units(task)

    pruned: dict = {}
    launch = []
    for root, skip in units:
        if any(truncated_cut_sufficient(root, p, gamma) for p in task.trim):
            key = (root.multiplicity, root.genus)
            pruned[key] = pruned.get(key, 0) + 1
        else:
            launch.append((root, skip))

    if chosen == "kernel":
        from . import _kernel

        def run(unit):
            return _kernel.run_unit(unit[0], unit[1], gamma, task.trim, task.target)
    else:
        def run(unit):
            return _run_unit_python(unit[0], unit[1], gamma, task.trim, task.target, visitor)

    if task.workers == 1 or len(launch) <= 1:
        results = [run(u) for u in launch]
    else:
        with ThreadPoolExecutor(max_workers=task.workers) as pool:
            results = list(pool.map(run, launch))

    # merge in unit order
    per_m: dict[int, list[int]] = {}
    hits: list[Hit] = []
    for (root, _), (cnts, prn, hs) in zip(launch, results):
        m = root.multiplicity
        row = per_m.setdefault(m, [0] * (gamma + 1))
        for g, v in enumerate(cnts):
            if v:
                row[g] += v
                if row[g] >= _CELL_CAP:
                    raise CapacityExceeded(f"count at ({m}, {g}) exceeds 64 bits")
        for g, v in enumerate(prn):
            if v:
                key = (m, g)
                pruned[key] = pruned.get(key, 0) + v
        hits.extend(hs)
    for root, _ in units:
        per_m.setdefault(root.multiplicity, [0] * (gamma + 1))

    matrix = CountMatrix(max_multiplicity=gamma + 1, max_genus=gamma)
    matrix.seed_trivial_row()
    for m in sorted(per_m):
        if m == 1:
            continue
        row = per_m[m]
        for g in range(gamma + 1):
            flag = EXPLORED if m <= g + 1 else STRUCTURAL_ZERO
            matrix.set_cell(m, g, row[g], flag)

    hits.sort(key=lambda h: (h.genus, h.multiplicity, h.generators))
    return ExplorationResult(counts=matrix, hits=hits, pruned=pruned)
