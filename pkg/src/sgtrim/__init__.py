"""sgtrim — numerical semigroup trees: enumerate, trim, count, search.

The package walks the classical tree of numerical semigroups (children remove
one big primitive) truncated at a genus bound, with sound subtree pruning for
genus/depth/density properties, exact per-(multiplicity, genus) counting with
an optional recurrence shortcut, and searches for Wilf/Eliahou anomalies.
"""

from .closure import (
    ClosureWindow,
    bounded_conductor_leq,
    bounded_genus_leq,
    conductor_if_leq,
    truncated_closure,
)
from .core import (
    InvariantRecord,
    Semigroup,
    from_generators,
    natural_numbers,
    superficial,
)
from .counting import (
    CountMatrix,
    kaplan_extend,
    recurrence_value,
    theta,
    total_by_genus,
)
from .errors import (
    CapacityExceeded,
    EmptyInput,
    GuardViolation,
    InfiniteDescent,
    IsRoot,
    NotNumerical,
    SgtrimError,
)
from .explorer import (
    COUNT_ALL,
    ELIAHOU_NEGATIVE,
    WILF_NEGATIVE,
    ZERO_WILF_NONTRIVIAL,
    ExplorationResult,
    ExplorationTask,
    Hit,
    Target,
    TargetKind,
    default_trim,
    explore,
    little_density,
    matches,
    non_generic,
    plan_roots,
    split_chain,
)
from .properties import (
    PropertyKind,
    PropertySpec,
    gcd_lefts,
    genus_bound,
    is_cutting,
    large_density,
    satisfies,
    skilled_primitives,
    small_depth,
    truncated_cut_sufficient,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "Semigroup", "InvariantRecord", "natural_numbers", "superficial",
    "from_generators",
    # closure windows
    "ClosureWindow", "truncated_closure", "bounded_conductor_leq",
    "bounded_genus_leq", "conductor_if_leq",
    # properties
    "PropertyKind", "PropertySpec", "genus_bound", "small_depth",
    "large_density", "gcd_lefts", "satisfies", "is_cutting",
    "skilled_primitives", "truncated_cut_sufficient",
    # explorer
    "TargetKind", "Target", "COUNT_ALL", "WILF_NEGATIVE", "ELIAHOU_NEGATIVE",
    "ZERO_WILF_NONTRIVIAL", "little_density", "non_generic", "matches",
    "default_trim", "ExplorationTask", "ExplorationResult", "Hit",
    "plan_roots", "split_chain", "explore",
    # counting
    "CountMatrix", "recurrence_value", "kaplan_extend", "total_by_genus",
    "theta",
    # errors
    "SgtrimError", "EmptyInput", "NotNumerical", "IsRoot", "InfiniteDescent",
    "GuardViolation", "CapacityExceeded",
]
