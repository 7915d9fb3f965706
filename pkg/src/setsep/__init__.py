"""Deterministic distinct-sum weight assignments for set families."""

__version__ = "0.1.0"

from .core import (
    ForbiddenSet,
    ProjectedFamily,
    SeparationReport,
    SetSystem,
    WeightAssignment,
    assign_deterministic,
    assign_randomized,
    assignment_steps,
    forbidden_set,
    project,
    separation_trial_rate,
    set_weight,
    verify_separated,
)
from .errors import (
    ConstantsInfeasibleError,
    EmptyUniverseError,
    EquivalenceFailureError,
    IncompleteAssignmentError,
    InvalidSolutionError,
    SeparationViolationError,
    SetSepError,
    SizeLimitError,
)
from .families import (
    Interval,
    Tree,
    bounded_subset_family,
    disjoint_pair_union_family,
    interval_family,
    tree_path_family,
)
from .reductions import (
    BinFillingInstance,
    BinSummary,
    BinViolation,
    EquivalenceReport,
    LargeItem,
    Matching,
    PackedItem,
    Packing,
    StructureReport,
    ThreeDPMInstance,
    check_equivalence,
    extract_matching,
    is_perfect_matching,
    packing_from_matching,
    reduce_3dpm_to_binfilling,
    solve_3dpm_bruteforce,
    solve_binfilling_bruteforce,
    validate_packing_structure,
)

__all__ = [
    "__version__",
    "SetSystem",
    "WeightAssignment",
    "ProjectedFamily",
    "ForbiddenSet",
    "SeparationReport",
    "project",
    "forbidden_set",
    "assign_deterministic",
    "assignment_steps",
    "assign_randomized",
    "verify_separated",
    "set_weight",
    "separation_trial_rate",
    "Interval",
    "Tree",
    "interval_family",
    "disjoint_pair_union_family",
    "bounded_subset_family",
    "tree_path_family",
    "ThreeDPMInstance",
    "BinFillingInstance",
    "LargeItem",
    "Matching",
    "Packing",
    "PackedItem",
    "StructureReport",
    "BinViolation",
    "BinSummary",
    "EquivalenceReport",
    "reduce_3dpm_to_binfilling",
    "solve_3dpm_bruteforce",
    "solve_binfilling_bruteforce",
    "validate_packing_structure",
    "extract_matching",
    "is_perfect_matching",
    "packing_from_matching",
    "check_equivalence",
    "SetSepError",
    "IncompleteAssignmentError",
    "EmptyUniverseError",
    "SizeLimitError",
    "ConstantsInfeasibleError",
    "InvalidSolutionError",
    "SeparationViolationError",
    "EquivalenceFailureError",
]
