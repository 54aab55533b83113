"""Explicit nonrecursive complete matchings of Bruhat-interval Hasse
diagrams in arbitrary Coxeter groups, with brute-force verification
oracles and a command-line front end."""

from .core import (
    CoxeterMatrix,
    CoxeterSystem,
    Element,
    HasseInterval,
    ReducedExpression,
    ball,
    bruhat_leq,
    build_system,
    canonical_word,
    coatoms,
    descent_set,
    enumerate_interval,
    format_element,
    length_of,
    preset_matrix,
    product_of_word,
)
from .errors import (
    CoxmaskError,
    InputError,
    IntegrityError,
    NoMoveError,
    NotBelowError,
    NotReducedError,
    OrderingError,
    PrecisionError,
    ResourceError,
)
from .masks import (
    DefectProfile,
    GreedyTrace,
    Mask,
    all_reduced_expressions,
    constant_masks_by_enumeration,
    defect_profile,
    evaluate_mask,
    greedy_constant_mask,
    mask_join,
)
from .matching import (
    Matching,
    MatchedPair,
    Move,
    ReflectionOrder,
    Rule,
    acyclicity_check,
    apply_phi,
    find_move,
    match_interval,
    reflection_order,
    rw_match,
)
from .relative import (
    RelativeMask,
    X,
    build_relative_mask,
    interval_as_relative_masks,
    relative_defect_profile,
    shifted_descent_set,
    xmask_of,
)
from .verify import (
    SuiteConfig,
    SuiteReport,
    leq_oracle,
    mobius_oracle,
    mobius_via_matching,
    run_suite,
)

__version__ = "0.1.0"
