"""Choice functions on finite posets: axiom checks, elementary choice
functions, and their decomposition."""

from .cf import (
    ChoiceFunction,
    CheckReport,
    check_conservative,
    check_heredity,
    check_idempotent,
    check_outcast,
    check_path_independence,
    check_single_condition,
    constant_cf,
    empty_cf,
    enumerate_conservative,
    enumerate_path_independent,
    identity_cf,
    is_conservative,
    union_cf,
    validate_cf,
)
from .decompose import (
    Decomposition,
    Gallery,
    build_gallery,
    decompose,
    find_split,
    galleries_are_chain,
    is_join_irreducible,
    min_index_selector,
    minimize,
    hitting_selector,
    verify_decomposition,
    witness_sequence,
)
from .elementary import ACSequence, Sequence, elementary_cf, eval_elementary, first_hit, is_compatible
from .poset import (
    ElementSet,
    Filter,
    Ideal,
    Poset,
    build_poset,
    enumerate_ideals,
    filter_generated,
    ideal_generated,
    is_antichain,
    is_discrete,
    is_ideal,
    is_linear,
    load_poset,
    principal_ideal,
    strict_principal_ideal,
)

__version__ = "0.1.0"
