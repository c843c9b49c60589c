"""Finite posets, Boolean realizers, counting lower bounds, and realizer
search by brute force or SAT."""

from .bounds import (
    BoundReport,
    capacity_ok,
    distinguishing_lower_bound,
    is_distinguishing,
    lat_lower_bound,
    min_multiplicity_for_target,
    mn_lower_bound,
    signature_collision,
    signature_map,
    singletons_of_grid,
)
from .poset import (
    MAX_ELEMENTS,
    Isomorphism,
    LinearOrder,
    Poset,
    Relation,
    antichain,
    block_decomposition_iso,
    boolean_lattice,
    chain,
    from_relation_pairs,
    is_linear_extension,
    linear_extensions,
    multiset_grid,
    product,
    relation,
    some_linear_extension,
    standard_example,
    subposet,
)
from .realizer import (
    DISTINCT_ONLY,
    REFLEXIVE_INCLUSIVE,
    BooleanRealizer,
    Counterexample,
    TruthTable,
    VerifyOutcome,
    and_function,
    b6_realizer,
    canonical_grid_realizer,
    compose_product,
    evaluate,
    from_extensions,
    query_tuple,
    threshold_at_most_one_zero,
    transport,
    tuple_index,
    upper_bound_realizer,
    verify,
)
from .sat import (
    CnfInstance,
    SatResult,
    SearchReport,
    decode_model,
    encode_bdim_sat,
    internal_sat_solve,
    run_external_solver,
    search_realizer,
)
from .search import Inconsistent, exact_bdim, exact_dim, phi_consistent

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BooleanRealizer",
    "CnfInstance",
    "Counterexample",
    "DISTINCT_ONLY",
    "Inconsistent",
    "Isomorphism",
    "LinearOrder",
    "MAX_ELEMENTS",
    "Poset",
    "REFLEXIVE_INCLUSIVE",
    "Relation",
    "SatResult",
    "SearchReport",
    "TruthTable",
    "VerifyOutcome",
    "and_function",
    "antichain",
    "b6_realizer",
    "block_decomposition_iso",
    "boolean_lattice",
    "canonical_grid_realizer",
    "capacity_ok",
    "chain",
    "compose_product",
    "decode_model",
    "distinguishing_lower_bound",
    "encode_bdim_sat",
    "evaluate",
    "exact_bdim",
    "exact_dim",
    "from_extensions",
    "from_relation_pairs",
    "internal_sat_solve",
    "is_distinguishing",
    "is_linear_extension",
    "lat_lower_bound",
    "linear_extensions",
    "min_multiplicity_for_target",
    "mn_lower_bound",
    "multiset_grid",
    "phi_consistent",
    "product",
    "query_tuple",
    "relation",
    "run_external_solver",
    "search_realizer",
    "signature_collision",
    "signature_map",
    "singletons_of_grid",
    "some_linear_extension",
    "standard_example",
    "subposet",
    "threshold_at_most_one_zero",
    "transport",
    "tuple_index",
    "upper_bound_realizer",
    "verify",
]
