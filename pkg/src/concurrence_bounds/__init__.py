"""Analytical lower bounds of concurrence from the positive maps Phi_{t,pi}."""

from .bounds import (
    BoundReport,
    best_map_bound,
    bound_report,
    li_bound,
    map_bound,
    ppt_bound,
    realignment_bound,
    scale_factor,
)
from .linalg import (
    Dims,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    realign,
    singular_values,
    trace_norm,
)
from .maps import (
    GeneralizedMap,
    Permutation,
    apply_kraus_t1,
    apply_map,
    cycle_analysis,
    extend_second,
    max_positive_t,
    parse_permutation,
)
from .states import (
    DensityMatrix,
    PureState,
    SchmidtCoefficients,
    pure_concurrence,
    pure_to_density,
    random_density,
    random_pure,
    read_state,
    schmidt_canonical_vector,
    schmidt_coefficients,
    validate_density,
    write_state,
)

__version__ = "0.1.0"
