"""Kernel/range chain analysis for composition operators on discrete spaces.

Exact rational measure transport and matrix oracles on one side, a
measure-theoretic theorem engine on the other, with Orlicz-norm numerics
and bounded witness search for maps on the positive integers.
"""

from .chain_analysis import (
    ChainReport,
    Finite,
    Undetermined,
    ascent_via_measures,
    consistency_report,
    corollary_checks,
    descent_via_injectivity,
    kernel_support,
)
from .campaign import run_campaign
from .graphs import tail_height
from .measure_space import (
    AtomicMeasure,
    DiscreteMeasureSpace,
    Transformation,
    WeightFunction,
    chain_rule_holds,
    identity_map,
    image,
    is_measure_preserving,
    is_nonsingular,
    iterate,
    measures_equivalent,
    new_map,
    new_space,
    pushforward,
    rn_derivative,
)
from .operator_core import (
    OperatorMatrix,
    RieszDecomposition,
    ascent_oracle,
    boundedness_constant,
    chain_dims,
    descent_oracle,
    kernel_membership,
    matrix_of,
    riesz_decomposition,
)
from .orlicz import (
    OrliczFunction,
    SpaceFunction,
    amemiya_norm,
    custom_orlicz,
    delta2_check,
    indicator,
    indicator_norm,
    luxemburg_norm,
    make_orlicz,
    modular,
    phi_inverse,
    space_function,
)
from .symbolic_space import (
    SymbolicMap,
    WitnessSequence,
    affine,
    in_range,
    table_then_affine,
    truncated_map,
    truncated_matrix,
    witness_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "ChainReport",
    "DiscreteMeasureSpace",
    "Finite",
    "OperatorMatrix",
    "OrliczFunction",
    "RieszDecomposition",
    "SpaceFunction",
    "SymbolicMap",
    "Transformation",
    "Undetermined",
    "WeightFunction",
    "WitnessSequence",
    "affine",
    "amemiya_norm",
    "ascent_oracle",
    "ascent_via_measures",
    "boundedness_constant",
    "chain_dims",
    "chain_rule_holds",
    "consistency_report",
    "corollary_checks",
    "custom_orlicz",
    "delta2_check",
    "descent_oracle",
    "descent_via_injectivity",
    "identity_map",
    "image",
    "in_range",
    "indicator",
    "indicator_norm",
    "is_measure_preserving",
    "is_nonsingular",
    "iterate",
    "kernel_membership",
    "kernel_support",
    "luxemburg_norm",
    "make_orlicz",
    "matrix_of",
    "measures_equivalent",
    "modular",
    "new_map",
    "new_space",
    "phi_inverse",
    "pushforward",
    "riesz_decomposition",
    "rn_derivative",
    "run_campaign",
    "space_function",
    "table_then_affine",
    "tail_height",
    "truncated_map",
    "truncated_matrix",
    "witness_sequence",
]
