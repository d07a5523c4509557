"""flk: exact Lie-algebra and formal-group-law computations over Q(i).

Everything is computed in exact Gaussian-rational arithmetic: Lie
algebra validation and constructions, the enveloping algebra with its
PBW basis and Hopf structure, truncated formal group laws in exponential
coordinates with an independent Baker-Campbell-Hausdorff cross-check,
and Lie pair data with its semidirect/quotient constructions and
round-trip functors.
"""

from .algebra_core import (
    MultiIndex,
    Scalar,
    TruncSeries,
    series_add,
    series_coefficient,
    series_mul,
    series_substitute,
)
from .bch_oracle import UEASeries, bch_group_law, uea_exp, uea_log
from .errors import (
    FlkError,
    InputError,
    InsufficientOrderError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    ScalarFormatError,
    ShapeError,
    SubstitutionError,
    TruncationError,
)
from .fgl_dual import (
    GroupLaw,
    InverseSeries,
    fgl_axiom_check,
    fgl_equivariance_check,
    fgl_inverse,
    group_law_from_uea,
    lie_from_fgl,
)
from .lie_pair import (
    Component,
    GroupDatum,
    LiePairDatum,
    PairHomomorphism,
    group_datum_to_pair,
    kernel_ideal_check,
    pair_check_suite,
    pair_quotient_map,
    pair_roundtrip_failures,
    pair_semidirect,
    pair_to_group_datum,
    theta_embedding,
    validate_lie_pair,
    validate_pair_homomorphism,
)
from .liealg import (
    LieAlgebra,
    LinearMap,
    adjoint_rep,
    bracket,
    is_derivation_action,
    is_ideal,
    is_lie_homomorphism,
    quotient_algebra,
    semidirect_product,
    validate_jacobi,
)
from .spec_io import (
    AlgebraSpecFile,
    PairSpecFile,
    Report,
    emit_algebra_spec,
    emit_pair_spec,
    emit_report,
    parse_algebra_spec,
    parse_pair_spec,
    parse_spec_file,
)
from .uea_hopf import (
    HopfTable,
    PBWPoly,
    Tensor2,
    antipode,
    coproduct,
    counit,
    export_hopf_table,
    hopf_axiom_check,
    pbw_multiply,
    prim_of_table,
    primitives_upto,
)

__version__ = "0.1.0"
