"""Channel constructions, induced trace-norm lower bounds, and
entanglement-structure certification for channel discrimination at desk
scale."""

__version__ = "0.1.0"

from .channels import (
    KrausSet,
    LinearMapRep,
    adjoint_map,
    apply,
    apply_extended,
    complementary_channel,
    compose,
    gamma_channel,
    is_channel,
    kraus_from_choi,
    mix_maps,
    psi_map,
    stinespring_isometry,
    werner_holevo,
)
from .matrix_core import (
    SvdResult,
    fidelity,
    is_isometry,
    is_psd,
    optimal_unitary,
    psd_sqrt,
    svd,
    trace_norm,
)
from .norms_opt import (
    OptConfig,
    OptResult,
    diamond_norm_lb,
    discrimination_value,
    induced_trace_norm_hermitian_lb,
    induced_trace_norm_lb,
    negativity,
)
from .structure import (
    ReversibilityReport,
    StructureDecomposition,
    WeakMeasure,
    check_weak_measure_axioms,
    coherent_information_measure,
    extract_structure,
    extract_structure_multipartite,
    fidelity_partialtrace_identity_check,
    independent_strategy_value,
    is_max_entangled,
    negativity_measure,
    psi_value,
    reversibility_check,
    triangle_equality_consequence,
)
from .tensor_ops import (
    SystemLayout,
    max_entangled_state,
    partial_trace,
    partial_transpose,
    permute_systems,
    swap_operator,
    unvec,
    vec,
)
