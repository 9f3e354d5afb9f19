"""qmarginal: determination of pure states by their reduced density matrices.

Decides whether an n-qubit pure state is pinned down, among pure states,
by the panel of its (n-1)-qubit marginals; produces explicit witnesses
when it is not (certificates, panel-sharing sibling states, stabilizer
subalgebras); and reconstructs states from panels.
"""

from .classifier import (
    Classification,
    Diagnostics,
    GhzCertificate,
    RelativePhases,
    antipodal_support_reduction,
    classify,
    degenerate_ghz_test,
    diagonal_phases,
    extract_local_unitary,
    phase_family,
    sibling,
)
from .oracle import (
    SearchReport,
    chi_state,
    eta_state,
    ghz_state,
    haar_random_ket,
    lu_equivalence_check,
    random_lu_orbit,
    random_product_ket,
    search_sibling,
)
from .panels import (
    PanelSubset,
    RdmPanel,
    panel_consistency,
    panel_distance,
    panel_of_mixed,
    panel_of_pure,
    panels_equal,
    subset_equal,
)
from .reconstruct import (
    PanelRankError,
    ReconstructionResult,
    check_panel,
    purify_over_qubit,
    reconstruct,
)
from .stabilizer import (
    AlgebraElement,
    StabilizerBasis,
    conjugate_element,
    element_action,
    stabilizer_subalgebra,
    undetermined_by_dimension,
    verify_ghz_subalgebra,
)
from .tensors import (
    DensityMatrix,
    Ket,
    MultiIndex,
    SchmidtSplit,
    SingleQubitUnitary,
    apply_local,
    apply_locals,
    basis_ket,
    equal_up_to_phase,
    fix_global_phase,
    ket,
    partial_trace,
    schmidt_split,
    spectral_decompose,
    tensor_insert,
)

__all__ = [
    "AlgebraElement",
    "Classification",
    "DensityMatrix",
    "Diagnostics",
    "GhzCertificate",
    "Ket",
    "MultiIndex",
    "PanelRankError",
    "PanelSubset",
    "RdmPanel",
    "ReconstructionResult",
    "RelativePhases",
    "SchmidtSplit",
    "SearchReport",
    "SingleQubitUnitary",
    "StabilizerBasis",
    "antipodal_support_reduction",
    "apply_local",
    "apply_locals",
    "basis_ket",
    "check_panel",
    "chi_state",
    "classify",
    "conjugate_element",
    "degenerate_ghz_test",
    "diagonal_phases",
    "element_action",
    "equal_up_to_phase",
    "eta_state",
    "extract_local_unitary",
    "fix_global_phase",
    "ghz_state",
    "haar_random_ket",
    "ket",
    "lu_equivalence_check",
    "panel_consistency",
    "panel_distance",
    "panel_of_mixed",
    "panel_of_pure",
    "panels_equal",
    "partial_trace",
    "phase_family",
    "purify_over_qubit",
    "random_lu_orbit",
    "random_product_ket",
    "reconstruct",
    "schmidt_split",
    "search_sibling",
    "sibling",
    "spectral_decompose",
    "stabilizer_subalgebra",
    "subset_equal",
    "tensor_insert",
    "undetermined_by_dimension",
    "verify_ghz_subalgebra",
]

__version__ = "0.1.0"
