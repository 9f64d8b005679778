"""Exchange symmetry, matrix permanents and global entanglement of multipartite states."""

from .errors import GuardError, StateError, SymmetryError, SymsepError
from .mixed import (
    Ensemble,
    ensemble_to_density,
    hs_inner,
    symmetric_support_check,
    symmetrize_density,
    verify_mixed_nonorthogonality,
)
from .permanent import (
    GramMatrix,
    gram_from_factors,
    marcus_bounds_check,
    permanent_naive,
    permanent_ryser,
)
from .separability import (
    Bipartition,
    Classification,
    Verdict,
    classify,
    enumerate_bipartitions,
    rdm_crosscheck,
    schmidt_rank,
    verify_result1,
    verify_result2,
)
from .state import (
    DensityMatrix,
    ProductState,
    PureState,
    SpectralDecomposition,
    apply_party_permutation,
    inner_product,
    partial_trace,
    spectral_decompose,
    tensor_product,
)
from .symmetry import (
    antisymmetrize,
    is_antisymmetric,
    is_permutation_invariant,
    symmetric_subspace_projector,
    symmetrize,
    translation_analyze,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "Classification",
    "DensityMatrix",
    "Ensemble",
    "GramMatrix",
    "GuardError",
    "ProductState",
    "PureState",
    "SpectralDecomposition",
    "StateError",
    "SymmetryError",
    "SymsepError",
    "Verdict",
    "antisymmetrize",
    "apply_party_permutation",
    "classify",
    "ensemble_to_density",
    "enumerate_bipartitions",
    "gram_from_factors",
    "hs_inner",
    "inner_product",
    "is_antisymmetric",
    "is_permutation_invariant",
    "marcus_bounds_check",
    "partial_trace",
    "permanent_naive",
    "permanent_ryser",
    "rdm_crosscheck",
    "schmidt_rank",
    "spectral_decompose",
    "symmetric_subspace_projector",
    "symmetric_support_check",
    "symmetrize",
    "symmetrize_density",
    "tensor_product",
    "translation_analyze",
    "verify_mixed_nonorthogonality",
    "verify_result1",
    "verify_result2",
]
