"""Finite alternate modules over Q/Z: kernels, Lagrangians, symplectic
classification and embeddings into standard symplectic modules B x B*."""

from .ablattice import (
    QZ,
    FinAbGroup,
    Morphism,
    SNFResult,
    Subgroup,
    morphism_compose,
    morphism_is_injective,
    morphism_kernel,
    smith_normal_form,
    solve_congruence_kernel,
    subgroup_generated,
    subgroup_invariant_factors,
    subgroup_membership,
)
from .altmodule import (
    AlternateModule,
    InvalidModuleError,
    QuotientResult,
    evaluate,
    find_lagrangian,
    induced_submodule,
    is_isotropic,
    is_lagrangian,
    kernel,
    lagrangian_cardinal,
    ortho_sum,
    orthogonal,
    quotient_by_kernel,
    standard_symplectic,
    sylow_decompose,
)
from .embed import (
    EmbeddingCertificate,
    ExtensionStep,
    embed,
    embed_p,
    extend_case1,
    extend_stretch,
    fundamental_step,
    verify_certificate,
)
from .symplectic import Classification, classify, max_pairing_pair, split_symplectic_submodule

__version__ = "0.1.0"
