"""Fourier analysis on the slice of the Boolean hypercube.

Harmonic basis of the Johnson graph, slice Fourier transform, restriction
identities, and Goldreich-Levin search for heavy coefficients.
"""

from .basis import (
    BasisVector,
    basis_vector,
    chi,
    chi_norm_sq,
    eigenvalue,
    orthonormal_basis,
)
from .combinatorics import (
    DomainTooLarge,
    NotATopSet,
    SliceDomain,
    binomial,
    enumerate_top_sets,
    is_top_set,
    rank_colex,
    unrank_colex,
)
from .fourier import EmptyFunction, Spectrum, coefficient, inverse_transform, transform
from .heavy import (
    ListCapExceeded,
    QueryFunction,
    SearchConfig,
    estimate_bucket_weight,
    find_heavy_sets,
    sample_restricted_basis_point,
)
from .operators import (
    SliceVector,
    apply_adjacency,
    apply_down,
    apply_down_chain,
    apply_up,
    apply_up_chain,
)
from .restriction import lift_pair, project_pair, restrict, restricted_weight_exact

__version__ = "0.1.0"

__all__ = [
    "BasisVector",
    "basis_vector",
    "chi",
    "chi_norm_sq",
    "eigenvalue",
    "orthonormal_basis",
    "DomainTooLarge",
    "NotATopSet",
    "SliceDomain",
    "binomial",
    "enumerate_top_sets",
    "is_top_set",
    "rank_colex",
    "unrank_colex",
    "EmptyFunction",
    "Spectrum",
    "coefficient",
    "inverse_transform",
    "transform",
    "ListCapExceeded",
    "QueryFunction",
    "SearchConfig",
    "estimate_bucket_weight",
    "find_heavy_sets",
    "sample_restricted_basis_point",
    "SliceVector",
    "apply_adjacency",
    "apply_down",
    "apply_down_chain",
    "apply_up",
    "apply_up_chain",
    "lift_pair",
    "project_pair",
    "restrict",
    "restricted_weight_exact",
]
