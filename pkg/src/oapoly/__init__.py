"""Means on finite-dimensional vector lattices, complete partitions, and
identity checks for orthogonally additive homogeneous polynomials.

The carrier everywhere is R^n with coordinatewise order. The package
provides:

* exact coordinatewise lattice operations (`lattice`);
* complete partitions of an integer and their weight vectors (`partitions`);
* the root mean power, geometric, harmonic and weighted geometric means,
  each computed both in closed form and through its infimum-of-tangents
  representation (`means`);
* sparse homogeneous polynomials with symmetric multilinear forms,
  polarization and additivity testing (`polynomials`);
* executable forward checks and falsification searches for the identities
  tying these means to orthogonally additive polynomials (`theorems`);
* a deterministic CLI over all of the above (`cli`).
"""

from .lattice import (
    DimensionMismatchError,
    LatticeVector,
    PositiveVector,
    apply_homogeneous,
    inf,
    is_disjoint,
    sup,
    vector_from_json,
    vector_to_json,
)
from .means import (
    InfimumSpec,
    MeanResult,
    geometric_mean,
    harmonic_mean,
    harmonic_mean_via_infimum,
    root_mean_power,
    weighted_geometric_mean,
    wgm_via_infimum,
)
from .partitions import (
    CompletePartition,
    WeightVector,
    enumerate_complete,
    is_complete,
    weights,
)
from .polynomials import (
    HomogeneousPolynomial,
    SymmetricMultilinearView,
    is_positively_orthogonally_additive,
    make_diagonal,
    polarize_blackbox,
    polynomial_from_json,
    polynomial_to_json,
)
from .reports import DEFAULT_TOLERANCES, ToleranceConfig, VerificationReport, residual
from .theorems import (
    PreconditionError,
    check_cross_terms,
    check_eta_disjoint,
    check_geos_lemma,
    check_gm,
    check_hm_identity,
    check_rmp,
    check_schur_bounds,
    check_wgm_identity,
    falsify,
    verify_all,
    verify_claim,
)

__version__ = "0.1.0"
