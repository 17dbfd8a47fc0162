"""Constructive filling times for linear flow on the torus.

The package decides truncated Diophantine conditions for a flow direction,
builds a direction-adapted unimodular lattice basis by enumerating short
vectors of cylinder and diamond norms, converts the basis into explicit
hitting and filling times with certified error bounds, and cross-checks
everything against a grid-certified orbit simulator.
"""

from .diophantine import (
    DioParams,
    ResonanceReport,
    ViolationWitness,
    best_gamma,
    check_truncated,
    complement_measure_estimate,
    normalize,
    require_unit,
    resonance_search,
)
from .filling import (
    AdaptedBasis,
    DiophantineRejection,
    FillingCertificate,
    adapted_basis,
    bound_constant,
    critical_cutoff,
    filling_time_bound,
    hitting_time,
)
from .lattice import (
    DEFAULT_BUDGET,
    CylinderBody,
    DiamondBody,
    IntegerBasis,
    InternalInvariantError,
    MinimaResult,
    ResourceLimitError,
    coreciprocal_body,
    det_exact,
    dilation_needed,
    duality_check,
    extract_zbasis,
    lattice_points_in,
    polar_body,
    successive_minima,
)
from .simulator import (
    CoverageResult,
    empirical_fill_time,
    resonant_demo_parameters,
    resonant_reference,
    torus_distance,
    verify_delta_dense,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptedBasis",
    "CoverageResult",
    "CylinderBody",
    "DEFAULT_BUDGET",
    "DiamondBody",
    "DioParams",
    "DiophantineRejection",
    "FillingCertificate",
    "IntegerBasis",
    "InternalInvariantError",
    "MinimaResult",
    "ResonanceReport",
    "ResourceLimitError",
    "ViolationWitness",
    "adapted_basis",
    "best_gamma",
    "bound_constant",
    "check_truncated",
    "complement_measure_estimate",
    "coreciprocal_body",
    "critical_cutoff",
    "det_exact",
    "dilation_needed",
    "duality_check",
    "empirical_fill_time",
    "extract_zbasis",
    "filling_time_bound",
    "hitting_time",
    "lattice_points_in",
    "normalize",
    "polar_body",
    "require_unit",
    "resonance_search",
    "resonant_demo_parameters",
    "resonant_reference",
    "successive_minima",
    "torus_distance",
    "verify_delta_dense",
    "__version__",
]
