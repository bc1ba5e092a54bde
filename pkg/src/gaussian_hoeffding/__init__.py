"""Quantum Hoeffding bound for Gaussian states from their first and second moments.

Covariance matrices follow the convention in which the vacuum is the
identity; quadratures are ordered ``(q1, p1, ..., qn, pn)``.
"""

from .catalog import (
    EPR,
    Coherent,
    Raw,
    SqueezedThermal,
    StateSpec,
    Thermal,
    UnphysicalSpec,
    analytic_qhb,
    build,
    epr_divergence_threshold,
    epr_fidelity,
    st_overlap_ingredients,
    st_symplectic_data,
)
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    FactorizationFailure,
    GaussianError,
    InvalidSpec,
    NonHermitian,
    NonPhysical,
    NonPositiveDefinite,
    NonSymmetric,
    NotPure,
    TruncationTooSmall,
    UnsupportedPair,
)
from .hoeffding import (
    AsymptoticRates,
    CompanionBounds,
    HoeffdingResult,
    Method,
    OptimizerOptions,
    asymptotic_rates,
    companion_bounds,
    fidelity_hoeffding,
    hoeffding_bound,
    objective,
)
from .overlap import (
    OverlapKernel,
    OverlapReport,
    g_func,
    gaussian_fidelity_pure,
    lambda_func,
    log_fidelity_pure,
    log_minkowski_bound,
    log_overlap,
    log_young_bound,
)
from .symplectic import (
    GaussianState,
    ValidityReport,
    WilliamsonDecomposition,
    symplectic_form,
    symplectic_spectrum,
    validate_state,
    williamson,
)

__version__ = "0.1.0"
