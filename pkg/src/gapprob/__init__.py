"""Gap probabilities of random matrix ensembles computed by independent routes."""

__version__ = "0.1.0"

from .asymptotics import (
    ConstantFit,
    dinteg_residual,
    dinteg_sides,
    dyson_expansion,
    extract_c0_dyson,
    extract_c0_widom,
    first_derivative_law_residual,
    widom_expansion,
)
from .constants import widom_dyson_c0, zeta_prime_minus1
from .errors import (
    BranchAmbiguity,
    DomainError,
    GapProbError,
    NonPositivePivot,
    NumericalFault,
    PoleInput,
    PrecisionFault,
    SectorViolation,
    SignFlip,
    SingularResolvent,
)
from .fredholm import GapSpec, NystromConfig, log_det_gap, scaling_limit_gap
from .numerics import PrecisionConfig, derivative, gauss_legendre
from .painleve import eta_from_determinant, sigma_pvi_residual
from .rh import delta_asymptotic, delta_from_determinant, theta_from_determinant
from .toeplitz import ArcEnsemble, LogDetResult, log_det, small_beta_logdet

__all__ = [
    "__version__",
    "ConstantFit",
    "dinteg_residual",
    "dinteg_sides",
    "dyson_expansion",
    "extract_c0_dyson",
    "extract_c0_widom",
    "first_derivative_law_residual",
    "widom_expansion",
    "BranchAmbiguity",
    "DomainError",
    "GapProbError",
    "NonPositivePivot",
    "NumericalFault",
    "PoleInput",
    "PrecisionFault",
    "SectorViolation",
    "SignFlip",
    "SingularResolvent",
    "widom_dyson_c0",
    "zeta_prime_minus1",
    "GapSpec",
    "NystromConfig",
    "log_det_gap",
    "scaling_limit_gap",
    "PrecisionConfig",
    "derivative",
    "gauss_legendre",
    "eta_from_determinant",
    "sigma_pvi_residual",
    "delta_asymptotic",
    "delta_from_determinant",
    "theta_from_determinant",
    "ArcEnsemble",
    "LogDetResult",
    "log_det",
    "small_beta_logdet",
]
