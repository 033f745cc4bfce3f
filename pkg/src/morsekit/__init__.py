"""Bound states, degeneracy bookkeeping and coherent states of the 2D Morse well."""

import os as _os

# Cap BLAS/OpenMP pools before numpy/scipy load their backends.  Explicit
# user-set values for the individual variables still win.
_cap = _os.environ.get("MORSEKIT_THREADS")
if _cap:
    for _var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        _os.environ.setdefault(_var, _cap)

from .errors import (
    MorsekitError,
    NoBoundStatesError,
    OrderingAmbiguityError,
    QuadratureAccuracyError,
)
from .specfun import laguerre, laguerre_derivative, laguerre_signed_log, log_gamma
from .spectrum import (
    ACCIDENTAL,
    DOUBLET,
    INTEGER,
    IRRATIONAL,
    RATIONAL,
    SINGLET,
    CountSummary,
    Crossing,
    LevelKey,
    LevelRecord,
    OrderedSpectrum,
    PhysicalParams,
    PrincipalParameter,
    count_summary,
    crossing_report,
    decompose,
    depth_for_principal,
    derive_parameters,
    enumerate_levels,
    level_key,
    order_spectrum,
    pi_multiple_text,
    scaled_energy,
    shifted_energy,
)
from .states import (
    GridSpec,
    MixingCoefficients,
    MorseBasis,
    MuBasis,
    MuState,
    QuadratureConfig,
    ScalarField2D,
    build_mu_basis,
    density_grid,
    eigenfunction,
    gram_matrix,
    mu_wavefunction,
    normalization,
    overlap,
)
from .coherent import (
    CoherentState,
    LadderSpectrum,
    MomentReport,
    SweepPoint,
    bg_residual,
    bg_residual_direct,
    coherent_coefficients,
    first_separation,
    ladder_f,
    moments,
    uncertainty_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "MorsekitError",
    "NoBoundStatesError",
    "OrderingAmbiguityError",
    "QuadratureAccuracyError",
    "log_gamma",
    "laguerre",
    "laguerre_derivative",
    "laguerre_signed_log",
    "INTEGER",
    "RATIONAL",
    "IRRATIONAL",
    "SINGLET",
    "DOUBLET",
    "ACCIDENTAL",
    "PhysicalParams",
    "PrincipalParameter",
    "LevelKey",
    "LevelRecord",
    "OrderedSpectrum",
    "CountSummary",
    "Crossing",
    "derive_parameters",
    "depth_for_principal",
    "decompose",
    "pi_multiple_text",
    "scaled_energy",
    "shifted_energy",
    "level_key",
    "enumerate_levels",
    "count_summary",
    "order_spectrum",
    "crossing_report",
    "MixingCoefficients",
    "MuState",
    "MuBasis",
    "build_mu_basis",
    "GridSpec",
    "ScalarField2D",
    "QuadratureConfig",
    "MorseBasis",
    "normalization",
    "eigenfunction",
    "mu_wavefunction",
    "density_grid",
    "overlap",
    "gram_matrix",
    "LadderSpectrum",
    "ladder_f",
    "CoherentState",
    "coherent_coefficients",
    "bg_residual",
    "bg_residual_direct",
    "MomentReport",
    "moments",
    "SweepPoint",
    "uncertainty_sweep",
    "first_separation",
    "__version__",
]
