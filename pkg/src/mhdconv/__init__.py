"""Onset and transition analysis for magnetoconvection in a rectangular box."""

from .errors import (
    BranchMismatch,
    DegenerateDenominator,
    Diverged,
    InvalidRegime,
    MhdconvError,
    NegativeFrequencySquared,
    NonpositivePairing,
    SolverFailure,
    UnsupportedCriticalSet,
    ZeroCoefficient,
)
from .params import (
    BoxGeometry,
    FluidParams,
    ModeIndex,
    WaveNumbers,
    admissible_indices,
    wave_numbers,
)
from .linear import (
    CriticalResult,
    CubicCoefficients,
    R_oscillatory,
    R_steady,
    critical_rayleigh,
    cubic_coefficients,
    eigenvalues,
    find_Q0,
    growth_rate_slope,
    oscillation_frequency,
)
from .transition_real import (
    ABCoefficients,
    TransitionReport,
    classify_hexagonal,
    classify_simple,
    coefficients_ab,
    detect_hexagonal_geometry,
    kappa_parts,
    p_star,
    q_star,
    region_from_coefficients,
    region_table,
    sigma_roll,
    two_mode_inventory,
)
from .transition_hopf import (
    AsymptoticReport,
    HopfIngredients,
    HopfReport,
    asymptotic_check,
    hopf_coefficient,
    hopf_ingredients,
    transition_number,
)
from .amplitude import (
    Cubic1D,
    HexSystem,
    HopfNormalForm,
    SectorReport,
    SteadyPoint,
    Trajectory,
    integrate,
    numeric_jacobian,
    sector_probe,
    settle,
    steady_states,
)
from .fields import (
    FieldSnapshot,
    ModeField,
    critical_eigenfield,
    inner_product,
    laplacian_eigenfield,
    oscillatory_eigenfield,
    pattern_snapshot,
    trilinear_quadrature,
    trilinear_symmetrized,
)

__version__ = "0.1.0"
