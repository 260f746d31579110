"""Linear stability of the conduction state.

For each admissible mode J the linearised system reduces to a cubic in the
growth rate beta:

    beta^3 + b2 beta^2 + b1(R) beta + b0(R) = 0

with

    b2 = (p1 + p2 + 1) gamma^2
    b1 = p1 [ (p2 + 1 + p2/p1) gamma^4 + p2 Q (j3 pi)^2 - R alpha^2 / gamma^2 ]
    b0 = p1 p2 [ gamma^6 + Q (j3 pi)^2 gamma^2 - alpha^2 R ]

Stability convention: below onset every root has Re beta < 0; the first
instability occurs at the smallest R where some root reaches the imaginary
axis.  A real root crosses zero at

    R_steady(J) = (gamma^2 / alpha^2) (gamma^4 + Q (j3 pi)^2)

and a conjugate pair +/- i rho crosses at

    R_osc(J) = (p2+1)(p1+p2)/p1 * (gamma^2 / alpha^2)
               * (gamma^4 + p1 p2 Q (j3 pi)^2 / ((p2+1)(p1+1)))

with rho^2 = p1 p2 [ -p2 gamma^4 / p1 + (1-p2) Q (j3 pi)^2 / (p1+1) ].

The onset value is the lattice minimum of these expressions; only j3 = 1
can attain it because both factors grow with j3.  The minimum is steady
(real onset) whenever p2 >= 1, and for p2 < 1 it switches from steady to
oscillatory as Q crosses a finite threshold Q0 located here by bisection
on min R_steady - min R_osc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidRegime,
    NegativeFrequencySquared,
    SolverFailure,
)
from .params import PI2, BoxGeometry, FluidParams, ModeIndex, wave_numbers

__all__ = [
    "CubicCoefficients",
    "CriticalResult",
    "cubic_coefficients",
    "eigenvalues",
    "R_steady",
    "R_oscillatory",
    "oscillation_frequency",
    "critical_rayleigh",
    "find_Q0",
    "TIE_REL",
]

# relative tolerance deciding membership in the critical tie set
TIE_REL = 1e-9

_MAX_BOUND = 4096


@dataclass(frozen=True)
class CubicCoefficients:
    """Coefficients (b2, b1, b0) of the per-mode growth-rate cubic."""

    b2: float
    b1: float
    b0: float


def cubic_coefficients(
    J: ModeIndex, params: FluidParams, geom: BoxGeometry, R: float
) -> CubicCoefficients:
    """Coefficients of the characteristic cubic of mode J at Rayleigh number R."""
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq
    p1, p2, Q = params.p1, params.p2, params.Q
    qv = Q * (J.j3 ** 2) * PI2
    b2 = (p1 + p2 + 1.0) * g2
    b1 = p1 * ((p2 + 1.0 + p2 / p1) * g2 * g2 + p2 * qv - R * a2 / g2)
    b0 = p1 * p2 * (g2 ** 3 + qv * g2 - a2 * R)
    return CubicCoefficients(b2=b2, b1=b1, b0=b0)


def eigenvalues(
    J: ModeIndex, params: FluidParams, geom: BoxGeometry, R: float
) -> tuple[complex, complex, complex]:
    """Three growth rates of mode J, by descending real part.

    Roots come from the companion matrix of the cubic, Newton-polished
    where that helps.  Residual and root-sum checks guard the result;
    SolverFailure signals a violation.
    """
    c = cubic_coefficients(J, params, geom, R)
    return solve_cubic(c)


def solve_cubic(c: CubicCoefficients) -> tuple[complex, complex, complex]:
    """Roots of beta^3 + b2 beta^2 + b1 beta + b0, checked and ordered."""
    coeffs = np.array([1.0, c.b2, c.b1, c.b0], dtype=float)
    roots = np.roots(coeffs).astype(complex)

    def p(z: complex) -> complex:
        return ((z + c.b2) * z + c.b1) * z + c.b0

    def dp(z: complex) -> complex:
        return (3.0 * z + 2.0 * c.b2) * z + c.b1

    def self_check(cands: list[complex]) -> bool:
        res_scale = max(1.0, abs(c.b0))
        if any(abs(p(z)) > 1e-9 * res_scale for z in cands):
            return False
        return abs(sum(cands) + c.b2) <= 1e-9 * max(1.0, abs(c.b2))

    polished = []
    for z in roots:
        d = dp(z)
        if abs(d) > 1e-30:
            step = p(z) / d
            if abs(step) < 1.0 + abs(z):
                z = z - step
        polished.append(z)

    # Newton sharpens simple roots, but near a double root it breaks the
    # balanced error split of the companion eigenvalues and can spoil the
    # root-sum identity; the raw eigenvalues are the safer answer there
    for cands in (polished, list(roots)):
        if self_check(cands):
            cands.sort(key=lambda z: (-z.real, -z.imag))
            return (cands[0], cands[1], cands[2])
    worst = max(abs(p(z)) for z in roots)
    raise SolverFailure(
        f"cubic roots fail the residual or root-sum check (residual {worst:.3e})"
    )


def R_steady(J: ModeIndex, params: FluidParams, geom: BoxGeometry) -> float:
    """Rayleigh number where a real growth rate of mode J crosses zero."""
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq
    return (g2 / a2) * (g2 * g2 + params.Q * (J.j3 ** 2) * PI2)


def R_oscillatory(J: ModeIndex, params: FluidParams, geom: BoxGeometry) -> float:
    """Rayleigh number where a conjugate pair of mode J reaches the axis."""
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq
    p1, p2 = params.p1, params.p2
    K = (p2 + 1.0) * (p1 + p2) / p1
    cq = p1 * p2 / ((p2 + 1.0) * (p1 + 1.0))
    return K * (g2 / a2) * (g2 * g2 + cq * params.Q * (J.j3 ** 2) * PI2)


def oscillation_frequency(
    params: FluidParams, geom: BoxGeometry, J: ModeIndex
) -> float:
    """Frequency rho of the neutral pair +/- i rho of mode J at R_osc(J).

    rho^2 = p1 p2 [ -p2 gamma^4 / p1 + (1 - p2) Q (j3 pi)^2 / (p1 + 1) ];
    a nonpositive value means the pair never reaches the axis and raises
    NegativeFrequencySquared.
    """
    wn = wave_numbers(J, geom)
    g2 = wn.gamma_sq
    p1, p2, Q = params.p1, params.p2, params.Q
    rho_sq = p1 * p2 * (
        -p2 * g2 * g2 / p1 + (1.0 - p2) * Q * (J.j3 ** 2) * PI2 / (p1 + 1.0)
    )
    if rho_sq <= 0.0:
        raise NegativeFrequencySquared(
            f"rho^2 = {rho_sq:.6e} <= 0 for J={J.as_tuple()}"
        )
    return math.sqrt(rho_sq)


# ---------------------------------------------------------------------------
# lattice minimisation
# ---------------------------------------------------------------------------


def _lattice_min(
    geom: BoxGeometry,
    Q: float,
    K: float,
    cq: float,
    bound: int | None = None,
) -> tuple[float, list[tuple[int, int]], float]:
    """Minimise K*(g2/a2)*(g2^2 + cq*Q*pi^2) over horizontal indices, j3 = 1.

    Returns (minimum, tie list of (j1, j2), second distinct value).  With
    bound=None the truncation adapts: starting from 8 the box is doubled
    until every index outside it provably exceeds the incumbent, using
    R(J) >= K * alpha^4.
    """
    L1, L2, Lmax = geom.L1, geom.L2, max(geom.L1, geom.L2)
    B = 8 if bound is None else bound
    while True:
        j1 = np.arange(B + 1, dtype=float)
        j2 = np.arange(B + 1, dtype=float)
        a2 = (j1[:, None] / L1) ** 2 * PI2 + (j2[None, :] / L2) ** 2 * PI2
        a2[0, 0] = np.nan
        g2 = a2 + PI2
        vals = K * (g2 / a2) * (g2 * g2 + cq * Q * PI2)
        best = float(np.nanmin(vals))
        if bound is not None:
            break
        # smallest alpha^2 of any index outside the current box
        a2_out = ((B + 1) / Lmax) ** 2 * PI2
        if K * a2_out * a2_out > best * (1.0 + 10.0 * TIE_REL):
            break
        if B >= _MAX_BOUND:
            raise SolverFailure(
                f"lattice truncation exceeded {_MAX_BOUND} without closing the bound"
            )
        B *= 2

    tie_mask = vals <= best * (1.0 + TIE_REL)  # NaN at the origin compares False
    ties = [(int(i), int(j)) for i, j in np.argwhere(tie_mask)]
    ties.sort()
    above = vals[~np.isnan(vals) & (vals > best * (1.0 + TIE_REL))]
    second = float(above.min()) if above.size else math.inf
    return best, ties, second


@dataclass(frozen=True)
class CriticalResult:
    """Outcome of the onset minimisation.

    R_first is min(R_r, R_c); kind is 'real' when the steady branch wins
    (R_r <= R_c) and 'complex' otherwise; critical_set holds every index
    attaining R_first within relative tolerance TIE_REL; rho is the onset
    frequency (None for a real onset); second_gap is the relative distance
    from R_first to the next distinct value of the winning minimisation.
    """

    R_first: float
    kind: str
    critical_set: tuple[ModeIndex, ...]
    rho: float | None
    R_r: float
    R_c: float
    second_gap: float


def critical_rayleigh(
    params: FluidParams, geom: BoxGeometry, bound: int | None = None
) -> CriticalResult:
    """Locate the first instability of the conduction state.

    Minimises both the steady and the oscillatory onset expressions over
    the mode lattice and reports the winner together with its tie set.
    """
    p1, p2, Q = params.p1, params.p2, params.Q
    Kc = (p2 + 1.0) * (p1 + p2) / p1
    cq = p1 * p2 / ((p2 + 1.0) * (p1 + 1.0))

    rr, ties_r, second_r = _lattice_min(geom, Q, 1.0, 1.0, bound)
    rc, ties_c, second_c = _lattice_min(geom, Q, Kc, cq, bound)

    if rr <= rc:
        kind, r_first, ties, second = "real", rr, ties_r, second_r
        rho = None
    else:
        kind, r_first, ties, second = "complex", rc, ties_c, second_c
        Jc = ModeIndex(ties[0][0], ties[0][1], 1)
        rho = oscillation_frequency(params, geom, Jc)

    critical_set = tuple(ModeIndex(i, j, 1) for i, j in ties)
    gap = (second - r_first) / r_first if math.isfinite(second) else math.inf
    return CriticalResult(
        R_first=r_first,
        kind=kind,
        critical_set=critical_set,
        rho=rho,
        R_r=rr,
        R_c=rc,
        second_gap=gap,
    )


def growth_rate_slope(
    params: FluidParams,
    geom: BoxGeometry,
    J: ModeIndex,
    R0: float,
    rel_step: float = 1e-6,
) -> float:
    """d(Re beta_max)/dR of mode J at R0, by centered difference.

    Positive at an onset value: raising R pushes the leading growth rate
    across the axis.
    """
    h = rel_step * abs(R0)
    if h == 0.0:
        raise SolverFailure("growth_rate_slope needs R0 != 0")
    hi = eigenvalues(J, params, geom, R0 + h)[0].real
    lo = eigenvalues(J, params, geom, R0 - h)[0].real
    return (hi - lo) / (2.0 * h)


def find_Q0(p1: float, p2: float, geom: BoxGeometry, rel_tol: float = 1e-12) -> float:
    """Chandrasekhar number where the onset switches steady -> oscillatory.

    Bisection on min R_steady - min R_osc over Q.  Only meaningful for
    p2 < 1; for p2 >= 1 the steady branch wins at every Q and the request
    raises InvalidRegime.  The result satisfies Q0 * p2 > pi^2.
    """
    if not 0.0 < p2 < 1.0:
        raise InvalidRegime(f"Q0 exists only for 0 < p2 < 1, got p2={p2}")
    if p1 <= 0.0:
        raise InvalidRegime(f"p1 must be positive, got {p1}")
    Kc = (p2 + 1.0) * (p1 + p2) / p1
    cq = p1 * p2 / ((p2 + 1.0) * (p1 + 1.0))

    def diff(Q: float) -> float:
        rr, _, _ = _lattice_min(geom, Q, 1.0, 1.0)
        rc, _, _ = _lattice_min(geom, Q, Kc, cq)
        return rr - rc

    lo = 0.0
    if diff(lo) >= 0.0:
        raise SolverFailure("oscillatory branch below steady branch at Q=0")
    hi = PI2 * p2 * (p1 + 1.0) / (p1 * (1.0 - p2))
    for _ in range(200):
        if diff(hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise SolverFailure("no steady/oscillatory crossing found while doubling Q")

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if diff(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= rel_tol * hi:
            break
    q0 = 0.5 * (lo + hi)

    rr, _, _ = _lattice_min(geom, q0, 1.0, 1.0)
    rc, _, _ = _lattice_min(geom, q0, Kc, cq)
    if abs(rr - rc) > 1e-6 * rr:
        raise SolverFailure(
            f"crossing residual |R_r - R_c| = {abs(rr - rc):.3e} too large at Q0"
        )
    return q0
