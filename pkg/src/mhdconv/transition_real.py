"""Transition classification at a real (steady) onset.

When the first instability is a real eigenvalue crossing, the local
dynamics on the center manifold reduce to one cubic amplitude equation
per critical mode.  Two derived numbers decide everything:

    b = 2 pi^4 Q (pi^2 - alpha^2) - p2^2 alpha^4 R_r      (roll modes)
    a = pi^4 Q (pi^2 - 5 alpha^2) - p2^2 alpha^4 R_r
        + kappa_{2j,0} + kappa_{0,2k}                      (rectangle modes)

evaluated at the critical index J and Rayleigh number R_r.  The kappa
corrections collect the feedback of the slaved modes (2j,0,2) and
(0,2k,2); every other slaved mode contributes through the fixed terms.
The physical cubic coefficients are positive multiples of a and b
(factor p1 gamma^2 / (16 p2 alpha^2 D), with D the pairing denominator),
so signs of a and b classify the transition.

Single critical mode: a roll goes supercritical (Type-I) when b < 0 and
subcritical (Type-II) when b > 0; a rectangle is decided by the sign of
a the same way.

Hexagonal boxes (L1/L2 = j/(k sqrt(3))) carry a two-mode critical pair,
the rectangle I=(j,k,1) and the roll J=(0,2k,1), and the reduced system

    dx/dt = beta x + x (a x^2 + 2(2a-b) y^2)
    dy/dt = beta y + y ((2a-b) x^2 + 2 b y^2)

is classified into eight regions by the signs of a, b, a-b and 4a-b.
Regions I1, I2 are Type-I, II1..II5 Type-II, III1 Type-III (the mixed
case with sectorial attraction of half-angle arctan(1/2) around the
rectangle axis).

The *_full functions assemble the same cubic coefficients mode by mode
from the slaved-field amplitudes and interaction integrals, without the
algebraic collapse into a and b; they exist to pin the sign claim
sign(full) = sign(display) and are cross-checked against quadrature in
the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateDenominator,
    NonpositivePairing,
    SolverFailure,
    UnsupportedCriticalSet,
    ZeroCoefficient,
)
from .linear import R_steady, growth_rate_slope
from .params import PI, PI2, BoxGeometry, FluidParams, ModeIndex, wave_numbers

SIGN_TOL = 1e-9

SECTOR_HALF_ANGLE = math.atan(0.5)


# ---------------------------------------------------------------------------
# kappa corrections and the coefficients a, b
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KappaParts:
    """One slaved-mode correction kappa_{s1,s2} and its factors."""

    s1: int
    s2: int
    kappa: float
    eta: float
    nu: float
    R_s: float


def kappa_parts(
    s1: int,
    s2: int,
    params: FluidParams,
    geom: BoxGeometry,
    J: ModeIndex,
    R_r: float,
) -> KappaParts:
    """Correction from the slaved mode S = (s1, s2, 2).

    kappa = nu [ (p1 pi^2 Q (1 + 4 gamma^2/gamma_S^2) - p2 gamma^4)(R_r + eta)
                 - (p1 p2 R_r alpha^2 / gamma_S^2)(R_S + eta) ]

    with eta = (gamma_S^2/alpha^2)(pi^2 Q / p2 + gamma^4 / p1) and
    nu = 2 p2 pi^2 (alpha^2 - alpha_S^2/4)^2 / (p1 (R_S - R_r) alpha^2).
    Raises DegenerateDenominator when R_S resonates with R_r.
    """
    if s1 == 0 and s2 == 0:
        raise ValueError("kappa needs a nonzero horizontal index")
    p1, p2, Q = params.p1, params.p2, params.Q
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq

    aS2 = (s1 * PI / geom.L1) ** 2 + (s2 * PI / geom.L2) ** 2
    gS2 = aS2 + 4.0 * PI2
    R_s = (gS2 / aS2) * (gS2 * gS2 + 4.0 * Q * PI2)
    if abs(R_s - R_r) <= SIGN_TOL * abs(R_r):
        raise DegenerateDenominator(
            f"slaved mode ({s1},{s2},2) resonates: R_S = R_r = {R_r:.6e}"
        )
    eta = (gS2 / a2) * (PI2 * Q / p2 + g2 * g2 / p1)
    nu = 2.0 * p2 * PI2 * (a2 - aS2 / 4.0) ** 2 / (p1 * (R_s - R_r) * a2)
    kappa = nu * (
        (p1 * PI2 * Q * (1.0 + 4.0 * g2 / gS2) - p2 * g2 * g2) * (R_r + eta)
        - (p1 * p2 * R_r * a2 / gS2) * (R_s + eta)
    )
    return KappaParts(s1=s1, s2=s2, kappa=kappa, eta=eta, nu=nu, R_s=R_s)


@dataclass(frozen=True)
class ABCoefficients:
    """Classification numbers at the critical index.

    a is None for roll-type indices, where no rectangle coefficient
    exists (its kappa corrections would need both horizontal frequencies).
    """

    a: float | None
    b: float
    J: ModeIndex
    R_r: float


def coefficients_ab(
    params: FluidParams,
    geom: BoxGeometry,
    J: ModeIndex,
    R_r: float | None = None,
) -> ABCoefficients:
    """The numbers a and b at critical index J.

    b uses only the wave numbers; a additionally needs the two kappa
    corrections and is computed when both horizontal frequencies of J
    are nonzero.
    """
    if R_r is None:
        R_r = R_steady(J, params, geom)
    p2, Q = params.p2, params.Q
    wn = wave_numbers(J, geom)
    a2 = wn.alpha_sq

    b = 2.0 * PI2 * PI2 * Q * (PI2 - a2) - p2 * p2 * a2 * a2 * R_r
    a: float | None = None
    if J.j1 > 0 and J.j2 > 0:
        kx = kappa_parts(2 * J.j1, 0, params, geom, J, R_r)
        ky = kappa_parts(0, 2 * J.j2, params, geom, J, R_r)
        a = (
            PI2 * PI2 * Q * (PI2 - 5.0 * a2)
            - p2 * p2 * a2 * a2 * R_r
            + kx.kappa
            + ky.kappa
        )
    return ABCoefficients(a=a, b=b, J=J, R_r=R_r)


def pairing_denominator(params: FluidParams, gamma_sq: float) -> float:
    """D = p2 gamma^4 (1 + p1) + p1 (p2 - 1) pi^2 Q.

    The eigenmode/adjoint pairing is a positive multiple of D; the
    reduction is orientation-true only when D > 0.
    """
    p1, p2, Q = params.p1, params.p2, params.Q
    return p2 * gamma_sq * gamma_sq * (1.0 + p1) + p1 * (p2 - 1.0) * PI2 * Q


def projection_scale(
    params: FluidParams, geom: BoxGeometry, J: ModeIndex
) -> float:
    """Positive factor linking a, b to the physical cubic coefficients.

    The reduced equations carry c * a and 2 c * b with
    c = p1 gamma^2 / (16 p2 alpha^2 D).  Raises NonpositivePairing when
    D <= 0, where the projection inverts orientation and the closed
    forms no longer classify.
    """
    wn = wave_numbers(J, geom)
    D = pairing_denominator(params, wn.gamma_sq)
    if D <= 0.0:
        raise NonpositivePairing(
            f"pairing denominator D = {D:.6e} <= 0 at J={J.as_tuple()}"
        )
    return params.p1 * wn.gamma_sq / (16.0 * params.p2 * wn.alpha_sq * D)


def sigma_roll(params: FluidParams, geom: BoxGeometry, J: ModeIndex) -> float:
    """Threshold for p2^2 separating the sign of b at index J.

    sigma = 2 pi^4 (pi^2 - alpha^2) Q / (alpha^2 gamma^2 (pi^2 Q + gamma^4));
    b < 0 iff p2^2 > sigma.  Nonpositive when alpha >= pi, meaning b < 0
    for every p2.
    """
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq
    Q = params.Q
    return 2.0 * PI2 * PI2 * (PI2 - a2) * Q / (a2 * g2 * (PI2 * Q + g2 * g2))


# ---------------------------------------------------------------------------
# region table for the two-mode system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionLabel:
    label: str
    transition_type: str


@dataclass(frozen=True)
class SteadyStateSummary:
    """One family of nontrivial steady states of the reduced system.

    Amplitudes scale as sqrt(|beta|); amplitude_unit and the Jacobian
    eigenvalues are reported at |beta| = 1 on the side of the onset
    where the family exists.
    """

    pattern: str
    axis: str
    count: int
    exists_supercritical: bool
    amplitude_unit: float
    eigenvalues_unit: tuple[float, float]
    stable: bool


_REGION_BY_SIGNS = {
    (-1, -1, 1, -1): "I1",
    (-1, -1, -1, -1): "I2",
    (-1, -1, 1, 1): "II1",
    (1, 1, 1, 1): "II2",
    (1, 1, -1, 1): "II3",
    (1, -1, 1, 1): "II4",
    (1, 1, -1, -1): "II5",
    (-1, 1, -1, -1): "III1",
}

REGION_SAMPLES = {
    "I1": (-1.0, -2.0),
    "I2": (-2.0, -1.0),
    "II1": (-1.0, -5.0),
    "II2": (2.0, 1.0),
    "II3": (1.0, 2.0),
    "II4": (1.0, -1.0),
    "II5": (1.0, 5.0),
    "III1": (-1.0, 1.0),
}


def _require_nonzero(value: float, ref: float, what: str) -> None:
    if abs(value) <= SIGN_TOL * ref:
        raise ZeroCoefficient(f"{what} = {value:.6e} is degenerate (ref {ref:.3e})")


def region_from_coefficients(a: float, b: float) -> RegionLabel:
    """Map (a, b) to its region; each sign octant carries one label."""
    ref = max(abs(a), abs(b), 1e-300)
    _require_nonzero(a, ref, "a")
    _require_nonzero(b, ref, "b")
    _require_nonzero(a - b, ref, "a - b")
    _require_nonzero(4.0 * a - b, ref, "4a - b")
    signs = (
        1 if a > 0 else -1,
        1 if b > 0 else -1,
        1 if a - b > 0 else -1,
        1 if 4.0 * a - b > 0 else -1,
    )
    label = _REGION_BY_SIGNS[signs]
    if label.startswith("III"):
        kind = "TypeIII"
    elif label.startswith("II"):
        kind = "TypeII"
    else:
        kind = "TypeI"
    return RegionLabel(label=label, transition_type=kind)


def two_mode_inventory(a: float, b: float) -> tuple[SteadyStateSummary, ...]:
    """Existence side, amplitudes and stability of the three families.

    x-axis pair: squared amplitude -beta/a, eigenvalues (-2beta, -beta(a-b)/a).
    y-axis pair: squared amplitude -beta/(2b), eigenvalues (-2beta, -2beta(a-b)/b).
    diagonal quadruple on x = +-2y: h^2 = -beta/(2(4a-b)) at (x,y) = h(2,+-1),
    eigenvalues (-2beta, 4beta(a-b)/(4a-b)).

    Each family exists on the side of the onset where its squared
    amplitude is positive; eigenvalues are evaluated there at |beta|=1.
    """
    rows = []
    for pattern, axis, count, denom, transverse in (
        ("rectangle", "x-axis", 2, a, lambda s: -s * (a - b) / a),
        ("roll", "y-axis", 2, 2.0 * b, lambda s: -2.0 * s * (a - b) / b),
        ("hexagonal", "x=+-2y", 4, 2.0 * (4.0 * a - b),
         lambda s: 4.0 * s * (a - b) / (4.0 * a - b)),
    ):
        super_side = denom < 0.0  # amplitude^2 = -beta/denom > 0 needs opposite signs
        side = 1.0 if super_side else -1.0
        eigs = (-2.0 * side, transverse(side))
        rows.append(
            SteadyStateSummary(
                pattern=pattern,
                axis=axis,
                count=count,
                exists_supercritical=super_side,
                amplitude_unit=1.0 / math.sqrt(abs(denom)),
                eigenvalues_unit=eigs,
                stable=max(eigs) < 0.0,
            )
        )
    return tuple(rows)


def region_table() -> tuple[dict, ...]:
    """Derivation record for the eight regions, one row per octant.

    Built from representative coefficient pairs; used to generate the
    shipped appendix table and pinned by the regression tests.
    """
    rows = []
    for label, (a, b) in REGION_SAMPLES.items():
        region = region_from_coefficients(a, b)
        assert region.label == label
        rows.append(
            {
                "label": label,
                "transition_type": region.transition_type,
                "signs": {
                    "a": 1 if a > 0 else -1,
                    "b": 1 if b > 0 else -1,
                    "a-b": 1 if a - b > 0 else -1,
                    "4a-b": 1 if 4 * a - b > 0 else -1,
                },
                "sample": (a, b),
                "states": two_mode_inventory(a, b),
            }
        )
    return tuple(rows)


# ---------------------------------------------------------------------------
# classification entry points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransitionReport:
    """Classification of one real-onset transition."""

    kind: str
    coefficients: ABCoefficients
    transition_type: str
    region: RegionLabel | None
    states: tuple[SteadyStateSummary, ...]
    pitchfork_constant: float | None
    sector_half_angle: float | None
    near_tie_gap: float | None


def classify_simple(
    params: FluidParams,
    geom: BoxGeometry,
    J: ModeIndex,
    R_r: float | None = None,
    near_tie_gap: float | None = None,
) -> TransitionReport:
    """Classify a simple (single-mode) real transition at index J.

    Roll indices are decided by the sign of b, rectangle indices by the
    sign of a: negative means Type-I (a supercritical attractor pair
    +-C (R - R_r)^(1/2) psi_J), positive Type-II (the pair exists below
    onset and repels).  C is reported as sqrt(slope / |coefficient|)
    with slope the growth-rate derivative at onset.
    """
    if R_r is None:
        R_r = R_steady(J, params, geom)
    coefs = coefficients_ab(params, geom, J, R_r)
    scale = projection_scale(params, geom, J)

    if J.j1 > 0 and J.j2 > 0:
        kind = "simple-rectangle"
        pattern = "rectangle"
        assert coefs.a is not None
        deciding = coefs.a
        physical = scale * coefs.a
        ref = abs(PI2 * PI2 * params.Q * (PI2 - 5.0 * wave_numbers(J, geom).alpha_sq))
    else:
        kind = "simple-roll"
        pattern = "roll"
        deciding = coefs.b
        physical = 2.0 * scale * coefs.b
        ref = abs(2.0 * PI2 * PI2 * params.Q * (PI2 - wave_numbers(J, geom).alpha_sq))
    ref = max(ref, params.p2 ** 2 * wave_numbers(J, geom).alpha_sq ** 2 * R_r, 1e-300)
    _require_nonzero(deciding, ref, "deciding coefficient")

    slope = growth_rate_slope(params, geom, J, R_r)
    pitchfork = math.sqrt(slope / abs(physical))
    supercritical = deciding < 0.0
    state = SteadyStateSummary(
        pattern=pattern,
        axis="mode amplitude",
        count=2,
        exists_supercritical=supercritical,
        amplitude_unit=1.0 / math.sqrt(abs(physical)),
        eigenvalues_unit=(-2.0 if supercritical else 2.0,) * 2,
        stable=supercritical,
    )
    return TransitionReport(
        kind=kind,
        coefficients=coefs,
        transition_type="TypeI" if supercritical else "TypeII",
        region=None,
        states=(state,),
        pitchfork_constant=pitchfork,
        sector_half_angle=None,
        near_tie_gap=near_tie_gap,
    )


def detect_hexagonal_geometry(geom: BoxGeometry, max_index: int = 64) -> tuple[int, int] | None:
    """Smallest (j, k) with L1/L2 = j/(k sqrt(3)), or None.

    Smallest means minimal j + k, ties broken by smaller j; indices run
    to max_index and the ratio must match to 1e-6.
    """
    ratio = geom.L1 / geom.L2
    for total in range(2, 2 * max_index + 1):
        for j in range(max(1, total - max_index), min(max_index, total - 1) + 1):
            k = total - j
            if abs(ratio - j / (k * math.sqrt(3.0))) < 1e-6:
                return (j, k)
    return None


def classify_hexagonal(
    params: FluidParams,
    geom: BoxGeometry,
    I: ModeIndex,
    J: ModeIndex | None = None,
    R_r: float | None = None,
) -> TransitionReport:
    """Classify the two-mode transition of a hexagonal box.

    I is the rectangle index (j,k,1); its partner J defaults to the roll
    (0,2k,1).  Both must sit at the same onset value.  The x amplitude
    of the reduced system multiplies the rectangle mode, the y amplitude
    the roll mode; region III1 attracts inside two sectors of half-angle
    arctan(1/2) around the rectangle axis.
    """
    if I.j1 == 0 or I.j2 == 0:
        raise UnsupportedCriticalSet(
            f"hexagonal pair needs a rectangle index, got {I.as_tuple()}"
        )
    if J is None:
        J = ModeIndex(0, 2 * I.j2, 1)
    wn_i, wn_j = wave_numbers(I, geom), wave_numbers(J, geom)
    if not math.isclose(wn_i.alpha_sq, wn_j.alpha_sq, rel_tol=1e-9):
        raise UnsupportedCriticalSet(
            f"indices {I.as_tuple()} and {J.as_tuple()} have distinct wave numbers"
        )
    if R_r is None:
        R_r = R_steady(I, params, geom)

    coefs = coefficients_ab(params, geom, I, R_r)
    projection_scale(params, geom, I)  # orientation guard
    assert coefs.a is not None
    region = region_from_coefficients(coefs.a, coefs.b)
    states = two_mode_inventory(coefs.a, coefs.b)
    return TransitionReport(
        kind="hexagonal-pair",
        coefficients=coefs,
        transition_type=region.transition_type,
        region=region,
        states=states,
        pitchfork_constant=None,
        sector_half_angle=SECTOR_HALF_ANGLE if region.label == "III1" else None,
        near_tie_gap=None,
    )


# ---------------------------------------------------------------------------
# global thresholds over Q and p2
# ---------------------------------------------------------------------------


def _critical_alpha_sq(geom: BoxGeometry, Q: float) -> float:
    from .linear import _lattice_min  # steady-branch minimiser

    _, ties, _ = _lattice_min(geom, Q, 1.0, 1.0)
    j1, j2 = ties[0]
    return (j1 * PI / geom.L1) ** 2 + (j2 * PI / geom.L2) ** 2


def q_star(geom: BoxGeometry, rel_tol: float = 1e-9) -> float:
    """Smallest Q beyond which the critical wave number stays >= pi.

    Above this threshold b < 0 for every p2, so the roll transition is
    Type-I regardless of the fluid parameters.  The critical wave number
    is nondecreasing in Q, which makes the threshold a bisection target.
    Returns 0 when already alpha >= pi at Q = 0.
    """
    def crossed(Q: float) -> bool:
        return _critical_alpha_sq(geom, Q) >= PI2 * (1.0 - 1e-12)

    if crossed(0.0):
        return 0.0
    lo, hi = 0.0, 64.0
    while not crossed(hi):
        hi *= 2.0
        if hi > 1e12:
            raise SolverFailure("critical wave number never reaches pi")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if crossed(mid):
            hi = mid
        else:
            lo = mid
    return hi


def p_star(geom: BoxGeometry) -> float:
    """Smallest p2 beyond which b < 0 for every Q.

    sigma_roll at fixed alpha increases with Q toward the envelope
    2 pi^2 (pi^2 - alpha^2) / (alpha^2 gamma^2), which decreases in
    alpha; with the critical alpha nondecreasing in Q the envelope at
    the zero-field minimiser bounds sigma_roll for all Q.  Returns 0
    when that minimiser already has alpha >= pi.
    """
    a2 = _critical_alpha_sq(geom, 0.0)
    if a2 >= PI2:
        return 0.0
    g2 = a2 + PI2
    return PI * math.sqrt(2.0 * (PI2 - a2)) / math.sqrt(a2 * g2)


# ---------------------------------------------------------------------------
# full center-manifold assemblies (sign oracles for a and b)
# ---------------------------------------------------------------------------


def cm_coefficient_b_full(
    params: FluidParams,
    geom: BoxGeometry,
    J: ModeIndex,
    R_r: float | None = None,
) -> float:
    """Roll cubic coefficient assembled mode by mode.

    Two slaved modes feed back on a roll: the mean temperature (0,0,2)
    with amplitude -gamma^2/(8 pi) and the magnetic mode at twice the
    horizontal frequency with amplitude pi^2 gamma^2 / (4 p2 alpha^2).
    Projection onto the adjoint eigenmode divides by the pairing, whose
    sign is the D > 0 validity condition.
    """
    if (J.j1 > 0) == (J.j2 > 0):
        raise UnsupportedCriticalSet(
            f"roll coefficient needs exactly one horizontal frequency, got {J.as_tuple()}"
        )
    if R_r is None:
        R_r = R_steady(J, params, geom)
    p1, p2, Q = params.p1, params.p2, params.Q
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq
    L1L2 = geom.L1 * geom.L2

    D = pairing_denominator(params, g2)
    pairing = (L1L2 * g2 / (4.0 * a2)) * D
    if pairing <= 0.0:
        raise NonpositivePairing(f"eigenmode/adjoint pairing {pairing:.6e} <= 0")

    phi_temp = -g2 / (8.0 * PI)
    gs_temp = (L1L2 / 4.0) * p1 * p2 * PI * g2 * R_r
    phi_mag = PI2 * g2 / (4.0 * p2 * a2)
    gs_mag = (L1L2 / (4.0 * a2)) * p1 * PI2 * g2 * (PI2 - a2) * Q
    return (phi_temp * gs_temp + phi_mag * gs_mag) / pairing


def _three_branch_contribution(
    params: FluidParams,
    s_a2: float,
    a2: float,
    g2: float,
    R_r: float,
    L1L2: float,
) -> float:
    """Slaved-mode feedback at (s1,s2,2) resolved into all three branches.

    The slaved amplitudes solve the 3x3 linear block; closed form:

        Phi = pref (gamma_S^2, (R_S + eta)/(R + eta), 2 pi)
        pref = pi gamma^2 (4 alpha^2 - alpha_S^2)(R + eta)
               / (16 alpha^2 gamma_S^2 (R - R_S))

    paired against

        Gs = (L1 L2 pi gamma^2 (4 alpha^2 - alpha_S^2) / (64 alpha^4))
             (p2 gamma^4 - p1 pi^2 Q, p1 p2 R alpha^2, -2 p1 pi Q gamma^2).
    """
    p1, p2, Q = params.p1, params.p2, params.Q
    gS2 = s_a2 + 4.0 * PI2
    R_s = (gS2 / s_a2) * (gS2 * gS2 + 4.0 * Q * PI2)
    if abs(R_s - R_r) <= SIGN_TOL * abs(R_r):
        raise DegenerateDenominator(
            f"slaved mode with alpha_S^2 = {s_a2:.6e} resonates at R = {R_r:.6e}"
        )
    eta = (gS2 / a2) * (PI2 * Q / p2 + g2 * g2 / p1)
    pref = PI * g2 * (4.0 * a2 - s_a2) * (R_r + eta) / (
        16.0 * a2 * gS2 * (R_r - R_s)
    )
    phi = (gS2, (R_s + eta) / (R_r + eta), 2.0 * PI)
    gpref = L1L2 * PI * g2 * (4.0 * a2 - s_a2) / (64.0 * a2 * a2)
    gs = (
        p2 * g2 * g2 - p1 * PI2 * Q,
        p1 * p2 * R_r * a2,
        -2.0 * p1 * PI * Q * g2,
    )
    return pref * gpref * sum(p * g for p, g in zip(phi, gs))


def cm_coefficient_a_full(
    params: FluidParams,
    geom: BoxGeometry,
    J: ModeIndex,
    R_r: float | None = None,
) -> float:
    """Rectangle cubic coefficient assembled mode by mode.

    Six slaved modes feed back on a rectangle (j,k,1): the mean
    temperature (0,0,2), three magnetic modes (2j,2k,0), (2j,0,0),
    (0,2k,0), and the full three-branch blocks at (2j,0,2) and (0,2k,2).
    """
    if J.j1 == 0 or J.j2 == 0:
        raise UnsupportedCriticalSet(
            f"rectangle coefficient needs both horizontal frequencies, got {J.as_tuple()}"
        )
    if R_r is None:
        R_r = R_steady(J, params, geom)
    p1, p2, Q = params.p1, params.p2, params.Q
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq
    L1L2 = geom.L1 * geom.L2

    D = pairing_denominator(params, g2)
    pairing = (L1L2 * g2 / (8.0 * a2)) * D
    if pairing <= 0.0:
        raise NonpositivePairing(f"eigenmode/adjoint pairing {pairing:.6e} <= 0")

    ax2 = (2.0 * J.j1 * PI / geom.L1) ** 2
    ay2 = (2.0 * J.j2 * PI / geom.L2) ** 2

    total = (-g2 / (16.0 * PI)) * ((L1L2 / 8.0) * p1 * p2 * PI * R_r * g2)
    phi_mag = PI2 * g2 / (8.0 * p2 * a2)
    total += phi_mag * (L1L2 * p1 * PI2 * Q * g2 * (PI2 - a2) / (16.0 * a2))
    for s_a2 in (ax2, ay2):
        total += phi_mag * (
            L1L2 * p1 * PI2 * Q * g2 * ((-a2 + s_a2 / 2.0) * PI2 - a2 * a2)
            / (8.0 * a2 * a2)
        )
        total += _three_branch_contribution(params, s_a2, a2, g2, R_r, L1L2)
    return total / pairing
