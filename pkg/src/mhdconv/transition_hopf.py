"""Transition classification at a complex (oscillatory) onset.

For p2 < 1 and Q above the switch value Q0 the first instability is a
conjugate pair +-i rho, the critical index is roll-type, and the local
dynamics reduce to a planar Hopf normal form

    dx/dt =  lam x + rho y + ... (cubic)
    dy/dt = -rho x + lam y + ... (cubic)

whose transition number b decides the outcome: b < 0 means Type-I, a
stable periodic orbit of radius sqrt(lam / |b|) branching for R > R_c;
b > 0 means Type-II, an unstable orbit below R_c.

The production path evaluates b from its closed form built out of the
slaved-mode feedback at (0,0,2) and at twice the horizontal frequency:
frequency-domain factors omega, delta, K, L at beta = i rho, the
auxiliary reals E1, E2, psi11, psi21, the six unnormalised quadratic
response coefficients A1..A6 and the three contractions D1..D3.  The
oracle path (used by the quadrature cross-checks in the test suite)
instead computes the raw interaction tables g, c, d between eigenmode
components and slaved modes; the closed forms of those tables are pinned
against direct numerical integration of the interaction integrals.

Large-Q behaviour: gamma^2 of the critical index grows like Q^(1/3) and
rho^2/Q approaches p1 p2 (1 - p2) pi^2 / (p1 + 1); b is eventually
negative, so strong fields force Type-I oscillatory onset.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidRegime,
    UnsupportedCriticalSet,
    ZeroCoefficient,
)
from .linear import critical_rayleigh, growth_rate_slope
from .params import PI, PI2, BoxGeometry, FluidParams, ModeIndex, wave_numbers


def _require_roll(Jc: ModeIndex) -> None:
    if (Jc.j1 > 0) == (Jc.j2 > 0):
        raise UnsupportedCriticalSet(
            f"oscillatory reduction needs a roll-type index, got {Jc.as_tuple()}"
        )


def omega_of(beta: complex, params: FluidParams, gamma_sq: float) -> complex:
    """omega(beta) = (beta/p2 + gamma^2)(beta/p1 + gamma^2) + Q pi^2."""
    return (beta / params.p2 + gamma_sq) * (
        beta / params.p1 + gamma_sq
    ) + params.Q * PI2


def delta_of(beta: complex, params: FluidParams, gamma_sq: float) -> complex:
    return beta + params.p2 * gamma_sq


def K_of(
    beta: complex,
    params: FluidParams,
    geom: BoxGeometry,
    alpha_sq: float,
    gamma_sq: float,
    R: float,
) -> complex:
    """Magnetic feedback factor K(beta), analytic with real coefficients."""
    return (
        -(geom.L1 * geom.L2 / 8.0)
        * params.Q
        * R
        * alpha_sq
        * PI2
        * delta_of(beta, params, gamma_sq)
        / params.p2
    )


def L_of(
    beta: complex,
    params: FluidParams,
    geom: BoxGeometry,
    alpha_sq: float,
    gamma_sq: float,
    R: float,
) -> complex:
    """Thermal feedback factor L(beta)."""
    return (
        (geom.L1 * geom.L2 / 2.0)
        * gamma_sq
        * alpha_sq
        * R
        * PI
        * delta_of(beta, params, gamma_sq)
        / params.p2
    )


@dataclass(frozen=True)
class HopfIngredients:
    """Closed-form factors entering the transition number.

    The frequency-domain factors are evaluated at beta = i rho.  K and L
    have real coefficients, so their values at the conjugate frequency
    are the complex conjugates.
    """

    omega_beta: complex
    delta_beta: complex
    K_beta: complex
    L_beta: complex
    E1: float
    E2: float
    psi11: float
    psi21: float
    A1: float
    A2: float
    A3: float
    A4: float
    A5: float
    A6: float
    D1: float
    D2: float
    D3: float


def hopf_ingredients(
    params: FluidParams,
    geom: BoxGeometry,
    Jc: ModeIndex,
    R_c: float,
    rho: float,
) -> HopfIngredients:
    """Evaluate every factor of the transition number at beta = i rho."""
    if params.p2 >= 1.0:
        raise InvalidRegime(f"oscillatory onset needs p2 < 1, got p2={params.p2}")
    if rho <= 0.0:
        raise InvalidRegime(f"onset frequency must be positive, got rho={rho}")
    _require_roll(Jc)
    p1, p2, Q = params.p1, params.p2, params.Q
    wn = wave_numbers(Jc, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq

    beta = 1j * rho
    omega_beta = omega_of(beta, params, g2)
    delta_beta = delta_of(beta, params, g2)
    K_beta = K_of(beta, params, geom, a2, g2, R_c)
    L_beta = L_of(beta, params, geom, a2, g2, R_c)

    E1 = (p2 + p1) * (g2 * g2 / p1 + Q * PI2 / (p1 + 1.0))
    E2 = (p2 + p1) * rho * g2 / (p2 * p1)
    psi11 = -(rho * rho * a2 * R_c / (p2 * p1) + p2 * E2 * E2 * g2)
    psi21 = (rho * a2 * R_c / p1 + p2 * E1 * E2) * g2

    A1 = -(
        (16.0 * PI2 * PI2 + 2.0 * rho * rho) * g2 * E1
        + 2.0 * rho * E2 * rho * rho / p2
        - 4.0 * g2 * E2 * rho * PI2
        - E1 * rho / p2
    )
    A2 = -(
        16.0 * PI2 * PI2 * (E2 * g2 + rho * E1 / p2)
        + (g2 * E1 - rho * E2 / p2) * (4.0 * rho * PI2 + 1.0)
    )
    A3 = -(
        rho * E2 * (16.0 * PI2 * PI2 + 2.0 * rho * rho) / p2
        + 2.0 * rho * rho * g2 * E1
        + 4.0 * PI2 * rho * rho * E1 / p2
        + g2 * E2
    )
    A4 = (
        2.0 * g2 * (16.0 * p2 * p2 * a2 * a2 + 2.0 * rho * rho)
        - (4.0 * rho * p2 * a2 + 1.0) * rho
    )
    A5 = 2.0 * g2 * (4.0 * rho * p2 * a2 + 1.0) + 32.0 * p2 * p2 * rho
    A6 = 4.0 * rho * rho * g2 + (4.0 * rho * p2 * a2 + 1.0) * rho

    D1 = 2.0 * p2 * (3.0 * g2 * A1 + rho * A2 + g2 * A3) * (E1 * psi11 + E2 * psi21)
    D2 = 2.0 * p2 * (rho * A1 + g2 * A2 + 3.0 * rho * A3) * (E1 * psi21 - E2 * psi11)
    D3 = (
        A4 * (3.0 * psi11 + 2.0 * psi21 * rho / (p2 * g2))
        + A5 * psi21
        + A6 * (psi11 + 2.0 * psi21 * rho / (p1 * g2))
    )
    return HopfIngredients(
        omega_beta=omega_beta,
        delta_beta=delta_beta,
        K_beta=K_beta,
        L_beta=L_beta,
        E1=E1,
        E2=E2,
        psi11=psi11,
        psi21=psi21,
        A1=A1,
        A2=A2,
        A3=A3,
        A4=A4,
        A5=A5,
        A6=A6,
        D1=D1,
        D2=D2,
        D3=D3,
    )


@dataclass(frozen=True)
class HopfReport:
    """Transition number and classification at a complex onset."""

    b: float
    rho: float
    lambda_prime: float
    transition_type: str
    radius_coefficient: float
    R_c: float
    Jc: ModeIndex


def transition_number(
    params: FluidParams,
    geom: BoxGeometry,
    Jc: ModeIndex,
    R_c: float,
    rho: float,
) -> float:
    """The number b deciding the oscillatory transition."""
    ing = hopf_ingredients(params, geom, Jc, R_c, rho)
    p2, Q = params.p2, params.Q
    wn = wave_numbers(Jc, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq

    term1 = (ing.D1 + ing.D2) / (PI2 * (16.0 * PI2 * PI2 + 4.0 * rho * rho))
    term2 = (
        Q
        * PI
        * (PI2 - 3.0 * a2)
        * PI
        * R_c
        / (2.0 * p2 * g2 * (16.0 * p2 * p2 * a2 * a2 + 4.0 * rho * rho))
    ) * ing.D3
    b = term1 + term2
    ref = abs(term1) + abs(term2)
    if abs(b) < 1e-12 * ref:
        raise ZeroCoefficient(
            f"transition number {b:.6e} is degenerate against scale {ref:.3e}"
        )
    return b


def hopf_coefficient(params: FluidParams, geom: BoxGeometry) -> HopfReport:
    """Classify the oscillatory transition of the first instability.

    Locates the onset, requires it to be a simple roll-type complex
    pair, and evaluates the transition number.  b < 0 is Type-I: a
    stable periodic orbit x(t) ~ sqrt(lam/|b|) cos(rho t) branches for
    R > R_c, with lam = lambda_prime (R - R_c).  b > 0 is Type-II with
    an unstable orbit below onset.
    """
    if params.p2 >= 1.0:
        raise InvalidRegime(f"oscillatory onset needs p2 < 1, got p2={params.p2}")
    crit = critical_rayleigh(params, geom)
    if crit.kind != "complex":
        raise InvalidRegime(
            "onset is steady here (Q below the switch value); no Hopf transition"
        )
    if len(crit.critical_set) != 1:
        raise UnsupportedCriticalSet(
            f"critical pair is not simple: {[J.as_tuple() for J in crit.critical_set]}"
        )
    Jc = crit.critical_set[0]
    _require_roll(Jc)

    b = transition_number(params, geom, Jc, crit.R_c, crit.rho)
    slope = growth_rate_slope(params, geom, Jc, crit.R_c)
    return HopfReport(
        b=b,
        rho=crit.rho,
        lambda_prime=slope,
        transition_type="TypeI" if b < 0.0 else "TypeII",
        radius_coefficient=math.sqrt(1.0 / abs(b)),
        R_c=crit.R_c,
        Jc=Jc,
    )


# ---------------------------------------------------------------------------
# large-Q asymptotics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticReport:
    """Fit of the large-Q scaling of the critical quantities.

    exponent is the log-log slope of gamma^2 against Q; rho_sq_over_Q
    is evaluated at the largest Q of the sequence and approaches
    rho_sq_limit = p1 p2 (1 - p2) pi^2 / (p1 + 1).  index_switches
    lists consecutive Q pairs whose critical index differs: b jumps
    there and continuity only holds between switches.
    """

    Q_values: tuple[float, ...]
    gamma_sq: tuple[float, ...]
    rho_sq: tuple[float, ...]
    b_values: tuple[float, ...]
    exponent: float
    rho_sq_over_Q: float
    rho_sq_limit: float
    index_switches: tuple[tuple[float, float], ...]


def asymptotic_check(
    params: FluidParams, geom: BoxGeometry, Q_sequence
) -> AsymptoticReport:
    """Track the critical pair along a Q sweep and fit its scaling."""
    if params.p2 >= 1.0:
        raise InvalidRegime(f"the sweep needs p2 < 1, got p2={params.p2}")
    Qs: list[float] = []
    g2s: list[float] = []
    rho_sqs: list[float] = []
    bs: list[float] = []
    indices: list[ModeIndex] = []
    for Q in Q_sequence:
        sweep_params = FluidParams(p1=params.p1, p2=params.p2, Q=float(Q))
        crit = critical_rayleigh(sweep_params, geom)
        if crit.kind != "complex":
            raise InvalidRegime(f"onset is steady at Q={Q}; start the sweep above Q0")
        Jc = crit.critical_set[0]
        Qs.append(float(Q))
        g2s.append(wave_numbers(Jc, geom).gamma_sq)
        rho_sqs.append(crit.rho ** 2)
        bs.append(transition_number(sweep_params, geom, Jc, crit.R_c, crit.rho))
        indices.append(Jc)

    slope = float(
        np.polyfit(np.log(np.array(Qs)), np.log(np.array(g2s)), 1)[0]
    )
    switches = tuple(
        (Qs[i], Qs[i + 1])
        for i in range(len(Qs) - 1)
        if indices[i] != indices[i + 1]
    )
    p1, p2 = params.p1, params.p2
    return AsymptoticReport(
        Q_values=tuple(Qs),
        gamma_sq=tuple(g2s),
        rho_sq=tuple(rho_sqs),
        b_values=tuple(bs),
        exponent=slope,
        rho_sq_over_Q=rho_sqs[-1] / Qs[-1],
        rho_sq_limit=p1 * p2 * (1.0 - p2) * PI2 / (p1 + 1.0),
        index_switches=switches,
    )


# ---------------------------------------------------------------------------
# oracle path: raw interaction tables and the unreduced coefficient
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleTables:
    """Closed forms of the interaction tables, indexed [i-1][j-1].

    g1: eigenpair products against the adjoint mean-temperature mode;
    g2: against the adjoint doubled-frequency magnetic mode;
    c1: eigenmode x mean-temperature against the adjoint eigenpair;
    c2: eigenmode x magnetic mode against the adjoint eigenpair;
    d:  magnetic mode x eigenmode against the adjoint eigenpair.

    Conventions pinned by quadrature: the mean-temperature mode carries
    amplitude 2, both inside the product and as the adjoint it is paired
    with; the magnetic mode carries amplitude 1.  The c2 table is
    symmetric with zero diagonal: its 11 entry cancels identically
    between the magnetic-tension and kinetic-advection contributions,
    and the 21 entry equals the 12 entry.
    """

    g1: np.ndarray
    g2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    d: np.ndarray


def oracle_tables(
    params: FluidParams,
    geom: BoxGeometry,
    Jc: ModeIndex,
    R_c: float,
    rho: float,
) -> OracleTables:
    """Interaction tables from the closed forms, at beta = i rho."""
    _require_roll(Jc)
    p2, Q = params.p2, params.Q
    wn = wave_numbers(Jc, geom)
    a2, g2v = wn.alpha_sq, wn.gamma_sq

    beta = 1j * rho
    om = omega_of(beta, params, g2v)
    K = K_of(beta, params, geom, a2, g2v, R_c)
    L = L_of(beta, params, geom, a2, g2v, R_c)
    # conjugate-frequency values of the analytic factors
    ImK_bar = -K.imag
    Re_om_bar, Im_om_bar = om.real, -om.imag

    g1 = np.array(
        [
            [-L.real * om.real, -L.real * om.imag],
            [-L.imag * om.real, -L.imag * om.imag],
        ]
    )
    g2_tab = np.array(
        [
            [-4.0 * a2 * R_c * K.real / Q, -2.0 * a2 * R_c * K.imag / Q],
            [-2.0 * a2 * R_c * K.imag / Q, 0.0],
        ]
    )
    c1 = np.array(
        [
            [p2 * L.real * Re_om_bar, p2 * L.real * Im_om_bar],
            [p2 * L.imag * Re_om_bar, p2 * L.imag * Im_om_bar],
        ]
    )
    c2 = np.array(
        [
            [0.0, 2.0 * a2 * ImK_bar],
            [2.0 * a2 * ImK_bar, 0.0],
        ]
    )
    d = np.array(
        [
            [2.0 * (a2 - PI2) * K.real, (a2 - PI2) * ImK_bar],
            [(a2 - PI2) * K.imag, 0.0],
        ]
    )
    return OracleTables(g1=g1, g2=g2_tab, c1=c1, c2=c2, d=d)


def oracle_first_A(tables: OracleTables, params: FluidParams, a2: float, rho: float):
    """Normalised quadratic response coefficients from the raw tables."""
    p2 = params.p2
    g1, g2t = tables.g1, tables.g2
    den1 = 4.0 * PI2 * (16.0 * PI2 * PI2 + 4.0 * rho * rho)
    den2 = 4.0 * p2 * a2 * (16.0 * p2 * p2 * a2 * a2 + 4.0 * rho * rho)
    A1 = (
        g1[0][0] * (16.0 * PI2 * PI2 + 2.0 * rho * rho)
        + g1[1][1] * 2.0 * rho * rho
        - g1[0][1] * rho * 4.0 * PI2
        - g1[1][0]
    ) / den1
    A2 = (
        (g1[0][1] + g1[1][0]) * 16.0 * PI2 * PI2
        + (g1[0][0] - g1[1][1]) * (rho * 4.0 * PI2 + 1.0)
    ) / den1
    A3 = (
        g1[1][1] * (16.0 * PI2 * PI2 + 2.0 * rho * rho)
        + g1[0][0] * 2.0 * rho * rho
        + g1[1][0] * rho * 4.0 * PI2
        + g1[0][1]
    ) / den1
    A4 = (
        (16.0 * p2 * p2 * a2 * a2 + 2.0 * rho * rho) * g2t[0][0]
        - (4.0 * rho * p2 * a2 + 1.0) * g2t[0][1]
    ) / den2
    A5 = (
        (4.0 * rho * p2 * a2 + 1.0) * g2t[0][0]
        + 32.0 * p2 * p2 * a2 * a2 * g2t[0][1]
    ) / den2
    A6 = (
        2.0 * rho * rho * g2t[0][0] + (4.0 * rho * p2 * a2 + 1.0) * g2t[0][1]
    ) / den2
    return A1, A2, A3, A4, A5, A6


def oracle_first_coefficient(
    params: FluidParams,
    geom: BoxGeometry,
    Jc: ModeIndex,
    R_c: float,
    rho: float,
) -> float:
    """Unreduced transition coefficient from the raw tables.

    Combines the quadratic response with the projection tables and the
    eigenmode normalisation constants B and C obtained from quadrature
    pairings of the critical pair against its adjoints; same sign as
    the production transition number.
    """
    from . import fields

    _require_roll(Jc)
    wn = wave_numbers(Jc, geom)
    a2 = wn.alpha_sq

    tab = oracle_tables(params, geom, Jc, R_c, rho)
    A1, A2, A3, A4, A5, A6 = oracle_first_A(tab, params, a2, rho)

    psi_re, psi_im = fields.oscillatory_eigenfield(Jc, params, geom, R_c, 1j * rho)
    adj_re, adj_im = fields.oscillatory_eigenfield(
        Jc, params, geom, R_c, 1j * rho, conjugate=True
    )
    C = fields.inner_product(psi_im, adj_re) / fields.inner_product(psi_im, adj_im)
    # first adjoint combination psi*1 - C psi*2
    pairing = fields.inner_product(psi_re, adj_re) - C * fields.inner_product(
        psi_re, adj_im
    )
    B = 1.0 / pairing

    c1, c2, d = tab.c1, tab.c2, tab.d
    X = c2[0][0] + d[0][0] - C * (c2[0][1] + d[0][1])
    Y = c2[0][1] + d[0][1] + C * (c2[0][0] + d[0][0])
    cd21 = c2[1][0] + d[1][0]

    a30_1 = B * (A1 * (c1[0][0] - C * c1[0][1]) + A4 * X)
    a21_1 = B * (
        A1 * (c1[1][0] - C * c1[1][1])
        + A2 * (c1[0][0] - C * c1[0][1])
        + A4 * cd21
        + A5 * X
    )
    a12_1 = B * (
        A2 * (c1[1][0] - C * c1[1][1])
        + A3 * (c1[0][0] - C * c1[0][1])
        + A5 * cd21
        + A6 * X
    )
    a03_1 = B * (A3 * (c1[1][0] - C * c1[1][1]) + A6 * cd21)
    a30_2 = B * (A1 * (C * c1[0][0] + c1[0][1]) + A4 * Y)
    a21_2 = B * (
        A1 * (C * c1[1][0] + c1[1][1])
        + A2 * (C * c1[0][0] + c1[0][1])
        + A4 * C * cd21
        + A5 * Y
    )
    a12_2 = B * (
        A2 * (C * c1[1][0] + c1[1][1])
        + A3 * (C * c1[0][0] + c1[0][1])
        + A5 * C * cd21
        + A6 * Y
    )
    a03_2 = B * (A3 * (C * c1[1][0] + c1[1][1]) + A6 * C * cd21)

    del a21_1, a03_1, a30_2, a12_2  # full table assembled; not in the contraction
    return (3.0 * PI / 4.0) * (a30_1 + a03_2) + (PI / 4.0) * (a12_1 + a21_2)
