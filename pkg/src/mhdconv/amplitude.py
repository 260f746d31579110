"""Reduced amplitude dynamics near onset.

Three small ODE systems capture the local dynamics once the PDE has been
projected onto its critical modes:

* ``Cubic1D``    dx/dt = beta x + c x^3          (single real mode)
* ``HexSystem``  dx/dt = beta x + x (a x^2 + 2(2a-b) y^2)
                 dy/dt = beta y + y ((2a-b) x^2 + 2 b y^2)
                                                  (hexagonal mode pair)
* ``HopfNormalForm``
                 dx/dt = lam x + rho y + b x (x^2 + y^2)
                 dy/dt = -rho x + lam y + b y (x^2 + y^2)
                                                  (complex pair)

The hexagonal field leaves the four lines {x=0}, {y=0}, {x=2y}, {x=-2y}
invariant; its nontrivial steady states sit on them, and
``steady_states`` lists each family with location and Jacobian spectrum:

    x-axis    +-(sqrt(-beta/a), 0)        eigenvalues (-2b, -b(a-b)/a)
    y-axis    +-(0, sqrt(-beta/(2b)))     eigenvalues (-2b, -2b(a-b)/b)
    diagonals (-1)^i h (2, +-1),
              h = sqrt(-beta/(2(4a-b)))   eigenvalues (-2b, 4b(a-b)/(4a-b))

(b denoting beta inside the eigenvalue lists).  Integration is a fixed
step classical Runge-Kutta scheme: reproducible trajectories matter more
here than adaptive error control, and invariant lines are preserved to
rounding because every stage of the scheme stays on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Diverged, ZeroCoefficient

ESCAPE_NORM = 1e6
CONVERGENCE_RATE = 1e-10
CONVERGENCE_SAMPLES = 100


@dataclass(frozen=True)
class Cubic1D:
    """dx/dt = beta x + coefficient x^3."""

    beta: float
    coefficient: float

    dim = 1

    def rhs(self, state: np.ndarray) -> np.ndarray:
        x = state[..., 0]
        return np.stack([self.beta * x + self.coefficient * x ** 3], axis=-1)


@dataclass(frozen=True)
class HexSystem:
    """Two-mode cubic system of a hexagonal critical pair."""

    a: float
    b: float
    beta: float

    dim = 2

    def rhs(self, state: np.ndarray) -> np.ndarray:
        a, b, beta = self.a, self.b, self.beta
        x, y = state[..., 0], state[..., 1]
        fx = beta * x + x * (a * x * x + 2.0 * (2.0 * a - b) * y * y)
        fy = beta * y + y * ((2.0 * a - b) * x * x + 2.0 * b * y * y)
        return np.stack([fx, fy], axis=-1)


@dataclass(frozen=True)
class HopfNormalForm:
    """Planar normal form of a nondegenerate Hopf point."""

    lam: float
    rho: float
    b: float

    dim = 2

    def rhs(self, state: np.ndarray) -> np.ndarray:
        x, y = state[..., 0], state[..., 1]
        r2 = x * x + y * y
        fx = self.lam * x + self.rho * y + self.b * x * r2
        fy = -self.rho * x + self.lam * y + self.b * y * r2
        return np.stack([fx, fy], axis=-1)


# ---------------------------------------------------------------------------
# steady states of the hexagonal system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SteadyPoint:
    """One nontrivial steady state with its Jacobian spectrum."""

    family: str
    location: tuple[float, float]
    eigenvalues: tuple[float, float]
    stable: bool


def steady_states(a: float, b: float, beta: float) -> tuple[SteadyPoint, ...]:
    """All nontrivial steady states of HexSystem(a, b, beta).

    A family is present exactly when its squared amplitude is positive;
    with beta = 0 everything collapses onto the origin and the tuple is
    empty.  Degenerate coefficient combinations (any of a, b, a-b, 4a-b
    zero) raise ZeroCoefficient since amplitudes or spectra blow up.
    """
    ref = max(abs(a), abs(b))
    for value, name in ((a, "a"), (b, "b"), (a - b, "a - b"), (4.0 * a - b, "4a - b")):
        if abs(value) <= 1e-12 * ref or ref == 0.0:
            raise ZeroCoefficient(f"{name} = {value:.6e} is degenerate")
    if beta == 0.0:
        return ()

    states: list[SteadyPoint] = []

    amp2 = -beta / a
    if amp2 > 0.0:
        r = math.sqrt(amp2)
        eigs = (-2.0 * beta, -beta * (a - b) / a)
        stable = max(eigs) < 0.0
        for s in (1.0, -1.0):
            states.append(SteadyPoint("x-axis", (s * r, 0.0), eigs, stable))

    amp2 = -beta / (2.0 * b)
    if amp2 > 0.0:
        r = math.sqrt(amp2)
        eigs = (-2.0 * beta, -2.0 * beta * (a - b) / b)
        stable = max(eigs) < 0.0
        for s in (1.0, -1.0):
            states.append(SteadyPoint("y-axis", (0.0, s * r), eigs, stable))

    amp2 = -beta / (2.0 * (4.0 * a - b))
    if amp2 > 0.0:
        h = math.sqrt(amp2)
        eigs = (-2.0 * beta, 4.0 * beta * (a - b) / (4.0 * a - b))
        stable = max(eigs) < 0.0
        for sx in (1.0, -1.0):
            for sy in (1.0, -1.0):
                states.append(
                    SteadyPoint("diagonal", (sx * 2.0 * h, sx * sy * h), eigs, stable)
                )
    return tuple(states)


def numeric_jacobian(system, point, h: float = 1e-6) -> np.ndarray:
    """Centered-difference Jacobian of system.rhs at a point."""
    point = np.asarray(point, dtype=float)
    n = point.size
    jac = np.empty((n, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = h
        jac[:, k] = (system.rhs(point + e) - system.rhs(point - e)) / (2.0 * h)
    return jac


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    """Fixed-step trajectory samples; states[i] is the state at times[i]."""

    times: np.ndarray
    states: np.ndarray
    step: float


def _rk4_step(system, state: np.ndarray, step: float) -> np.ndarray:
    # escape past the overflow guard is legitimate dynamics, not an error
    with np.errstate(over="ignore", invalid="ignore"):
        k1 = system.rhs(state)
        k2 = system.rhs(state + 0.5 * step * k1)
        k3 = system.rhs(state + 0.5 * step * k2)
        k4 = system.rhs(state + step * k3)
        return state + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _as_state(system, ic) -> np.ndarray:
    state = np.atleast_1d(np.asarray(ic, dtype=float))
    if state.shape != (system.dim,):
        raise ValueError(f"initial condition must have shape ({system.dim},)")
    return state


def integrate(
    system,
    ic,
    step: float = 1e-3,
    n_steps: int = 10_000,
    sample_every: int = 1,
) -> Trajectory:
    """Integrate with the classical fixed-step 4th-order scheme.

    Raises Diverged as soon as the state norm exceeds 1e6; partial
    output is deliberately withheld so a Diverged run never masquerades
    as data.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    if sample_every < 1:
        raise ValueError("sample_every must be at least 1")
    state = _as_state(system, ic)
    times = [0.0]
    states = [state.copy()]
    for i in range(1, n_steps + 1):
        state = _rk4_step(system, state, step)
        if not np.all(np.isfinite(state)) or np.linalg.norm(state) > ESCAPE_NORM:
            raise Diverged(f"state escaped at t = {i * step:.6g}")
        if i % sample_every == 0:
            times.append(i * step)
            states.append(state.copy())
    return Trajectory(times=np.array(times), states=np.array(states), step=step)


def settle(
    system,
    ic,
    step: float = 1e-3,
    max_steps: int = 2_000_000,
) -> tuple[str, np.ndarray]:
    """Integrate until the fate of the trajectory is clear.

    Returns (fate, final_state) with fate one of "converged" (state
    displacement rate below 1e-10 for 100 consecutive steps), "escaped"
    (norm above 1e6) or "undecided" (step budget exhausted).
    """
    state = _as_state(system, ic)
    quiet = 0
    for _ in range(max_steps):
        new = _rk4_step(system, state, step)
        if not np.all(np.isfinite(new)) or np.linalg.norm(new) > ESCAPE_NORM:
            return "escaped", state
        if np.linalg.norm(new - state) / step < CONVERGENCE_RATE:
            quiet += 1
            if quiet >= CONVERGENCE_SAMPLES:
                return "converged", new
        else:
            quiet = 0
        state = new
    return "undecided", state


# ---------------------------------------------------------------------------
# sector probe for the mixed (Type-III) geometry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SectorReport:
    """Fate of a fan of rays and the captured angular sectors.

    angles[i] is the launch angle of ray i, fates[i] its outcome
    ("captured" or "escaped").  sectors lists (lo, hi) angle intervals,
    in radians, whose rays are captured; boundaries are refined by
    bisection to 1e-4 rad.  hi < lo means the sector crosses angle zero.
    """

    angles: np.ndarray
    fates: tuple[str, ...]
    sectors: tuple[tuple[float, float], ...]


def _ray_fates(system, angles: np.ndarray, radius: float, step: float,
               max_steps: int) -> np.ndarray:
    """Vectorised settle over a batch of rays; True means captured."""
    states = radius * np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    active = np.ones(len(angles), dtype=bool)
    captured = np.zeros(len(angles), dtype=bool)
    quiet = np.zeros(len(angles), dtype=int)
    for _ in range(max_steps):
        if not active.any():
            break
        new = _rk4_step(system, states[active], step)
        with np.errstate(over="ignore", invalid="ignore"):
            bad = ~np.all(np.isfinite(new), axis=-1) | (
                np.linalg.norm(new, axis=-1) > ESCAPE_NORM
            )
            rate = np.linalg.norm(new - states[active], axis=-1) / step
        idx = np.flatnonzero(active)
        quiet[idx] = np.where(rate < CONVERGENCE_RATE, quiet[idx] + 1, 0)
        states[idx] = np.where(bad[:, None], states[idx], new)
        done_conv = quiet[idx] >= CONVERGENCE_SAMPLES
        captured[idx[done_conv]] = True
        active[idx[bad | done_conv]] = False
    return captured


def sector_probe(
    a: float,
    b: float,
    beta: float,
    n_rays: int = 720,
    radius: float = 1e-3,
    step: float = 5e-2,
    max_steps: int = 200_000,
    boundary_tol: float = 1e-4,
) -> SectorReport:
    """Launch a fan of rays from a small circle and map captured sectors.

    Meaningful in the mixed geometry (a < 0 < b, beta > 0 small) where
    attraction is sectorial; each ray either converges to a steady state
    (captured) or blows past the overflow guard (escaped).  Adjacent
    rays of opposite fate bracket a basin boundary, which is then
    bisected to boundary_tol radians; each bisection level runs all
    boundaries as one integrator batch.
    """
    system = HexSystem(a=a, b=b, beta=beta)
    angles = np.linspace(0.0, 2.0 * math.pi, n_rays, endpoint=False)
    captured = _ray_fates(system, angles, radius, step, max_steps)

    sectors: list[tuple[float, float]] = []
    if captured.all():
        sectors.append((0.0, 2.0 * math.pi))
    elif captured.any():
        # (outside, inside) brackets, two per captured arc
        arcs = []
        for s in np.flatnonzero(captured & ~np.roll(captured, 1)):
            e = int(s)
            while captured[(e + 1) % n_rays]:
                e = (e + 1) % n_rays
            arcs.append((int(s), e))
        brackets = []
        for s, e in arcs:
            brackets.append(_unwrap(angles[(s - 1) % n_rays], angles[s]))
            brackets.append(_unwrap(angles[(e + 1) % n_rays], angles[e]))
        while max(abs(i - o) for o, i in brackets) > boundary_tol:
            mids = np.array([0.5 * (o + i) for o, i in brackets])
            mid_captured = _ray_fates(system, mids, radius, step, max_steps)
            brackets = [
                (o, m) if hit else (m, i)
                for (o, i), m, hit in zip(brackets, mids, mid_captured)
            ]
        edges = [0.5 * (o + i) for o, i in brackets]
        for k in range(len(arcs)):
            sectors.append((edges[2 * k], edges[2 * k + 1]))
    fates = tuple("captured" if c else "escaped" for c in captured)
    return SectorReport(angles=angles, fates=fates, sectors=tuple(sectors))


def _unwrap(outside: float, inside: float) -> tuple[float, float]:
    """Pull the outside angle onto the same branch as the inside one."""
    if outside - inside > math.pi:
        outside -= 2.0 * math.pi
    elif inside - outside > math.pi:
        outside += 2.0 * math.pi
    return outside, inside
