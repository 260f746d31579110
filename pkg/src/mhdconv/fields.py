"""Trigonometric eigenfields and the Gauss-Legendre trilinear oracle.

Every field in the free-slip box is a sum of separable trigonometric
monomials.  A velocity/magnetic/temperature triple (u, H, T) built from a
mode index (j1, j2, j3) has components

    u1 ~ sin(j1 pi x1/L1) cos(j2 pi x2/L2) cos(j3 pi x3),
    u2 ~ cos sin cos,           u3 ~ cos cos sin,
    H1 ~ sin cos sin,           H2 ~ cos sin sin,       H3 ~ cos cos cos,
    T  ~ cos cos sin,

with the horizontal amplitudes slaved to the vertical ones so that both
u and H are divergence free:

    U = -(j1 pi/L1)(j3 pi/alpha^2) W,    V = -(j2 pi/L2)(j3 pi/alpha^2) W,
    H1 = +(j1 pi/L1)(j3 pi/alpha^2) H3,  H2 = +(j2 pi/L2)(j3 pi/alpha^2) H3.

This module represents such fields exactly (lists of monomial terms per
component), and integrates products of them with tensor Gauss-Legendre
quadrature.  A product of trigonometric monomials with total axis frequency
m is integrated to machine precision by 2m+8 nodes on that axis (a little
beyond the 2x-mode-order threshold, where Gauss-Legendre error for
trigonometric integrands falls off a cliff); that rule sizes every
quadrature here.

The module doubles as the numerical oracle for all closed-form inner
products used by the transition modules:

* ``inner_product`` -- the plain L2 pairing summed over all seven
  components.  No weights: the closed forms for the eigenvector/conjugate
  pairing are reproduced by the unweighted product.
* ``trilinear_quadrature`` -- the nonlinear interaction form

      G(f1, f2, f3) = Int  [ (Q p1/p2)(H^1.grad)H^2 - (u^1.grad)u^2 ] . u^3
                         + [ (H^1.grad)u^2 - (u^1.grad)H^2 ] . H^3
                         - (u^1.grad)T^2  T^3

  and its symmetrisation ``trilinear_symmetrized``.
* ``linear_operator_pairing`` -- <A f, g> for the linearised operator

      A(u, H, T) = ( p1(Lap u + R T e3 + Q d3 H),
                     p2(Lap H + d3 u),
                     Lap T + u3 ),

  valid whenever g is solenoidal (the pressure gradient drops out of the
  pairing), which is the weak form used by the reduction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BranchMismatch
from .params import PI, BoxGeometry, FluidParams, ModeIndex, wave_numbers

VELOCITY = ("u1", "u2", "u3")
MAGNETIC = ("H1", "H2", "H3")
ALL_COMPONENTS = VELOCITY + MAGNETIC + ("T",)

# A factor is ("c"|"s", n): cos or sin of (n pi / axis_length) * coordinate.
Factor = tuple[str, int]
# A term is (coefficient, (factor_x1, factor_x2, factor_x3)).
Term = tuple[complex, tuple[Factor, Factor, Factor]]


def _axis_lengths(geom: BoxGeometry) -> tuple[float, float, float]:
    return (geom.L1, geom.L2, 1.0)


@dataclass(frozen=True)
class ModeField:
    """A (u, H, T) field stored as trigonometric monomials per component."""

    geom: BoxGeometry
    terms: Mapping[str, tuple[Term, ...]]

    def component(self, name: str) -> tuple[Term, ...]:
        return self.terms.get(name, ())

    def scaled(self, c: complex) -> "ModeField":
        if c == 0:
            return ModeField(self.geom, {})
        scaled = {
            comp: tuple((c * coef, facs) for coef, facs in tlist)
            for comp, tlist in self.terms.items()
        }
        return ModeField(self.geom, scaled)

    def plus(self, other: "ModeField") -> "ModeField":
        if self.geom != other.geom:
            raise ValueError("fields live on different boxes")
        merged: dict[str, tuple[Term, ...]] = dict(self.terms)
        for comp, tlist in other.terms.items():
            merged[comp] = merged.get(comp, ()) + tlist
        return ModeField(self.geom, merged)

    def real_part(self) -> "ModeField":
        return self._map_coef(lambda c: complex(c).real)

    def imag_part(self) -> "ModeField":
        return self._map_coef(lambda c: complex(c).imag)

    def _map_coef(self, fn) -> "ModeField":
        mapped = {}
        for comp, tlist in self.terms.items():
            kept = tuple((fn(coef), facs) for coef, facs in tlist)
            kept = tuple((c, f) for c, f in kept if c != 0)
            if kept:
                mapped[comp] = kept
        return ModeField(self.geom, mapped)

    def evaluate(self, name: str, x1, x2, x3):
        """Sample one component on broadcastable coordinate arrays."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        x3 = np.asarray(x3, dtype=float)
        lengths = _axis_lengths(self.geom)
        out = np.zeros(np.broadcast(x1, x2, x3).shape, dtype=complex)
        for coef, facs in self.component(name):
            val = np.ones_like(out, dtype=float)
            for (kind, n), L, x in zip(facs, lengths, (x1, x2, x3)):
                val = val * _trig(kind, n, L, x)
            out = out + coef * val
        if np.allclose(out.imag, 0.0):
            return out.real
        return out


def _trig(kind: str, n: int, L: float, x):
    ang = (n * PI / L) * np.asarray(x, dtype=float)
    return np.cos(ang) if kind == "c" else np.sin(ang)


def _term(coef: complex, f1: Factor, f2: Factor, f3: Factor) -> Term | None:
    # sin(0 * x) is identically zero; such terms are dropped at build time
    if coef == 0:
        return None
    for kind, n in (f1, f2, f3):
        if kind == "s" and n == 0:
            return None
    return (coef, (f1, f2, f3))


def _build(geom: BoxGeometry, **component_terms) -> ModeField:
    terms = {}
    for comp, tlist in component_terms.items():
        kept = tuple(t for t in tlist if t is not None)
        if kept:
            terms[comp] = kept
    return ModeField(geom, terms)


def _mode_stack(
    J: Sequence[int],
    geom: BoxGeometry,
    W: complex = 0.0,
    Theta: complex = 0.0,
    H3: complex = 0.0,
) -> ModeField:
    """Assemble the seven components of a single-mode field.

    W, Theta, H3 are the vertical-velocity, temperature and vertical
    magnetic amplitudes; the horizontal amplitudes follow from the
    divergence-free constraints.  Velocity requires j3 != 0 and a
    nontrivial planform; both of those are the caller's responsibility.
    """
    j1, j2, j3 = J
    c1: Factor = ("c", j1)
    c2: Factor = ("c", j2)
    c3: Factor = ("c", j3)
    s1: Factor = ("s", j1)
    s2: Factor = ("s", j2)
    s3: Factor = ("s", j3)
    a2 = (j1 * PI / geom.L1) ** 2 + (j2 * PI / geom.L2) ** 2
    U = V = 0.0 + 0.0j
    B1 = B2 = 0.0 + 0.0j
    if a2 > 0.0 and j3 != 0:
        U = -(j1 * PI / geom.L1) * (j3 * PI / a2) * W
        V = -(j2 * PI / geom.L2) * (j3 * PI / a2) * W
        B1 = +(j1 * PI / geom.L1) * (j3 * PI / a2) * H3
        B2 = +(j2 * PI / geom.L2) * (j3 * PI / a2) * H3
    return _build(
        geom,
        u1=[_term(U, s1, c2, c3)],
        u2=[_term(V, c1, s2, c3)],
        u3=[_term(W, c1, c2, s3)],
        H1=[_term(B1, s1, c2, s3)],
        H2=[_term(B2, c1, s2, s3)],
        H3=[_term(H3, c1, c2, c3)],
        T=[_term(Theta, c1, c2, s3)],
    )


def critical_eigenfield(
    J: ModeIndex,
    params: FluidParams,
    geom: BoxGeometry,
    conjugate: bool = False,
) -> ModeField:
    """Eigenvector (or conjugate eigenvector) of the zero eigenvalue.

    At R = R_steady(J) the kernel vector has amplitudes
    (W, Theta, H3) = (gamma^2, 1, j3 pi); the conjugate kernel vector has
    (p2 gamma^2, p1 p2 R, -p1 Q j3 pi).  Any scalar multiple works; these
    normalisations are the ones every closed form downstream assumes.
    """
    wn = wave_numbers(J, geom)
    g2 = wn.gamma_sq
    jp = J.j3 * PI
    if not conjugate:
        return _mode_stack(J.as_tuple(), geom, W=g2, Theta=1.0, H3=jp)
    R = (g2 / wn.alpha_sq) * (g2 * g2 + params.Q * jp * jp)
    return _mode_stack(
        J.as_tuple(),
        geom,
        W=params.p2 * g2,
        Theta=params.p1 * params.p2 * R,
        H3=-params.p1 * params.Q * jp,
    )


def oscillatory_eigenfield(
    J: ModeIndex,
    params: FluidParams,
    geom: BoxGeometry,
    R: float,
    beta: complex,
    conjugate: bool = False,
) -> tuple[ModeField, ModeField]:
    """Real and imaginary parts of the complex eigenvector at eigenvalue beta.

    Amplitudes (and their conjugate-problem counterparts):

        W  = (beta/p2 + gamma^2) alpha^2 R      W* = (conj(beta) + p2 gamma^2) alpha^2 / p1
        Th = omega(beta) gamma^2                Th* = p2 omega(conj(beta)) gamma^2
        H3 = alpha^2 j3 pi R                    H3* = -j3 pi Q alpha^2

    with omega(beta) = (beta/p2 + gamma^2)(beta/p1 + gamma^2) + Q (j3 pi)^2.
    The caller must pass a (R, beta) pair that actually solves the
    characteristic cubic for J.  Returned as (real part, imaginary part);
    quadratures stay real that way.
    """
    wn = wave_numbers(J, geom)
    a2, g2 = wn.alpha_sq, wn.gamma_sq
    jp = J.j3 * PI
    p1, p2, Q = params.p1, params.p2, params.Q

    def omega(b: complex) -> complex:
        return (b / p2 + g2) * (b / p1 + g2) + Q * jp * jp

    if not conjugate:
        W = (beta / p2 + g2) * a2 * R
        Theta = omega(beta) * g2
        H3 = a2 * jp * R
    else:
        bc = beta.conjugate()
        W = (bc + p2 * g2) * a2 / p1
        Theta = p2 * omega(bc) * g2
        H3 = -jp * Q * a2
    f = _mode_stack(J.as_tuple(), geom, W=W, Theta=Theta, H3=H3)
    return f.real_part(), f.imag_part()


def laplacian_eigenfield(
    S: Sequence[int],
    geom: BoxGeometry,
    branch: str,
) -> ModeField:
    """Unit-amplitude diffusion eigenvector e_S for one branch.

    Branch availability depends on the index:

    * planform only (s3 = 0, s1^2+s2^2 != 0): ``magnetic`` only,
    * vertical only (s1 = s2 = 0, s3 != 0): ``temperature`` only,
    * full (both nonzero): ``velocity``, ``temperature`` and ``magnetic``.

    Anything else raises BranchMismatch: a velocity field of the excluded
    shapes cannot be solenoidal, and a vertical-only magnetic branch would
    violate div H = 0.
    """
    s1, s2, s3 = S
    if s1 < 0 or s2 < 0 or s3 < 0 or (s1 == 0 and s2 == 0 and s3 == 0):
        raise BranchMismatch(f"index {tuple(S)} labels no diffusion mode")
    planar = s1 * s1 + s2 * s2 > 0
    if branch == "temperature":
        if s3 == 0:
            raise BranchMismatch("temperature branch needs s3 >= 1")
        return _mode_stack((s1, s2, s3), geom, Theta=1.0)
    if branch == "magnetic":
        if not planar:
            raise BranchMismatch("magnetic branch needs a planform (s1,s2) != 0")
        return _mode_stack((s1, s2, s3), geom, H3=1.0)
    if branch == "velocity":
        if not planar or s3 == 0:
            raise BranchMismatch("velocity branch needs s3 >= 1 and a planform")
        return _mode_stack((s1, s2, s3), geom, W=1.0)
    raise BranchMismatch(f"unknown branch {branch!r}")


def available_branches(S: Sequence[int]) -> tuple[str, ...]:
    s1, s2, s3 = S
    planar = s1 * s1 + s2 * s2 > 0
    if planar and s3 != 0:
        return ("velocity", "temperature", "magnetic")
    if planar:
        return ("magnetic",)
    if s3 != 0:
        return ("temperature",)
    return ()


# ---------------------------------------------------------------------------
# quadrature kernel


@lru_cache(maxsize=None)
def _gauss_rule(L: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(m)
    return 0.5 * L * (x + 1.0), 0.5 * L * w


@lru_cache(maxsize=4096)
def _axis_integral(facs: tuple[Factor, ...], L: float) -> float:
    """Integral over [0, L] of a product of trigonometric monomials."""
    total_freq = sum(n for _, n in facs)
    x, w = _gauss_rule(L, 2 * total_freq + 8)
    v = np.ones_like(x)
    for kind, n in facs:
        if n == 0 and kind == "c":
            continue
        v = v * _trig(kind, n, L, x)
    return float(w @ v)


def _product_integral(geom: BoxGeometry, *term_lists: Iterable[Term]) -> complex:
    lengths = _axis_lengths(geom)
    total: complex = 0.0
    for combo in itertools.product(*term_lists):
        coef: complex = 1.0
        for c, _ in combo:
            coef *= c
        if coef == 0:
            continue
        block = coef
        for axis in range(3):
            facs = tuple(t[1][axis] for t in combo)
            block *= _axis_integral(facs, lengths[axis])
        total += block
    return total


def _as_real(value: complex) -> float:
    value = complex(value)
    if abs(value.imag) > 1e-9 * max(1.0, abs(value.real)):
        raise ValueError("pairing of real fields produced a complex value")
    return value.real


def _derivative_terms(
    terms: Iterable[Term], axis: int, geom: BoxGeometry
) -> tuple[Term, ...]:
    lengths = _axis_lengths(geom)
    out = []
    for coef, facs in terms:
        kind, n = facs[axis]
        if n == 0:
            continue
        rate = n * PI / lengths[axis]
        new_factor: Factor
        if kind == "c":
            new_factor, scale = ("s", n), -rate
        else:
            new_factor, scale = ("c", n), +rate
        new_facs = facs[:axis] + (new_factor,) + facs[axis + 1 :]
        out.append((coef * scale, new_facs))
    return tuple(out)


def _laplacian_terms(terms: Iterable[Term], geom: BoxGeometry) -> tuple[Term, ...]:
    lengths = _axis_lengths(geom)
    out = []
    for coef, facs in terms:
        k2 = sum((n * PI / L) ** 2 for (_, n), L in zip(facs, lengths))
        if coef * k2 != 0:
            out.append((-k2 * coef, facs))
    return tuple(out)


# ---------------------------------------------------------------------------
# pairings


def inner_product(f: ModeField, g: ModeField) -> float:
    """Unweighted L2 pairing over all seven components."""
    if f.geom != g.geom:
        raise ValueError("fields live on different boxes")
    total = 0.0
    for comp in ALL_COMPONENTS:
        total += _product_integral(f.geom, f.component(comp), g.component(comp))
    return _as_real(total)


def trilinear_quadrature(
    f1: ModeField, f2: ModeField, f3: ModeField, params: FluidParams
) -> float:
    """The interaction form G(f1, f2, f3) by tensor Gauss-Legendre quadrature."""
    if not (f1.geom == f2.geom == f3.geom):
        raise ValueError("fields live on different boxes")
    geom = f1.geom
    qf = params.Q * params.p1 / params.p2
    total: complex = 0.0
    for out in range(3):
        u_out = f3.component(VELOCITY[out])
        h_out = f3.component(MAGNETIC[out])
        for i in range(3):
            du = _derivative_terms(f2.component(VELOCITY[out]), i, geom)
            dh = _derivative_terms(f2.component(MAGNETIC[out]), i, geom)
            adv_u = f1.component(VELOCITY[i])
            adv_h = f1.component(MAGNETIC[i])
            if u_out:
                total += qf * _product_integral(geom, adv_h, dh, u_out)
                total -= _product_integral(geom, adv_u, du, u_out)
            if h_out:
                total += _product_integral(geom, adv_h, du, h_out)
                total -= _product_integral(geom, adv_u, dh, h_out)
    t_out = f3.component("T")
    if t_out:
        for i in range(3):
            dt = _derivative_terms(f2.component("T"), i, geom)
            total -= _product_integral(geom, f1.component(VELOCITY[i]), dt, t_out)
    return _as_real(total)


def trilinear_symmetrized(
    f1: ModeField, f2: ModeField, f3: ModeField, params: FluidParams
) -> float:
    """G_s(f1, f2, f3) = G(f1, f2, f3) + G(f2, f1, f3)."""
    return trilinear_quadrature(f1, f2, f3, params) + trilinear_quadrature(
        f2, f1, f3, params
    )


def linear_operator_pairing(
    f: ModeField, g: ModeField, params: FluidParams, R: float
) -> float:
    """<A f, g> for the linearised operator, with g solenoidal.

    The pressure gradient in the momentum equation pairs to zero against a
    divergence-free g, so it is omitted; callers must only ever pass test
    fields built by this module (which are solenoidal by construction).
    """
    if f.geom != g.geom:
        raise ValueError("fields live on different boxes")
    geom = f.geom
    p1, p2, Q = params.p1, params.p2, params.Q
    total: complex = 0.0
    for j in range(3):
        gu = g.component(VELOCITY[j])
        gh = g.component(MAGNETIC[j])
        if gu:
            total += p1 * _product_integral(
                geom, _laplacian_terms(f.component(VELOCITY[j]), geom), gu
            )
            total += p1 * Q * _product_integral(
                geom, _derivative_terms(f.component(MAGNETIC[j]), 2, geom), gu
            )
            if j == 2:
                total += p1 * R * _product_integral(geom, f.component("T"), gu)
        if gh:
            total += p2 * _product_integral(
                geom, _laplacian_terms(f.component(MAGNETIC[j]), geom), gh
            )
            total += p2 * _product_integral(
                geom, _derivative_terms(f.component(VELOCITY[j]), 2, geom), gh
            )
    gt = g.component("T")
    if gt:
        total += _product_integral(geom, _laplacian_terms(f.component("T"), geom), gt)
        total += _product_integral(geom, f.component("u3"), gt)
    return _as_real(total)


# ---------------------------------------------------------------------------
# residual diagnostics (used by the test suite)


def divergence_residual(f: ModeField, which: str = "u", samples: int = 6) -> float:
    """Max |div| of the velocity or magnetic part on an interior grid."""
    comps = VELOCITY if which == "u" else MAGNETIC
    geom = f.geom
    pts = [np.linspace(0.13, 0.91, samples) * L for L in _axis_lengths(geom)]
    x1, x2, x3 = np.meshgrid(*pts, indexing="ij")
    div = np.zeros_like(x1, dtype=complex)
    for axis, comp in enumerate(comps):
        dterms = _derivative_terms(f.component(comp), axis, geom)
        probe = ModeField(geom, {comp: dterms})
        div = div + probe.evaluate(comp, x1, x2, x3)
    return float(np.max(np.abs(div)))


def boundary_residual(f: ModeField, samples: int = 5) -> float:
    """Max violation of the free-slip/insulating wall conditions.

    Checks, on each face, the quantities that must vanish there:
    side walls x1 = 0, L1: u1, H1, d1(u2), d1(u3), d1(T), d1(H2), d1(H3);
    the x2 faces by symmetry; top and bottom x3 = 0, 1: u3, T, H1, H2,
    d3(u1), d3(u2), d3(H3).
    """
    geom = f.geom
    lengths = _axis_lengths(geom)
    dirichlet = {0: ("u1", "H1"), 1: ("u2", "H2"), 2: ("u3", "T", "H1", "H2")}
    neumann = {
        0: ("u2", "u3", "T", "H2", "H3"),
        1: ("u1", "u3", "T", "H1", "H3"),
        2: ("u1", "u2", "H3"),
    }
    worst = 0.0
    grid = np.linspace(0.0, 1.0, samples)
    for axis in range(3):
        others = [i for i in range(3) if i != axis]
        g1, g2 = np.meshgrid(
            grid * lengths[others[0]], grid * lengths[others[1]], indexing="ij"
        )
        for wall in (0.0, lengths[axis]):
            coords: list[np.ndarray] = [None, None, None]  # type: ignore
            coords[axis] = np.full_like(g1, wall)
            coords[others[0]] = g1
            coords[others[1]] = g2
            for comp in dirichlet[axis]:
                vals = f.evaluate(comp, *coords)
                worst = max(worst, float(np.max(np.abs(vals))))
            for comp in neumann[axis]:
                dterms = _derivative_terms(f.component(comp), axis, geom)
                probe = ModeField(geom, {comp: dterms})
                vals = probe.evaluate(comp, *coords)
                worst = max(worst, float(np.max(np.abs(vals))))
    return worst


# ---------------------------------------------------------------------------
# pattern sampling


@dataclass(frozen=True)
class FieldSnapshot:
    """Planform samples of a mode combination at one vertical level."""

    nx: int
    ny: int
    z: float
    x1: np.ndarray
    x2: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    w: np.ndarray
    T: np.ndarray
    H3: np.ndarray

    def rows(self):
        """Yield (x1, x2, u1, u2, w, T, H3) row-major: x1 outer, x2 inner."""
        for i in range(self.nx):
            for j in range(self.ny):
                yield (
                    float(self.x1[i]),
                    float(self.x2[j]),
                    float(self.u1[i, j]),
                    float(self.u2[i, j]),
                    float(self.w[i, j]),
                    float(self.T[i, j]),
                    float(self.H3[i, j]),
                )


def pattern_snapshot(
    geom: BoxGeometry,
    combination: Sequence[tuple[float, ModeField]],
    z: float,
    nx: int = 24,
    ny: int = 24,
) -> FieldSnapshot:
    """Sample a weighted superposition on an inclusive [0,L1]x[0,L2] grid."""
    if not 0.0 <= z <= 1.0:
        raise ValueError("z level must lie in [0, 1]")
    if nx < 2 or ny < 2:
        raise ValueError("grid needs at least 2 points per axis")
    x1 = np.linspace(0.0, geom.L1, nx)
    x2 = np.linspace(0.0, geom.L2, ny)
    X1, X2 = np.meshgrid(x1, x2, indexing="ij")
    X3 = np.full_like(X1, z)
    arrays = {comp: np.zeros_like(X1) for comp in ("u1", "u2", "u3", "T", "H3")}
    for weight, field in combination:
        if field.geom != geom:
            raise ValueError("fields live on different boxes")
        for comp in arrays:
            vals = field.evaluate(comp, X1, X2, X3)
            arrays[comp] = arrays[comp] + weight * np.real(vals)
    return FieldSnapshot(
        nx=nx,
        ny=ny,
        z=z,
        x1=x1,
        x2=x2,
        u1=arrays["u1"],
        u2=arrays["u2"],
        w=arrays["u3"],
        T=arrays["T"],
        H3=arrays["H3"],
    )
