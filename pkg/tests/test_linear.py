"""Spectral side: growth-rate cubic, onset values, switch value in Q."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhdconv import linear
from mhdconv.errors import InvalidRegime, NegativeFrequencySquared
from mhdconv.params import BoxGeometry, FluidParams, ModeIndex, wave_numbers

STEADY = FluidParams(1.0, 2.0, 0.0)


@settings(max_examples=80, deadline=None)
@given(
    j1=st.integers(0, 4),
    j2=st.integers(0, 4),
    j3=st.integers(1, 3),
    p1=st.floats(0.1, 10.0),
    p2=st.floats(0.1, 10.0),
    Q=st.floats(0.0, 1000.0),
    L1=st.floats(0.5, 4.0),
    L2=st.floats(0.5, 4.0),
    R=st.floats(0.0, 1e6),
)
def test_cubic_roots_satisfy_vieta(j1, j2, j3, p1, p2, Q, L1, L2, R):
    if j1 == 0 and j2 == 0:
        j1 = 1
    J = ModeIndex(j1, j2, j3)
    params = FluidParams(p1, p2, Q)
    geom = BoxGeometry(L1, L2)
    c = linear.cubic_coefficients(J, params, geom, R)
    roots = linear.eigenvalues(J, params, geom, R)
    assert roots[0].real >= roots[1].real >= roots[2].real
    for z in roots:
        assert abs(((z + c.b2) * z + c.b1) * z + c.b0) <= 1e-9 * max(1.0, abs(c.b0))
    assert abs(sum(roots) + c.b2) <= 1e-9 * max(1.0, abs(c.b2))
    # the lower symmetric functions are only as sharp as the root separation
    # allows: a double root (p1 == p2, say) caps every solver at ~sqrt(eps)
    gaps = [abs(roots[i] - roots[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    scale = max(1.0, max(abs(z) for z in roots))
    tol = 1e-9 if min(gaps) > 1e-6 * scale else 1e-6
    pair = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2]
    assert abs(pair - c.b1) <= tol * max(1.0, abs(c.b1))
    prod = roots[0] * roots[1] * roots[2]
    assert abs(prod + c.b0) <= tol * max(1.0, abs(c.b0))


def test_solve_cubic_recovers_known_roots():
    # (z + 2.5)(z^2 + 2z + 10): one real root and a conjugate pair
    c = linear.CubicCoefficients(b2=4.5, b1=15.0, b0=25.0)
    roots = linear.solve_cubic(c)
    expected = (-1.0 + 3.0j, -1.0 - 3.0j, -2.5)
    for got, want in zip(roots, expected):
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_onset_values_zero_the_right_coefficients():
    params = FluidParams(1.0, 0.5, 2000.0)
    geom = BoxGeometry(2.0, 2.0)
    J = ModeIndex(1, 0, 1)
    cs = linear.cubic_coefficients(J, params, geom, linear.R_steady(J, params, geom))
    assert abs(cs.b0) <= 1e-12 * max(abs(cs.b1), abs(cs.b2))
    # a purely imaginary pair exists exactly when b2 * b1 = b0 with b1 > 0
    co = linear.cubic_coefficients(
        J, params, geom, linear.R_oscillatory(J, params, geom)
    )
    assert co.b1 > 0.0
    assert abs(co.b2 * co.b1 - co.b0) <= 1e-12 * abs(co.b0)


@pytest.mark.parametrize(
    "params,geom",
    [
        (FluidParams(1.0, 2.0, 50.0), BoxGeometry(2.5, 1.7)),
        (FluidParams(1.0, 0.5, 2000.0), BoxGeometry(2.0, 2.0)),
    ],
)
def test_growth_rate_changes_sign_across_onset(params, geom):
    crit = linear.critical_rayleigh(params, geom)
    J = crit.critical_set[0]
    below = linear.eigenvalues(J, params, geom, 0.99 * crit.R_first)
    above = linear.eigenvalues(J, params, geom, 1.01 * crit.R_first)
    assert below[0].real < 0.0 < above[0].real
    at = linear.eigenvalues(J, params, geom, crit.R_first)
    assert abs(at[0].real) <= 1e-8 * max(1.0, abs(at[0]))
    assert linear.growth_rate_slope(params, geom, J, crit.R_first) > 0.0


def test_critical_result_shape_real_and_complex():
    real = linear.critical_rayleigh(FluidParams(1.0, 2.0, 50.0), BoxGeometry(2.5, 1.7))
    assert real.kind == "real"
    assert real.R_first == real.R_r <= real.R_c
    assert real.rho is None  # no oscillation at a steady onset

    osc = linear.critical_rayleigh(FluidParams(1.0, 0.5, 200.0), BoxGeometry(2.0, 2.0))
    assert osc.kind == "complex"
    assert osc.R_first == osc.R_c < osc.R_r
    assert osc.rho is not None and osc.rho > 0.0
    freq = linear.oscillation_frequency(
        FluidParams(1.0, 0.5, 200.0), BoxGeometry(2.0, 2.0), osc.critical_set[0]
    )
    assert abs(osc.rho - freq) <= 1e-12 * freq


def test_oscillation_frequency_rejects_damped_regime():
    with pytest.raises(NegativeFrequencySquared):
        linear.oscillation_frequency(STEADY, BoxGeometry(2.0, 2.0), ModeIndex(1, 0, 1))


def test_find_q0_separates_onset_kinds():
    geom = BoxGeometry(2.0, 2.0)
    q0 = linear.find_Q0(1.0, 0.5, geom)
    assert q0 > 0.0
    below = linear.critical_rayleigh(FluidParams(1.0, 0.5, 0.99 * q0), geom)
    above = linear.critical_rayleigh(FluidParams(1.0, 0.5, 1.01 * q0), geom)
    assert below.kind == "real"
    assert above.kind == "complex"
    for p1, p2 in ((1.0, 1.0), (1.0, 1.5), (-1.0, 0.5), (0.0, 0.5)):
        with pytest.raises(InvalidRegime):
            linear.find_Q0(p1, p2, geom)


def test_lattice_bound_does_not_change_the_answer():
    geom = BoxGeometry(8.0, 8.0)
    auto = linear.critical_rayleigh(STEADY, geom)
    fixed = linear.critical_rayleigh(STEADY, geom, bound=64)
    assert auto.R_first == fixed.R_first
    assert auto.critical_set == fixed.critical_set


def test_tie_detection_on_the_symmetric_box():
    crit = linear.critical_rayleigh(STEADY, BoxGeometry(math.sqrt(2.0), math.sqrt(2.0)))
    assert len(crit.critical_set) == 2
    assert crit.critical_set == tuple(sorted(crit.critical_set))
    assert crit.second_gap > 0.0
    # both tied indices share one wave number
    wns = {
        round(wave_numbers(J, BoxGeometry(math.sqrt(2.0), math.sqrt(2.0))).alpha_sq, 9)
        for J in crit.critical_set
    }
    assert len(wns) == 1
