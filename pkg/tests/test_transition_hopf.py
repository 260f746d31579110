"""Complex-onset reduction: transition number, guards, strong-field sweep."""

import math

import pytest

from mhdconv import linear, transition_hopf
from mhdconv.errors import InvalidRegime, UnsupportedCriticalSet
from mhdconv.params import BoxGeometry, FluidParams, ModeIndex, wave_numbers

CHANNEL = BoxGeometry(10.0, 0.1)
PARAMS = FluidParams(1.0, 0.5, 1000.0)


def test_hopf_coefficient_on_the_channel():
    report = transition_hopf.hopf_coefficient(PARAMS, CHANNEL)
    assert report.b == pytest.approx(-1.7737788427718656e19, rel=1e-9)
    assert report.transition_type == "TypeI"
    assert report.radius_coefficient == pytest.approx(
        math.sqrt(1.0 / abs(report.b)), rel=1e-12
    )
    assert report.lambda_prime > 0.0
    assert report.rho == pytest.approx(
        linear.oscillation_frequency(PARAMS, CHANNEL, report.Jc), rel=1e-12
    )


def test_hopf_coefficient_guards():
    with pytest.raises(InvalidRegime):
        transition_hopf.hopf_coefficient(FluidParams(1.0, 1.5, 1000.0), CHANNEL)
    with pytest.raises(InvalidRegime):
        # Q below the switch value: the onset is steady
        transition_hopf.hopf_coefficient(FluidParams(1.0, 0.5, 0.0), CHANNEL)
    with pytest.raises(UnsupportedCriticalSet):
        # square box at this Q: two rolls tie
        transition_hopf.hopf_coefficient(
            FluidParams(1.0, 0.5, 200.0), BoxGeometry(2.0, 2.0)
        )
    with pytest.raises(UnsupportedCriticalSet):
        # same box deeper in Q: the single critical index is a rectangle
        transition_hopf.hopf_coefficient(
            FluidParams(1.0, 0.5, 1000.0), BoxGeometry(2.0, 2.0)
        )


def test_ingredient_guards():
    J = ModeIndex(1, 0, 1)
    with pytest.raises(InvalidRegime):
        transition_hopf.hopf_ingredients(
            FluidParams(1.0, 1.5, 1000.0), CHANNEL, J, 5000.0, 3.0
        )
    with pytest.raises(InvalidRegime):
        transition_hopf.hopf_ingredients(PARAMS, CHANNEL, J, 5000.0, -1.0)
    Rc = linear.R_oscillatory(J, PARAMS, CHANNEL)
    rho = linear.oscillation_frequency(PARAMS, CHANNEL, J)
    with pytest.raises(UnsupportedCriticalSet):
        transition_hopf.transition_number(PARAMS, CHANNEL, ModeIndex(1, 1, 1), Rc, rho)


def test_pairing_helpers_are_conjugate_symmetric():
    geom = BoxGeometry(2.0, 1.0)
    wn = wave_numbers(ModeIndex(1, 0, 1), geom)
    beta = 0.3 + 1.2j
    R = 4000.0
    om_p = transition_hopf.omega_of(beta, PARAMS, wn.gamma_sq)
    om_m = transition_hopf.omega_of(beta.conjugate(), PARAMS, wn.gamma_sq)
    assert om_m == pytest.approx(om_p.conjugate(), rel=1e-14)
    K_p = transition_hopf.K_of(beta, PARAMS, geom, wn.alpha_sq, wn.gamma_sq, R)
    K_m = transition_hopf.K_of(
        beta.conjugate(), PARAMS, geom, wn.alpha_sq, wn.gamma_sq, R
    )
    assert K_m == pytest.approx(K_p.conjugate(), rel=1e-14)
    L_p = transition_hopf.L_of(beta, PARAMS, geom, wn.alpha_sq, wn.gamma_sq, R)
    L_m = transition_hopf.L_of(
        beta.conjugate(), PARAMS, geom, wn.alpha_sq, wn.gamma_sq, R
    )
    assert L_m == pytest.approx(L_p.conjugate(), rel=1e-14)


@pytest.mark.parametrize(
    "p1,p2,Q,L1,L2,Jc",
    [
        (1.0, 0.5, 1000.0, 2.0, 1.0, (1, 0, 1)),
        (0.7, 0.3, 2000.0, 3.0, 0.8, (2, 0, 1)),
        (1.4, 0.6, 5000.0, 1.3, 2.1, (0, 1, 1)),
    ],
)
def test_transition_number_sign_matches_the_quadrature_assembly(p1, p2, Q, L1, L2, Jc):
    params = FluidParams(p1, p2, Q)
    geom = BoxGeometry(L1, L2)
    J = ModeIndex(*Jc)
    Rc = linear.R_oscillatory(J, params, geom)
    rho = linear.oscillation_frequency(params, geom, J)
    closed = transition_hopf.transition_number(params, geom, J, Rc, rho)
    assembled = transition_hopf.oracle_first_coefficient(params, geom, J, Rc, rho)
    assert math.copysign(1.0, closed) == math.copysign(1.0, assembled)


def test_asymptotic_check_guards():
    with pytest.raises(InvalidRegime):
        transition_hopf.asymptotic_check(
            FluidParams(1.0, 2.0, 0.0), CHANNEL, [1000.0]
        )
    with pytest.raises(InvalidRegime):
        # the sweep dips below the switch value
        transition_hopf.asymptotic_check(
            FluidParams(1.0, 0.5, 0.0), CHANNEL, [1.0, 1000.0]
        )
