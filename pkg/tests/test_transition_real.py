"""Real-onset classification: octant table, thresholds, full assembly."""

import math

import pytest

from mhdconv import amplitude, linear, transition_real
from mhdconv.errors import (
    NonpositivePairing,
    UnsupportedCriticalSet,
    ZeroCoefficient,
)
from mhdconv.params import PI2, BoxGeometry, FluidParams, ModeIndex, wave_numbers

HEX_GEOM = BoxGeometry(1.5, 1.5 * math.sqrt(3.0))


def test_region_lookup_covers_all_octants():
    for label, (a, b) in transition_real.REGION_SAMPLES.items():
        region = transition_real.region_from_coefficients(a, b)
        assert region.label == label
    table = transition_real.region_table()
    assert len(table) == 8
    assert {row["label"] for row in table} == set(transition_real.REGION_SAMPLES)
    types = {row["label"]: row["transition_type"] for row in table}
    assert types["I1"] == types["I2"] == "TypeI"
    assert types["III1"] == "TypeIII"
    assert all(types[f"II{i}"] == "TypeII" for i in range(1, 6))


def test_region_lookup_rejects_degenerate_coefficients():
    for a, b in ((0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (1.0, 4.0)):
        with pytest.raises(ZeroCoefficient):
            transition_real.region_from_coefficients(a, b)


def test_two_mode_inventory_agrees_with_the_dynamics():
    a, b = -2.0, -1.0
    inventory = {s.pattern: s for s in transition_real.two_mode_inventory(a, b)}
    assert set(inventory) == {"rectangle", "roll", "hexagonal"}
    points = amplitude.steady_states(a, b, 1.0)
    by_family = {}
    for p in points:
        by_family.setdefault(p.family, []).append(p)
    pairs = (
        ("rectangle", "x-axis"),
        ("roll", "y-axis"),
        ("hexagonal", "diagonal"),
    )
    for pattern, family in pairs:
        summary = inventory[pattern]
        pts = by_family[family]
        assert summary.count == len(pts)
        assert summary.exists_supercritical
        amp = max(abs(c) for c in pts[0].location) if family != "diagonal" else abs(
            pts[0].location[1]
        )
        assert abs(summary.amplitude_unit - amp) <= 1e-12 * amp
        for got, want in zip(sorted(summary.eigenvalues_unit), sorted(pts[0].eigenvalues)):
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))
        assert summary.stable == pts[0].stable


def test_roll_coefficient_threshold_in_p2():
    params = FluidParams(1.0, 1.0, 10.0)
    J = ModeIndex(0, 2, 1)
    sigma = transition_real.sigma_roll(params, HEX_GEOM, J)
    p_mid = math.sqrt(sigma)
    b_above = transition_real.coefficients_ab(
        FluidParams(1.0, 1.01 * p_mid, 10.0), HEX_GEOM, J
    ).b
    b_below = transition_real.coefficients_ab(
        FluidParams(1.0, 0.99 * p_mid, 10.0), HEX_GEOM, J
    ).b
    assert b_above < 0.0 < b_below


def test_simple_classification_flips_with_the_wave_number():
    # alpha < pi with enough field: rolls branch subcritically
    sub = transition_real.classify_simple(
        FluidParams(1.0, 1.0, 10.0), BoxGeometry(2.0, 2.0), ModeIndex(1, 0, 1)
    )
    assert sub.kind == "simple-roll"
    assert sub.coefficients.b > 0.0
    assert sub.transition_type == "TypeII"
    assert not any(s.stable for s in sub.states)
    # alpha = pi kills the destabilising term: continuous transition
    sup = transition_real.classify_simple(
        FluidParams(1.0, 1.0, 10.0), BoxGeometry(1.0, 1.0), ModeIndex(1, 0, 1)
    )
    assert sup.coefficients.b < 0.0
    assert sup.transition_type == "TypeI"
    assert sup.pitchfork_constant is not None and sup.pitchfork_constant > 0.0
    assert any(s.stable for s in sup.states)


def test_hexagonal_classification_reports_the_sector_only_when_mixed():
    mixed = transition_real.classify_hexagonal(
        FluidParams(1.0, 0.4, 10.0), HEX_GEOM, ModeIndex(1, 1, 1)
    )
    assert mixed.kind == "hexagonal-pair"
    assert mixed.region.label == "III1"
    assert mixed.sector_half_angle == pytest.approx(math.atan(0.5), abs=1e-15)
    smooth = transition_real.classify_hexagonal(
        FluidParams(1.0, 0.6, 10.0), HEX_GEOM, ModeIndex(1, 1, 1)
    )
    assert smooth.region.label == "I2"
    assert smooth.sector_half_angle is None


def test_hexagonal_classification_guards():
    with pytest.raises(UnsupportedCriticalSet):
        transition_real.classify_hexagonal(
            FluidParams(1.0, 0.5, 10.0), HEX_GEOM, ModeIndex(0, 2, 1)
        )
    with pytest.raises(UnsupportedCriticalSet):
        transition_real.classify_hexagonal(
            FluidParams(1.0, 0.5, 10.0), HEX_GEOM, ModeIndex(1, 1, 1), ModeIndex(0, 4, 1)
        )


def test_kappa_parts_need_a_planform():
    params = FluidParams(1.0, 8.0, 10.0)
    J = ModeIndex(1, 1, 1)
    R_r = linear.R_steady(J, params, HEX_GEOM)
    with pytest.raises(ValueError):
        transition_real.kappa_parts(0, 0, params, HEX_GEOM, J, R_r)
    assert transition_real.kappa_parts(2, 0, params, HEX_GEOM, J, R_r).kappa < 0.0


def test_detect_hexagonal_geometry():
    assert transition_real.detect_hexagonal_geometry(HEX_GEOM) == (1, 1)
    assert transition_real.detect_hexagonal_geometry(
        BoxGeometry(3.0, math.sqrt(3.0))
    ) == (3, 1)
    assert transition_real.detect_hexagonal_geometry(BoxGeometry(2.0, 2.0)) is None
    nudged = BoxGeometry(1.5, 1.5 * math.sqrt(3.0) * (1.0 + 1e-8))
    assert transition_real.detect_hexagonal_geometry(nudged) == (1, 1)
    off = BoxGeometry(1.5, 1.5 * math.sqrt(3.0) * 1.001)
    assert transition_real.detect_hexagonal_geometry(off) is None


def test_field_and_p2_thresholds_on_the_square_box():
    geom = BoxGeometry(2.0, 2.0)
    qs = transition_real.q_star(geom)
    assert qs == pytest.approx(12.337005399167538, rel=1e-9)
    below = linear.critical_rayleigh(FluidParams(1.0, 2.0, 0.99 * qs), geom)
    above = linear.critical_rayleigh(FluidParams(1.0, 2.0, 1.01 * qs), geom)
    assert wave_numbers(below.critical_set[0], geom).alpha_sq < PI2
    assert wave_numbers(above.critical_set[0], geom).alpha_sq >= PI2
    assert transition_real.p_star(geom) == pytest.approx(
        2.0 / math.sqrt(3.0), rel=1e-12
    )


def test_projection_scale_rejects_a_nonpositive_pairing():
    with pytest.raises(NonpositivePairing):
        transition_real.projection_scale(
            FluidParams(1.0, 0.01, 1e6), BoxGeometry(2.0, 2.0), ModeIndex(1, 0, 1)
        )


def test_full_assembly_is_proportional_to_the_reduced_coefficients():
    params = FluidParams(1.3, 0.9, 120.0)
    geom = BoxGeometry(2.4, 1.3)
    J = ModeIndex(1, 0, 1)
    scale = transition_real.projection_scale(params, geom, J)
    reduced = transition_real.coefficients_ab(params, geom, J)
    full_b = transition_real.cm_coefficient_b_full(params, geom, J)
    assert full_b == pytest.approx(2.0 * scale * reduced.b, rel=1e-12)

    Jr = ModeIndex(1, 1, 1)
    scale_r = transition_real.projection_scale(params, geom, Jr)
    reduced_r = transition_real.coefficients_ab(params, geom, Jr)
    full_a = transition_real.cm_coefficient_a_full(params, geom, Jr)
    assert full_a == pytest.approx(scale_r * reduced_r.a, rel=1e-12)


def test_full_assembly_guards_on_the_index_shape():
    params = FluidParams(1.0, 1.0, 10.0)
    geom = BoxGeometry(2.0, 2.0)
    with pytest.raises(UnsupportedCriticalSet):
        transition_real.cm_coefficient_b_full(params, geom, ModeIndex(1, 1, 1))
    with pytest.raises(UnsupportedCriticalSet):
        transition_real.cm_coefficient_a_full(params, geom, ModeIndex(1, 0, 1))
