"""Validation and counting rules of the parameter containers."""

import math

import pytest

from mhdconv.params import (
    PI2,
    BoxGeometry,
    FluidParams,
    ModeIndex,
    admissible_indices,
    wave_numbers,
)


def test_fluid_params_validation():
    FluidParams(0.1, 0.1, 0.0)
    for bad in ((0.0, 1.0, 1.0), (-1.0, 1.0, 1.0), (1.0, 0.0, 1.0), (1.0, 1.0, -1.0)):
        with pytest.raises(ValueError):
            FluidParams(*bad)
    with pytest.raises(ValueError):
        FluidParams(math.nan, 1.0, 1.0)
    with pytest.raises(ValueError):
        FluidParams(1.0, math.inf, 1.0)


def test_box_geometry_validation():
    BoxGeometry(0.5, 10.0)
    for bad in ((0.0, 1.0), (1.0, -2.0), (math.inf, 1.0)):
        with pytest.raises(ValueError):
            BoxGeometry(*bad)


def test_mode_index_validation_and_order():
    assert ModeIndex(1, 2, 3).as_tuple() == (1, 2, 3)
    for bad in ((0, 0, 1), (-1, 0, 1), (1, 0, 0), (1, 0, -2)):
        with pytest.raises(ValueError):
            ModeIndex(*bad)
    with pytest.raises(ValueError):
        ModeIndex(1.0, 0, 1)
    assert ModeIndex(0, 1, 1) < ModeIndex(1, 0, 1)
    assert sorted([ModeIndex(2, 0, 1), ModeIndex(0, 1, 1)])[0] == ModeIndex(0, 1, 1)


def test_wave_numbers_closed_form():
    geom = BoxGeometry(2.0, 0.5)
    wn = wave_numbers(ModeIndex(3, 1, 2), geom)
    alpha_sq = PI2 * (9.0 / 4.0 + 1.0 / 0.25)
    assert abs(wn.alpha_sq - alpha_sq) <= 1e-12 * alpha_sq
    assert abs(wn.gamma_sq - (alpha_sq + 4.0 * PI2)) <= 1e-12 * wn.gamma_sq


def test_admissible_indices_enumeration():
    for bound in (1, 2, 3):
        idx = list(admissible_indices(bound))
        assert len(idx) == ((bound + 1) ** 2 - 1) * bound
        assert len(set(idx)) == len(idx)
        assert idx == sorted(idx)
        for J in idx:
            assert 0 <= J.j1 <= bound and 0 <= J.j2 <= bound
            assert 1 <= J.j3 <= bound
            assert J.j1 + J.j2 > 0
    with pytest.raises(ValueError):
        list(admissible_indices(0))
