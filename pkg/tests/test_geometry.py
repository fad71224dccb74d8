import math

import pytest
from hypothesis import given, strategies as st

from rfid_codesign.errors import InvalidInputError
from rfid_codesign.geometry import (FixedGeometry, FluidProperties, ParameterSpace,
                                    ParameterVector, derive_geometry, grid_spacing, in_bounds,
                                    liquid_capacity, make_grid)

SPACE = ParameterSpace()


@pytest.mark.parametrize("v, c3, c4", [
    (ParameterVector(0, 10.5, 2), 3.0, 1 / 3),
    (ParameterVector(6, 5, 1.5), 9.0, 0.0),
    (ParameterVector(8, 15, 1), 11.0, (15 - 1 - 0.5 - 4) / 3),
])
def test_derived_dimensions(v, c3, c4):
    g = derive_geometry(v)
    assert g.c3 == c3
    assert g.c4 == pytest.approx(c4, abs=1e-12)
    assert g.path_length == pytest.approx(4 * c3 + 3 * c4)
    assert g.cross_section == v.c2 * 1.0
    assert g.is_straight == (c4 == 0)


def test_table_rounds_c4():
    g = derive_geometry(ParameterVector(0, 10.5, 2))
    assert round(g.c4, 1) == 0.3


@pytest.mark.parametrize("v, expected", [
    (ParameterVector(0, 10.5, 2), 26.0),
    (ParameterVector(6, 5, 1.5), 31.5),
])
def test_liquid_capacity(v, expected):
    assert liquid_capacity(v) == pytest.approx(expected, abs=1e-12)


def test_capacity_vanishes_with_width():
    assert liquid_capacity(ParameterVector(0, 10.5, 0.0)) == 0.0


def test_density_scales_capacity():
    v = ParameterVector(6, 5, 1.5)
    assert liquid_capacity(v, fluid=FluidProperties(1.2)) == pytest.approx(1.2 * 31.5)


def test_non_finite_rejected():
    with pytest.raises(InvalidInputError):
        derive_geometry(ParameterVector(math.nan, 10, 2))
    with pytest.raises(InvalidInputError):
        FixedGeometry(a3=0)
    with pytest.raises(InvalidInputError):
        ParameterSpace(a1=(3, 1))


@pytest.mark.parametrize("v, inside", [
    (ParameterVector(0, 10.5, 2), True),
    (ParameterVector(8.01, 10, 2), False),
    (ParameterVector(6, 5, 1.5), True),
    (ParameterVector(8, 15, 2.5), True),
    (ParameterVector(4, 4.99, 2), False),
])
def test_in_bounds(v, inside):
    assert in_bounds(v, SPACE) is inside


def test_grid_corners():
    pts = make_grid(SPACE, (2, 2, 2))
    assert len(pts) == 8
    assert {p.as_tuple() for p in pts} == {
        (a1, a2, c2) for a1 in (0, 8) for a2 in (5, 15) for c2 in (1, 2.5)}


def test_default_grid():
    pts = make_grid(SPACE, (5, 5, 4))
    assert len(pts) == 100
    assert sorted({p.a1 for p in pts}) == [0, 2, 4, 6, 8]
    assert grid_spacing(SPACE, (5, 5, 4)) == (2.0, 2.5, 0.5)


def test_single_point_grid_is_midpoint():
    assert make_grid(SPACE, (1, 1, 1)) == [ParameterVector(4, 10, 1.75)]


def test_zero_count_rejected():
    with pytest.raises(InvalidInputError):
        make_grid(SPACE, (0, 2, 2))


lengths = st.floats(0.0, 20.0, allow_nan=False)


@given(a1=lengths, a2=lengths, c2=st.floats(0.01, 5.0))
def test_capacity_never_exceeds_serpentine(a1, a2, c2):
    v = ParameterVector(a1, a2, c2)
    g = derive_geometry(v)
    assert g.c4 >= 0
    if a2 - 1 - 0.5 - 4 * c2 <= 0:
        assert g.c4 == 0.0
    assert g.capacity_mass <= 1.0 * 1.0 * c2 * g.path_length + 1e-9


@given(a1=lengths, a2=st.floats(1.6, 20.0), c2=st.floats(0.01, 5.0),
       c1=st.floats(0.1, 3.0), bump=st.floats(0.0, 2.0))
def test_capacity_monotone_in_thickness_and_crossing(a1, a2, c2, c1, bump):
    v = ParameterVector(a1, a2, c2)
    base = liquid_capacity(v, FixedGeometry(c1=c1))
    assert liquid_capacity(v, FixedGeometry(c1=c1 + bump)) >= base
    # c3 grows with a1 at fixed a2, c2
    assert liquid_capacity(v.replace(a1=a1 + bump), FixedGeometry(c1=c1)) >= base - 1e-12


@given(st.tuples(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6)))
def test_grid_points_unique_and_in_bounds(counts):
    pts = make_grid(SPACE, counts)
    assert len(pts) == len(set(pts)) == counts[0] * counts[1] * counts[2]
    assert all(in_bounds(p, SPACE) for p in pts)
