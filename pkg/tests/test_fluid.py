import pytest
from hypothesis import given, strategies as st

from rfid_codesign.errors import InvalidInputError, OutOfRangeError
from rfid_codesign.fluid import fill_from_mass, mass_from_fill
from rfid_codesign.geometry import ParameterVector, derive_geometry

SENS = derive_geometry(ParameterVector(0, 10.5, 2))
GAIN = derive_geometry(ParameterVector(6, 5, 1.5))


def test_empty_and_full():
    s = fill_from_mass(0.0, SENS)
    assert (s.fill_fraction, s.front_position, s.overflow) == (0.0, 0.0, False)
    s = fill_from_mass(SENS.capacity_mass, SENS)
    assert (s.fill_fraction, s.overflow) == (1.0, False)


def test_half_fill_front():
    s = fill_from_mass(13.0, SENS)
    assert s.fill_fraction == pytest.approx(0.5)
    assert s.front_position == pytest.approx(0.5 * (4 * 3 + 3 * (1 / 3)))


def test_overflow_saturates():
    s = fill_from_mass(40.0, SENS)
    assert s.fill_fraction == 1.0 and s.overflow
    assert s.front_position == pytest.approx(SENS.path_length)


@pytest.mark.parametrize("fill, mass", [(1.0, 31.5), (0.0, 0.0), (0.75, 23.625)])
def test_mass_from_fill(fill, mass):
    assert mass_from_fill(fill, GAIN) == pytest.approx(mass)


def test_errors():
    with pytest.raises(InvalidInputError):
        fill_from_mass(-1.0, SENS)
    with pytest.raises(OutOfRangeError):
        mass_from_fill(1.01, SENS)


@given(st.floats(0.0, 1.0))
def test_round_trip(u):
    mass = u * GAIN.capacity_mass
    back = mass_from_fill(fill_from_mass(mass, GAIN).fill_fraction, GAIN)
    assert back == pytest.approx(mass, rel=1e-14, abs=1e-14)


@given(st.floats(0.0, 100.0), st.floats(0.0, 10.0))
def test_fill_monotone(m, dm):
    assert fill_from_mass(m + dm, SENS).fill_fraction >= fill_from_mass(m, SENS).fill_fraction
