import math

import pytest
from hypothesis import given, strategies as st

from rfid_codesign.em import EMSample, SurrogateCalibration, SurrogateProvider
from rfid_codesign.errors import InvalidInputError
from rfid_codesign.fitness import (Normalization, Weights, check_monotonic, combine,
                                   dynamic_range_term, evaluate, gain_term, sensitivity,
                                   sensitivity_term)
from rfid_codesign.geometry import liquid_capacity
from rfid_codesign.ic import ICProfile

from conftest import FREQ, G0_FIT, GAIN_OPT, SENS_OPT, reference_provider

P = ICProfile()


class _DipProvider:
    """Susceptance that drops mid-fill and recovers: not monotone."""

    def query(self, v, fill, frequency=FREQ):
        return EMSample(P.conductance, -0.015 + 0.002 * (fill - 0.5) ** 2, 0.0)


def test_monotonic_checks():
    lin = SurrogateProvider(SurrogateCalibration(-0.015, -0.012, 0, 0))
    assert check_monotonic(lin, SENS_OPT, FREQ)
    assert not check_monotonic(_DipProvider(), SENS_OPT, FREQ)

    class Flat:
        def query(self, v, fill, frequency=FREQ):
            return EMSample(P.conductance, -0.013, 0.0)

    assert not check_monotonic(Flat(), SENS_OPT, FREQ)
    with pytest.raises(InvalidInputError):
        check_monotonic(lin, SENS_OPT, FREQ, n_samples=2)


@pytest.mark.parametrize("s0, sf, cap, expected, tol", [
    (501, 0, 25.82, 19.4, 0.01),
    (121, 27, 31.5, 3.0, 0.03),
    (300, 300, 10.0, 0.0, 0.0),
])
def test_sensitivity(s0, sf, cap, expected, tol):
    assert sensitivity(s0, sf, cap) == pytest.approx(expected, abs=tol)


def test_sensitivity_needs_capacity():
    with pytest.raises(InvalidInputError):
        sensitivity(1, 2, 0.0)


@pytest.mark.parametrize("code, expected", [(501, 0.98), (121, 0.24), (600, 0.0)])
def test_dynamic_range_term(code, expected):
    assert dynamic_range_term(code, 511) == pytest.approx(expected, abs=0.005)


def test_gain_term_oracle():
    # oracle: the printed 0.50 fixes the scale directly
    lin = 10 ** (-0.08) + 10 ** (-1.18)
    g0 = lin / (2 * 0.50)
    assert g0 == pytest.approx(0.8978, abs=1e-4)
    assert gain_term(-0.8, -11.8, g0) == pytest.approx(0.500, abs=1e-12)
    assert gain_term(-1.0, -2.3, g0) == pytest.approx(0.770, abs=0.001)
    assert gain_term(-1.0, -2.3, g0, min_gain_dbi=-2.0) == 0.0
    assert gain_term(0.0, 0.0, 0.5) == 1.0  # capped


def test_sensitivity_term():
    assert sensitivity_term(19.4, 19.4) == 1.0
    assert sensitivity_term(3.0, 19.4) == pytest.approx(0.155, abs=0.001)
    assert sensitivity_term(3.0, 19.4, min_sensitivity=5.0) == 0.0
    assert sensitivity_term(40.0, 19.4) == 1.0


@pytest.mark.parametrize("terms, w, expected", [
    ((0.98, 0.50, 1.00), Weights(1, 1, 1), 0.827),
    ((0.24, 0.77, 0.15), Weights(0, 5, 1), 0.667),
    ((0.9, 0.0, 0.9), Weights(1, 1, 1), 0.0),
])
def test_combine(terms, w, expected):
    assert combine(*terms, w) == pytest.approx(expected, abs=0.001)


def test_weights_validation():
    with pytest.raises(InvalidInputError):
        Weights(0, 0, 0)
    with pytest.raises(InvalidInputError):
        Weights(-1, 1, 1)
    with pytest.raises(InvalidInputError):
        Normalization(0.0, 1.0)


def test_evaluate_reference_rows():
    prov = reference_provider()
    s_sens = 501 / liquid_capacity(SENS_OPT)
    norm = Normalization(G0_FIT, s_sens)
    b = evaluate(prov, SENS_OPT, weights=Weights(1, 1, 1), norm=norm, frequency=FREQ)
    assert (b.code_empty, b.code_full, b.code_swing) == (501, 0, 501)
    assert (round(b.f1, 2), round(b.f2, 2), round(b.f3, 2), round(b.fitness, 2)) == \
        (0.98, 0.50, 1.00, 0.83)
    assert b.realized_empty == pytest.approx(-0.8)
    assert b.gain_change == pytest.approx(-11.0)

    b = evaluate(prov, GAIN_OPT, weights=Weights(0, 5, 1), norm=norm, frequency=FREQ)
    assert (b.code_empty, b.code_swing) == (121, 94)
    assert (round(b.f1, 2), round(b.f2, 2), round(b.f3, 2)) == (0.24, 0.77, 0.15)
    assert b.fitness == pytest.approx(0.66, abs=0.01)


def test_evaluate_self_normalized():
    b = evaluate(reference_provider(), GAIN_OPT, frequency=FREQ)
    assert b.f2 == pytest.approx(1.0) and b.f3 == pytest.approx(1.0)


def test_saturated_empty_code_gates():
    # empty susceptance beyond the top of the bank: raw code above s_max
    cal = SurrogateCalibration(ba_empty=-2 * math.pi * FREQ * 3.3e-12,
                               ba_full=-2 * math.pi * FREQ * 2.2e-12, grad_empty=0, grad_full=0,
                               frequency=FREQ)
    b = evaluate(SurrogateProvider(cal), SENS_OPT, frequency=FREQ)
    assert b.metrics.saturated_empty and b.code_empty == 511
    assert b.f1 == 0.0 and b.fitness == 0.0


def test_infeasible_scores_zero():
    b = evaluate(_DipProvider(), SENS_OPT, frequency=FREQ)
    assert not b.feasible
    assert b.fitness == 0.0


terms = st.one_of(st.just(0.0), st.floats(1e-6, 1.0))
weights = st.tuples(st.floats(0, 10), st.floats(0, 10), st.floats(0, 10)).filter(
    lambda w: sum(w) > 1e-3)


@given(terms, terms, terms, weights)
def test_gate_semantics(f1, f2, f3, w):
    F = combine(f1, f2, f3, Weights(*w))
    assert (F == 0) == (f1 == 0 or f2 == 0 or f3 == 0)
    assert 0 <= F <= 1


@given(st.floats(1e-3, 1), st.floats(1e-3, 1), st.floats(1e-3, 1), weights)
def test_zero_weight_independence(f1a, f2, f3, w):
    w = Weights(0.0, w[1] + 0.1, w[2])
    assert combine(f1a, f2, f3, w) == pytest.approx(combine(0.5, f2, f3, w), abs=1e-15)
