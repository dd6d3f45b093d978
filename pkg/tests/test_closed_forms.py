import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iwcelab.closed_forms import (
    closed_form_icre_exp, closed_form_iwce_gev, closed_form_iwcre_exp_expweight,
    closed_form_iwcre_exp_poly,
)
from iwcelab.distributions import GEV, Exponential
from iwcelab.entropy import icpe, iwce, iwcre
from iwcelab.numerics import QuadratureConfig
from iwcelab.weights import ExponentialWeight, GEVPolynomialWeight, PolynomialWeight

from conftest import window

TIGHT = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)


def quad_iwcre(rate, wf, t1, t2):
    d = Exponential(rate)
    return iwcre(d, wf, window(d, t1, t2), TIGHT).value


def test_poly_unit_exponential_full_line():
    assert closed_form_iwcre_exp_poly(1.0, [1.0], 0.0, math.inf) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("coeffs,t1,t2", [([1.0, 1.0], 0.5, 1.5), ([0.5, 0.0, 2.0], 0.2, 3.0),
                                          ([2.0, 1.0, 0.5, 0.1], 1.0, 2.0)])
def test_poly_scale_one(coeffs, t1, t2):
    cf = closed_form_iwcre_exp_poly(1.0, coeffs, t1, t2)
    assert cf == pytest.approx(closed_form_iwcre_exp_poly(1.0, coeffs, t1, t2, as_printed=True),
                               abs=1e-15)
    assert cf == pytest.approx(quad_iwcre(1.0, PolynomialWeight(coeffs), t1, t2), abs=1e-8)


def test_poly_scale_two_corrected_vs_printed():
    coeffs, t1, t2 = [1.0, 1.0], 0.5, 3.0
    ref = quad_iwcre(0.5, PolynomialWeight(coeffs), t1, t2)
    assert closed_form_iwcre_exp_poly(2.0, coeffs, t1, t2) == pytest.approx(ref, abs=1e-8)
    printed = closed_form_iwcre_exp_poly(2.0, coeffs, t1, t2, as_printed=True)
    assert abs(printed - ref) > 1e-3


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 4.0), st.floats(0.0, 3.0), st.floats(0.05, 4.0),
       st.lists(st.floats(0.0, 2.0), min_size=1, max_size=4))
def test_poly_random(scale, t1, w, coeffs):
    if not any(c > 0 for c in coeffs):
        coeffs = [1.0] + coeffs
    cf = closed_form_iwcre_exp_poly(scale, coeffs, t1, t1 + w)
    ref = quad_iwcre(1.0 / scale, PolynomialWeight(coeffs), t1, t1 + w)
    assert abs(cf - ref) <= 1e-8 * max(1.0, abs(ref))


def test_poly_domain_errors():
    with pytest.raises(ValueError):
        closed_form_iwcre_exp_poly(0.0, [1.0], 0.0, 1.0)
    with pytest.raises(ValueError):
        closed_form_iwcre_exp_poly(1.0, [0.0, -1.0], 0.0, 1.0)
    with pytest.raises(ValueError):
        closed_form_iwcre_exp_poly(1.0, [1.0], 1.0, 1.0)


def test_icre_limits():
    for rate in (0.5, 1.0, 3.0):
        assert closed_form_icre_exp(rate, 0.7, math.inf) == 1.0 / rate
        assert closed_form_icre_exp(rate, 0.7, 80.0) == pytest.approx(1.0 / rate, abs=1e-12)
    with pytest.raises(ValueError):
        closed_form_icre_exp(1.0, 1.0, 1.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(0.0, 2.0), st.floats(0.02, 3.0))
def test_icre_random(rate, t1, w):
    ref = quad_iwcre(rate, PolynomialWeight(1.0), t1, t1 + w)
    assert closed_form_icre_exp(rate, t1, t1 + w) == pytest.approx(ref, abs=1e-8)


def test_icre_decreasing_in_t1():
    t2 = 3.0
    vals = [closed_form_icre_exp(1.0, t1, t2) for t1 in np.linspace(0.0, 2.9, 60)]
    assert np.all(np.diff(vals) <= 0)


def test_expweight_anchor():
    ref = quad_iwcre(1.0, ExponentialWeight(0.5), 0.5, 1.5)
    assert closed_form_iwcre_exp_expweight(1.0, 0.5, 0.5, 1.5) == pytest.approx(ref, abs=1e-8)
    printed = closed_form_iwcre_exp_expweight(1.0, 0.5, 0.5, 1.5, as_printed=True)
    assert abs(printed - ref) > 1e-3


def test_expweight_alpha_to_zero():
    for a in (1e-5, -1e-5):
        assert closed_form_iwcre_exp_expweight(1.5, a, 0.3, 2.0) == pytest.approx(
            closed_form_icre_exp(1.5, 0.3, 2.0), abs=1e-4)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 4.0), st.floats(-1.0, 0.9), st.floats(0.0, 2.0), st.floats(0.05, 3.0))
def test_expweight_random(rate, afrac, t1, w):
    alpha = afrac * rate
    if abs(alpha) < 1e-3:
        alpha = 1e-3
    ref = quad_iwcre(rate, ExponentialWeight(alpha), t1, t1 + w)
    cf = closed_form_iwcre_exp_expweight(rate, alpha, t1, t1 + w)
    assert abs(cf - ref) <= 1e-8 * max(1.0, abs(ref))


def test_expweight_domain():
    with pytest.raises(ValueError):
        closed_form_iwcre_exp_expweight(1.0, 1.0, 0.0, 1.0)


def test_gev_constant_weight_is_icpe(gev_ref):
    iv = window(gev_ref, 1.5, 4.0)
    assert closed_form_iwce_gev(gev_ref, [1.0], 1.5, 4.0) == pytest.approx(
        icpe(gev_ref, iv).value, abs=1e-6)


def test_gev_two_routes(gev_ref):
    iv = window(gev_ref, 1.5, 4.0)
    wf = GEVPolynomialWeight([1.0, 0.5], gev_ref)
    assert closed_form_iwce_gev(gev_ref, [1.0, 0.5], 1.5, 4.0) == pytest.approx(
        iwce(gev_ref, wf, iv).value, abs=1e-6)


def test_gev_rejects_bad_windows(gev_ref):
    with pytest.raises(ValueError):
        closed_form_iwce_gev(gev_ref, [1.0], 2.0, 2.0)
    with pytest.raises(ValueError):
        closed_form_iwce_gev(GEV(3.0, 1.0, 0.5), [1.0], 0.5, 2.0)
