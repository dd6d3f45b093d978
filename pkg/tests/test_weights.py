import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iwcelab.distributions import GEV
from iwcelab.numerics import quad
from iwcelab.weights import (
    ConstantOne, ExponentialWeight, GEVPolynomialWeight, PolynomialWeight, psi_closed,
    validate_nonnegative,
)

FAMILIES = [ConstantOne(), PolynomialWeight(1.0, 1.0), PolynomialWeight(0.5, 0.0, 2.0),
            ExponentialWeight(0.3), ExponentialWeight(-0.5)]


def test_validate_nonnegative():
    assert validate_nonnegative(PolynomialWeight(1.0, -2.0, 1.0), 0.0, 3.0).ok
    v = validate_nonnegative(PolynomialWeight(0.0, -1.0), 0.0, 1.0)
    assert not v.ok and 0.0 < v.witness <= 1.0
    assert validate_nonnegative(ExponentialWeight(-0.5), 0.0, math.inf).ok
    with pytest.raises(ValueError):
        validate_nonnegative(ConstantOne(), 1.0, 1.0)


def test_psi_closed_examples():
    assert psi_closed(PolynomialWeight(1.0, 3.0), 1.0) == pytest.approx(2.5)
    assert psi_closed(ExponentialWeight(0.5), 1.0) == pytest.approx((math.exp(0.5) - 1) / 0.5)
    assert psi_closed(PolynomialWeight(0.0, 2.0), 2.0) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        psi_closed(ConstantOne(), -1.0)


def test_zero_alpha_is_identity():
    x = np.linspace(0.0, 5.0, 11)
    assert np.array_equal(ExponentialWeight(0.0).psi(x), x)
    assert np.array_equal(ExponentialWeight(0.0).phi(x), np.ones_like(x))


@pytest.mark.parametrize("wf", FAMILIES, ids=lambda w: w.spec())
def test_dphi_matches_difference(wf):
    x = np.array([0.3, 1.0, 2.7])
    h = 1e-6
    fd = (wf.phi(x + h) - wf.phi(x - h)) / (2 * h)
    assert np.allclose(fd, wf.dphi(x), atol=1e-7)


@pytest.mark.parametrize("wf", FAMILIES, ids=lambda w: w.spec())
@settings(max_examples=20, deadline=None)
@given(st.floats(0.0, 4.0), st.floats(0.01, 4.0))
def test_psi_difference_is_phi_integral(wf, a, w):
    ref = quad(wf.phi, a, a + w).value
    assert float(wf.psi(a + w) - wf.psi(a)) == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_scaled_weight():
    wf = PolynomialWeight(1.0, 1.0).scaled(3.0)
    assert float(wf.phi(2.0)) == 9.0
    assert float(wf.psi(2.0)) == 12.0
    with pytest.raises(ValueError):
        ConstantOne().scaled(-1.0)


def test_gev_polynomial_weight():
    # xi = 2 keeps y(x) integrable at the support edge
    g = GEV(1.0, 1.0, 2.0)
    wf = GEVPolynomialWeight([1.0, 2.0], g)
    assert float(wf.phi(1.0)) == pytest.approx(3.0)
    assert float(wf.phi(g.support_lower - 1.0)) == 0.0
    ref = quad(wf.phi, max(0.0, g.support_lower), 3.0).value
    assert float(wf.psi(3.0)) == pytest.approx(ref, rel=1e-10)
    with pytest.raises(Exception):
        GEVPolynomialWeight([1.0, 2.0], GEV(2.0, 1.0, 0.5)).psi(3.0)
    h = 1e-6
    assert float(wf.dphi(3.0)) == pytest.approx(
        float(wf.phi(3.0 + h) - wf.phi(3.0 - h)) / (2 * h), abs=1e-7)
