import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iwcelab.distributions import (
    GEV, Empirical, Exponential, Uniform, UnsupportedOperation, gev_y, quantile_bisection,
    read_samples, truncated_sampler,
)
from iwcelab.numerics import quad

DISTS = [Exponential(1.0), Exponential(2.5), Uniform(0.0, 1.0), Uniform(1.0, 3.0),
         GEV(2.0, 1.0, 0.5), GEV(3.0, 2.0, 1.0)]


@pytest.mark.parametrize("d", DISTS, ids=lambda d: d.spec())
def test_cdf_sf_complement(d):
    x = d.quantile(np.linspace(0.01, 0.99, 50))
    assert np.allclose(d.cdf(x) + d.sf(x), 1.0, atol=1e-15)


@pytest.mark.parametrize("d", DISTS, ids=lambda d: d.spec())
def test_quantile_inverts_cdf(d):
    p = np.linspace(0.02, 0.98, 40)
    x = d.quantile(p)
    assert np.allclose(d.cdf(x), p, atol=1e-12)
    assert np.allclose(d.quantile(d.cdf(x)), x, rtol=1e-10)


@pytest.mark.parametrize("d", DISTS, ids=lambda d: d.spec())
def test_pdf_integrates_to_one(d):
    lo, hi = d.support_lower, d.support_upper
    res = quad(d.pdf, lo, hi, points=[p for p in d.kinks() if lo < p < hi])
    assert res.value == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("d", DISTS, ids=lambda d: d.spec())
def test_pdf_matches_cdf_difference(d):
    x = d.quantile(np.array([0.2, 0.5, 0.8]))
    h = 1e-5
    fd = (d.cdf(x + h) - d.cdf(x - h)) / (2 * h)
    assert np.allclose(fd, d.pdf(x), atol=1e-6)


def test_exponential_parametrizations():
    assert Exponential.from_scale(2.0).rate == 0.5
    assert Exponential(4.0).scale == 0.25
    with pytest.raises(ValueError):
        Exponential(0.0)
    with pytest.raises(ValueError):
        Uniform(1.0, 1.0)


def test_gev_y():
    g = GEV(2.0, 1.0, 0.5)
    assert gev_y(g, 2.0) == 1.0
    assert gev_y(g, 3.0) == pytest.approx(4.0 / 9.0, abs=1e-15)
    with pytest.raises(ValueError):
        gev_y(g, g.support_lower - 0.1)


def test_gev_cdf_is_exp_minus_y():
    g = GEV(2.0, 1.0, 0.5)
    x = np.linspace(0.5, 8.0, 20)
    assert np.allclose(g.cdf(x), np.exp(-g.y(x)), atol=1e-15)


@pytest.mark.parametrize("d,p", [(Exponential(1.0), 0.5), (Uniform(0.0, 1.0), 0.3),
                                 (GEV(2.0, 1.0, 0.5), 0.7)], ids=["exp", "unif", "gev"])
def test_quantile_bisection_matches_closed_form(d, p):
    assert quantile_bisection(d, p) == pytest.approx(float(d.quantile(p)), abs=1e-10)


def test_quantile_bisection_empirical_median():
    q = quantile_bisection(Empirical([1.0, 2.0, 3.0, 4.0]), 0.5)
    assert 2.0 - 1e-12 <= q <= 3.0 + 1e-12
    with pytest.raises(ValueError):
        quantile_bisection(Exponential(1.0), 1.0)


def test_empirical_cdf_and_density():
    e = Empirical([3.0, 1.0, 2.0, 2.0])
    assert e.cdf(2.0) == 0.75
    assert e.cdf(0.5) == 0.0
    xs, cum = e.step_values()
    assert list(xs) == [1.0, 2.0, 3.0] and list(cum) == [0.25, 0.75, 1.0]
    with pytest.raises(UnsupportedOperation):
        e.pdf(1.0)
    with pytest.raises(ValueError):
        Empirical([1.0])
    with pytest.raises(ValueError):
        Empirical([1.0, -2.0])


def test_truncated_sampler_mean():
    # X ~ U(0, 1) given 0.2 <= X <= 0.7 has mean 0.45 and sd 0.5/sqrt(12)
    n = 20_000
    s = truncated_sampler(Uniform(0.0, 1.0), 0.2, 0.7, np.random.default_rng(3), n)
    assert np.all((s >= 0.2) & (s <= 0.7))
    se = 0.5 / math.sqrt(12) / math.sqrt(n)
    assert abs(s.mean() - 0.45) < 4 * se


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 3.0), st.floats(0.05, 4.0), st.integers(0, 2 ** 32 - 1))
def test_truncated_sampler_in_window(t1, w, seed):
    s = truncated_sampler(Exponential(1.0), t1, t1 + w, np.random.default_rng(seed), 500)
    assert np.all((s >= t1) & (s <= t1 + w))


def test_truncated_sampler_empty_window():
    with pytest.raises(ValueError):
        truncated_sampler(Uniform(0.0, 1.0), 2.0, 3.0, np.random.default_rng(0), 10)


def test_read_samples(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("1.0\n\n2.5\n0\n")
    assert list(read_samples(p)) == [1.0, 2.5, 0.0]
    p.write_text("1.0\n2.0\nabc\n")
    with pytest.raises(ValueError, match=":3:"):
        read_samples(p)
    p.write_text("1.0\n2.0\n3.0\n-4\n")
    with pytest.raises(ValueError, match=":4:"):
        read_samples(p)
    p.write_text("1.0\n")
    with pytest.raises(ValueError):
        read_samples(p)
